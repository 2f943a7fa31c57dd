#include "ttc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ttc {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::vector<std::int64_t>> read_rows(const json &rows) {
    if (!rows.is_array()) throw ParseError("\"preferences\" must be an array of arrays");
    std::vector<std::vector<std::int64_t>> raw;
    raw.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json &row = rows[i];
        if (!row.is_array()) throw ParseError("agent " + std::to_string(i + 1) + ": ranking must be an array");
        auto &out = raw.emplace_back();
        out.reserve(row.size());
        for (const json &id : row) {
            if (!id.is_number_integer()) {
                throw ParseError("agent " + std::to_string(i + 1) + ": object ids must be integers");
            }
            out.push_back(id.get<std::int64_t>());
        }
    }
    return raw;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void append_row(std::string &out, std::span<const ObjectIndex> row) {
    out += '[';
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) out += ", ";
        out += std::to_string(row[k] + 1);
    }
    out += ']';
}

std::size_t parse_positive_key(const std::string &key) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc{} || ptr != key.data() + key.size() || value == 0) {
        throw ParseError("assignment key '" + key + "' is not a positive agent id");
    }
    return value;
}

std::size_t one_based(const ordered_json &value, const char *what) {
    if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
        throw ParseError(std::string(what) + " must be a positive integer");
    }
    return value.get<std::size_t>() - 1;
}

} // namespace

Instance parse_instance_json(std::string_view text) {
    json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("instance must be a JSON object");
    if (!doc.contains("preferences")) throw ParseError("instance is missing \"preferences\"");

    PreferenceProfile profile = validate_profile(read_rows(doc["preferences"]));

    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(profile.size())) {
            throw ValidationError(ValidationError::Kind::NonSquare, std::nullopt,
                                  "\"n\" does not match the number of preference rows (" +
                                      std::to_string(profile.size()) + ")");
        }
    }

    std::optional<Endowment> endowment;
    if (doc.contains("endowment") && !doc["endowment"].is_null()) {
        const json &e = doc["endowment"];
        if (!e.is_array()) throw ParseError("\"endowment\" must be null or an array");
        if (e.size() != profile.size()) {
            throw ValidationError(ValidationError::Kind::BadEndowment, std::nullopt,
                                  "endowment has " + std::to_string(e.size()) + " entries for " +
                                      std::to_string(profile.size()) + " agents");
        }
        std::vector<ObjectIndex> owned;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i].is_number_integer() || e[i].get<std::int64_t>() < 1) {
                throw ValidationError(ValidationError::Kind::BadEndowment, i,
                                      "agent " + std::to_string(i + 1) + ": endowment entry must be a positive id");
            }
            owned.push_back(e[i].get<std::size_t>() - 1);
        }
        endowment.emplace(std::move(owned));
    }

    std::string label;
    if (doc.contains("label") && !doc["label"].is_null()) {
        if (!doc["label"].is_string()) throw ParseError("\"label\" must be a string");
        label = doc["label"].get<std::string>();
    }

    std::optional<std::uint64_t> seed;
    if (doc.contains("seed") && !doc["seed"].is_null()) {
        if (!doc["seed"].is_number_unsigned()) throw ParseError("\"seed\" must be a non-negative integer");
        seed = doc["seed"].get<std::uint64_t>();
    }

    return Instance(std::move(profile), std::move(endowment), std::move(label), seed);
}

PreferenceProfile parse_preferences_csv(std::string_view text) {
    std::vector<std::vector<std::int64_t>> raw;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto &row = raw.emplace_back();
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            auto first = cell.find_first_not_of(" \t");
            auto last = cell.find_last_not_of(" \t");
            if (first == std::string::npos) {
                throw ParseError("agent " + std::to_string(raw.size()) + ": empty CSV cell");
            }
            std::string_view token(cell.data() + first, last - first + 1);
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw ParseError("agent " + std::to_string(raw.size()) + ": '" + std::string(token) +
                                 "' is not an integer");
            }
            row.push_back(value);
        }
    }
    return validate_profile(raw);
}

std::string serialize_instance(const Instance &instance) {
    const auto &profile = instance.profile;
    std::string out = "{\n  \"n\": " + std::to_string(profile.size()) + ",\n  \"preferences\": [\n";
    for (AgentIndex i = 0; i < profile.size(); ++i) {
        out += "    ";
        append_row(out, profile.ranking(i));
        out += i + 1 < profile.size() ? ",\n" : "\n";
    }
    out += "  ],\n  \"endowment\": ";
    if (instance.endowment.is_explicit()) {
        append_row(out, instance.endowment.objects());
    } else {
        out += "null";
    }
    out += ",\n  \"label\": " + json(instance.label).dump();
    if (instance.seed) out += ",\n  \"seed\": " + std::to_string(*instance.seed);
    out += "\n}\n";
    return out;
}

std::string serialize_allocation(const Allocation &allocation) {
    ordered_json doc;
    doc["method"] = to_string(allocation.method);
    ordered_json assignment = ordered_json::object();
    for (AgentIndex i = 0; i < allocation.size(); ++i) {
        assignment[std::to_string(i + 1)] = allocation.assignment[i] + 1;
    }
    doc["assignment"] = std::move(assignment);

    ordered_json trace = ordered_json::array();
    if (allocation.method == Method::Classical) {
        for (std::size_t r = 0; r < allocation.rounds.size(); ++r) {
            ordered_json cycles = ordered_json::array();
            for (const Cycle &cycle : allocation.rounds[r].cycles) {
                ordered_json ids = ordered_json::array();
                for (AgentIndex agent : cycle) ids.push_back(agent + 1);
                cycles.push_back(std::move(ids));
            }
            trace.push_back({{"round", r + 1}, {"cycles", std::move(cycles)}});
        }
    } else {
        for (const Pick &pick : allocation.picks) {
            trace.push_back({{"agent", pick.agent + 1}, {"object", pick.object + 1}});
        }
    }
    doc["trace"] = std::move(trace);
    return doc.dump(2) + "\n";
}

Allocation parse_allocation_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("method") || !doc.contains("assignment")) {
        throw ParseError("allocation needs \"method\" and \"assignment\"");
    }
    Allocation allocation;
    try {
        allocation.method = parse_method(doc["method"].get<std::string>());
    } catch (const std::exception &e) {
        throw ParseError(std::string("bad \"method\": ") + e.what());
    }

    const ordered_json &assignment = doc["assignment"];
    if (!assignment.is_object()) throw ParseError("\"assignment\" must be an object");
    allocation.assignment.assign(assignment.size(), 0);
    std::vector<bool> seen(assignment.size(), false);
    for (const auto &[key, value] : assignment.items()) {
        std::size_t agent = parse_positive_key(key) - 1;
        if (agent >= seen.size() || seen[agent]) throw ParseError("assignment key '" + key + "' out of range or repeated");
        seen[agent] = true;
        allocation.assignment[agent] = one_based(value, "assigned object");
    }
    if (!is_bijection(allocation.assignment)) {
        throw ValidationError(ValidationError::Kind::BadAllocation, std::nullopt, "assignment is not a bijection");
    }

    if (doc.contains("trace")) {
        const ordered_json &trace = doc["trace"];
        if (!trace.is_array()) throw ParseError("\"trace\" must be an array");
        for (const ordered_json &entry : trace) {
            if (allocation.method == Method::Classical) {
                TradingRound round;
                for (const ordered_json &ids : entry.at("cycles")) {
                    Cycle cycle;
                    for (const ordered_json &id : ids) cycle.push_back(one_based(id, "cycle agent"));
                    round.cycles.push_back(std::move(cycle));
                }
                allocation.rounds.push_back(std::move(round));
            } else {
                allocation.picks.push_back(
                    {one_based(entry.at("agent"), "pick agent"), one_based(entry.at("object"), "pick object")});
            }
        }
    }
    return allocation;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Instance read_instance_file(const std::filesystem::path &path) {
    std::string text = read_text_file(path);
    if (path.extension() == ".csv") {
        return Instance(parse_preferences_csv(text), std::nullopt, path.stem().string());
    }
    return parse_instance_json(text);
}

std::string format_assignment(const Allocation &allocation) {
    std::string out;
    for (AgentIndex i = 0; i < allocation.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(i + 1) + "→" + std::to_string(allocation.assignment[i] + 1);
    }
    return out;
}

} // namespace ttc
