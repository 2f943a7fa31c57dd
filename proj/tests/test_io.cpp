#include <doctest.h>

#include <filesystem>

#include "ttc/classical.hpp"
#include "ttc/generator.hpp"
#include "ttc/io.hpp"
#include "ttc/spectral.hpp"

using namespace ttc;

namespace {

const char *kExample1Canonical = R"({
  "n": 4,
  "preferences": [
    [1, 2, 3, 4],
    [4, 1, 3, 2],
    [2, 1, 4, 3],
    [1, 4, 3, 2]
  ],
  "endowment": null,
  "label": "example1"
}
)";

} // namespace

TEST_CASE("instance JSON parses 1-based ids") {
    Instance instance = parse_instance_json(kExample1Canonical);
    CHECK(instance.size() == 4);
    CHECK(instance.label == "example1");
    CHECK(instance.endowment.is_identity());
    CHECK_FALSE(instance.seed.has_value());
    CHECK(instance.profile.ranking(1)[0] == 3);
}

TEST_CASE("canonical instance files round-trip byte for byte") {
    CHECK(serialize_instance(parse_instance_json(kExample1Canonical)) == kExample1Canonical);

    const char *with_extras = R"({
  "n": 2,
  "preferences": [
    [2, 1],
    [1, 2]
  ],
  "endowment": [2, 1],
  "label": "quote \" and unicode é",
  "seed": 18446744073709551615
}
)";
    Instance parsed = parse_instance_json(with_extras);
    CHECK(parsed.seed == std::uint64_t{18446744073709551615ULL});
    CHECK(parsed.endowment.owned_by(0) == 1);
    CHECK(serialize_instance(parsed) == with_extras);
}

TEST_CASE("property: serialize then parse is the identity on generated instances") {
    for (std::size_t n : {1, 2, 5, 9}) {
        for (const Instance &instance : generate({n, 10, 5, GeneratorModel::Popularity, 2.0})) {
            const std::string text = serialize_instance(instance);
            Instance back = parse_instance_json(text);
            CHECK(back == instance);
            CHECK(serialize_instance(back) == text);
        }
    }
}

TEST_CASE("instance JSON errors") {
    CHECK_THROWS_AS(parse_instance_json("{not json"), ParseError);
    CHECK_THROWS_AS(parse_instance_json(R"({"n": 1})"), ParseError);
    CHECK_THROWS_AS(parse_instance_json(R"({"preferences": [[1, "a"]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance_json(R"({"n": 3, "preferences": [[1,2],[2,1]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance_json(R"({"preferences": [[1,2],[2,1]], "endowment": [1,1]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance_json(R"({"preferences": [[1,2],[2,1]], "endowment": [1]})"), ValidationError);
    try {
        parse_instance_json(R"({"preferences": [[1,2,3],[2,1,3],[3,3,1]]})");
        FAIL("expected throw");
    } catch (const ValidationError &e) {
        CHECK(e.kind() == ValidationError::Kind::NotPermutation);
        CHECK(e.agent() == AgentIndex{2});
    }
}

TEST_CASE("CSV preferences") {
    PreferenceProfile p = parse_preferences_csv("1,2,3,4\r\n4, 1, 3, 2\n2,1,4,3\n\n1,4,3,2\n");
    CHECK(p.rank_of(1, 3) == 1);
    CHECK(p.size() == 4);
    CHECK_THROWS_AS(parse_preferences_csv("1,2\n2,x\n"), ParseError);
    CHECK_THROWS_AS(parse_preferences_csv("1,2\n2,,1\n"), ParseError);
    CHECK_THROWS_AS(parse_preferences_csv("1,2\n2\n"), ValidationError);
    CHECK_THROWS_AS(parse_preferences_csv(""), ValidationError);
}

TEST_CASE("allocation files round-trip with their traces") {
    Instance instance = parse_instance_json(kExample1Canonical);
    for (const Allocation &allocation : {solve_classical(instance), solve_spectral(instance)}) {
        const std::string text = serialize_allocation(allocation);
        Allocation back = parse_allocation_json(text);
        CHECK(back == allocation);
        CHECK(serialize_allocation(back) == text);
    }
    const std::string classical = serialize_allocation(solve_classical(instance));
    CHECK(classical.find("\"method\": \"classical\"") != std::string::npos);
    CHECK(classical.find("\"2\": 3") != std::string::npos);
}

TEST_CASE("allocation JSON orders agent keys numerically past 9") {
    Instance instance = generate({12, 1, 3}).front();
    const std::string text = serialize_allocation(solve_classical(instance));
    CHECK(text.find("\"9\"") < text.find("\"10\""));
    CHECK(parse_allocation_json(text).assignment == solve_classical(instance).assignment);
}

TEST_CASE("allocation JSON errors") {
    CHECK_THROWS_AS(parse_allocation_json(R"({"method": "x", "assignment": {}})"), ParseError);
    CHECK_THROWS_AS(parse_allocation_json(R"({"method": "classical", "assignment": {"1": 1, "2": 1}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_allocation_json(R"({"method": "classical", "assignment": {"0": 1}})"), ParseError);
}

TEST_CASE("files dispatch on extension") {
    const auto dir = std::filesystem::temp_directory_path() / "ttc_io_test";
    std::filesystem::create_directories(dir);
    write_text_file(dir / "p.csv", "2,1\n1,2\n");
    Instance from_csv = read_instance_file(dir / "p.csv");
    CHECK(from_csv.label == "p");
    CHECK(from_csv.profile.rank_of(0, 1) == 1);
    write_text_file(dir / "p.json", kExample1Canonical);
    CHECK(read_instance_file(dir / "p.json").size() == 4);
    CHECK_THROWS_AS(read_instance_file(dir / "missing.json"), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("format_assignment uses 1-based arrows") {
    Allocation a;
    a.assignment = {0, 2, 1, 3};
    CHECK(format_assignment(a) == "1→1 2→3 3→2 4→4");
}
