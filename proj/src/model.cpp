#include "ttc/model.hpp"

#include <algorithm>
#include <numeric>

namespace ttc {

namespace {

std::string agent_label(AgentIndex agent) { return "agent " + std::to_string(agent + 1); }

} // namespace

ValidationError::ValidationError(Kind kind, std::optional<AgentIndex> agent, const std::string &what)
    : std::runtime_error(what), kind_(kind), agent_(agent) {}

PreferenceProfile::PreferenceProfile(std::vector<std::vector<ObjectIndex>> rankings) : n_(rankings.size()) {
    if (n_ == 0) {
        throw ValidationError(ValidationError::Kind::EmptyInput, std::nullopt, "preference profile is empty");
    }
    order_.resize(n_ * n_);
    ranks_.assign(n_ * n_, 0);
    for (AgentIndex i = 0; i < n_; ++i) {
        const auto &row = rankings[i];
        if (row.size() != n_) {
            throw ValidationError(ValidationError::Kind::NonSquare, i,
                                  agent_label(i) + ": ranking has " + std::to_string(row.size()) +
                                      " entries, expected " + std::to_string(n_));
        }
        for (std::size_t r = 0; r < n_; ++r) {
            ObjectIndex object = row[r];
            if (object >= n_) {
                throw ValidationError(ValidationError::Kind::NotPermutation, i,
                                      agent_label(i) + ": object " + std::to_string(object + 1) +
                                          " out of range 1.." + std::to_string(n_));
            }
            Rank &slot = ranks_[i * n_ + object];
            if (slot != 0) {
                throw ValidationError(ValidationError::Kind::NotPermutation, i,
                                      agent_label(i) + ": object " + std::to_string(object + 1) +
                                          " listed more than once");
            }
            slot = r + 1;
            order_[i * n_ + r] = object;
        }
    }
}

PreferenceProfile validate_profile(const std::vector<std::vector<std::int64_t>> &raw) {
    if (raw.empty()) {
        throw ValidationError(ValidationError::Kind::EmptyInput, std::nullopt, "preference profile is empty");
    }
    const auto n = static_cast<std::int64_t>(raw.size());
    std::vector<std::vector<ObjectIndex>> rankings(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != raw.size()) {
            throw ValidationError(ValidationError::Kind::NonSquare, i,
                                  agent_label(i) + ": ranking has " + std::to_string(raw[i].size()) +
                                      " entries, expected " + std::to_string(raw.size()));
        }
        rankings[i].reserve(raw[i].size());
        for (std::int64_t id : raw[i]) {
            if (id < 1 || id > n) {
                throw ValidationError(ValidationError::Kind::NotPermutation, i,
                                      agent_label(i) + ": object " + std::to_string(id) + " out of range 1.." +
                                          std::to_string(n));
            }
            rankings[i].push_back(static_cast<ObjectIndex>(id - 1));
        }
    }
    return PreferenceProfile(std::move(rankings));
}

std::span<const ObjectIndex> PreferenceProfile::ranking(AgentIndex agent) const {
    if (agent >= n_) throw std::out_of_range(agent_label(agent) + " out of range");
    return {order_.data() + agent * n_, n_};
}

Rank PreferenceProfile::rank_of(AgentIndex agent, ObjectIndex object) const {
    if (agent >= n_) throw std::out_of_range(agent_label(agent) + " out of range");
    if (object >= n_) throw std::out_of_range("object " + std::to_string(object + 1) + " out of range");
    return ranks_[agent * n_ + object];
}

std::vector<std::vector<ObjectIndex>> PreferenceProfile::rankings() const {
    std::vector<std::vector<ObjectIndex>> out(n_);
    for (AgentIndex i = 0; i < n_; ++i) {
        auto row = ranking(i);
        out[i].assign(row.begin(), row.end());
    }
    return out;
}

PreferenceProfile PreferenceProfile::with_ranking(AgentIndex agent, std::span<const ObjectIndex> ranking) const {
    auto rows = rankings();
    rows.at(agent).assign(ranking.begin(), ranking.end());
    return PreferenceProfile(std::move(rows));
}

Endowment::Endowment(std::vector<ObjectIndex> owned, bool is_explicit)
    : owned_(std::move(owned)), owner_(owned_.size()), explicit_(is_explicit) {
    std::vector<bool> seen(owned_.size(), false);
    for (AgentIndex i = 0; i < owned_.size(); ++i) {
        ObjectIndex object = owned_[i];
        if (object >= owned_.size() || seen[object]) {
            throw ValidationError(ValidationError::Kind::BadEndowment, i,
                                  agent_label(i) + ": endowment is not a bijection onto objects");
        }
        seen[object] = true;
        owner_[object] = i;
    }
}

Endowment::Endowment(std::vector<ObjectIndex> owned) : Endowment(std::move(owned), true) {}

Endowment Endowment::identity(std::size_t n) {
    std::vector<ObjectIndex> owned(n);
    std::iota(owned.begin(), owned.end(), ObjectIndex{0});
    return Endowment(std::move(owned), false);
}

bool Endowment::is_identity() const noexcept {
    for (AgentIndex i = 0; i < owned_.size(); ++i) {
        if (owned_[i] != i) return false;
    }
    return true;
}

std::string to_string(Method method) { return method == Method::Classical ? "classical" : "spectral"; }

Method parse_method(const std::string &text) {
    if (text == "classical") return Method::Classical;
    if (text == "spectral") return Method::Spectral;
    throw std::invalid_argument("unknown method '" + text + "'");
}

bool is_bijection(std::span<const ObjectIndex> assignment) {
    std::vector<bool> seen(assignment.size(), false);
    for (ObjectIndex object : assignment) {
        if (object >= assignment.size() || seen[object]) return false;
        seen[object] = true;
    }
    return true;
}

Instance::Instance(PreferenceProfile profile_in, std::optional<Endowment> endowment_in, std::string label_in,
                   std::optional<std::uint64_t> seed_in)
    : profile(std::move(profile_in)),
      endowment(endowment_in ? std::move(*endowment_in) : Endowment::identity(profile.size())),
      label(std::move(label_in)),
      seed(seed_in) {
    if (endowment.size() != profile.size()) {
        throw ValidationError(ValidationError::Kind::BadEndowment, std::nullopt,
                              "endowment has " + std::to_string(endowment.size()) + " entries for " +
                                  std::to_string(profile.size()) + " agents");
    }
}

} // namespace ttc
