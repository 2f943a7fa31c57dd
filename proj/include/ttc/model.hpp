#pragma once

// Domain types for the housing market: strict preference profiles, endowments,
// allocations and instances.
//
// Agents and objects are 0-based inside the library. File formats and
// human-facing output are 1-based; conversion happens in io.hpp and the CLI.
// Ranks are 1-based everywhere (best = 1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttc {

using AgentIndex = std::size_t;
using ObjectIndex = std::size_t;
using Rank = std::size_t;

/// Raised when raw input cannot form a valid market.
class ValidationError : public std::runtime_error {
public:
    enum class Kind { EmptyInput, NonSquare, NotPermutation, BadEndowment, BadAllocation };

    ValidationError(Kind kind, std::optional<AgentIndex> agent, const std::string &what);

    Kind kind() const noexcept { return kind_; }
    /// 0-based agent row at fault, when one can be named.
    std::optional<AgentIndex> agent() const noexcept { return agent_; }

private:
    Kind kind_;
    std::optional<AgentIndex> agent_;
};

/**
 * Strict, complete preferences of n agents over n objects.
 *
 * ranking(i)[r] is the object agent i places at position r + 1. The inverse
 * rank table is kept alongside so rank_of is O(1).
 */
class PreferenceProfile {
public:
    /// Takes 0-based rankings; throws ValidationError on any defect.
    explicit PreferenceProfile(std::vector<std::vector<ObjectIndex>> rankings);

    std::size_t size() const noexcept { return n_; }

    std::span<const ObjectIndex> ranking(AgentIndex agent) const;

    /// Position of object in agent's ranking, 1..n. Throws std::out_of_range.
    Rank rank_of(AgentIndex agent, ObjectIndex object) const;

    /// Unchecked variant for hot loops.
    Rank rank_unchecked(AgentIndex agent, ObjectIndex object) const noexcept {
        return ranks_[agent * n_ + object];
    }

    std::vector<std::vector<ObjectIndex>> rankings() const;

    /// Copy with one agent's ranking replaced (used for misreport probes).
    PreferenceProfile with_ranking(AgentIndex agent, std::span<const ObjectIndex> ranking) const;

    friend bool operator==(const PreferenceProfile &, const PreferenceProfile &) = default;

private:
    std::size_t n_ = 0;
    std::vector<ObjectIndex> order_; // row-major n x n, object by position
    std::vector<Rank> ranks_;        // row-major n x n, 1-based rank by object
};

/// Validates 1-based raw rows (as they appear in files) into a profile.
PreferenceProfile validate_profile(const std::vector<std::vector<std::int64_t>> &raw);

/// Initial ownership: agent i owns owner_of(i). Identity unless given explicitly.
class Endowment {
public:
    static Endowment identity(std::size_t n);
    /// 0-based; throws ValidationError unless a bijection onto 0..n-1.
    explicit Endowment(std::vector<ObjectIndex> owned);

    std::size_t size() const noexcept { return owned_.size(); }
    ObjectIndex owned_by(AgentIndex agent) const { return owned_.at(agent); }
    AgentIndex owner_of(ObjectIndex object) const { return owner_.at(object); }
    std::span<const ObjectIndex> objects() const noexcept { return owned_; }
    bool is_identity() const noexcept;
    /// Whether the endowment was written out explicitly (affects serialization only).
    bool is_explicit() const noexcept { return explicit_; }

    friend bool operator==(const Endowment &a, const Endowment &b) { return a.owned_ == b.owned_; }

private:
    Endowment(std::vector<ObjectIndex> owned, bool is_explicit);

    std::vector<ObjectIndex> owned_;
    std::vector<AgentIndex> owner_;
    bool explicit_ = false;
};

enum class Method { Classical, Spectral };

std::string to_string(Method method);
/// Accepts "classical" / "spectral"; throws std::invalid_argument otherwise.
Method parse_method(const std::string &text);

using Cycle = std::vector<AgentIndex>;

struct TradingRound {
    std::vector<Cycle> cycles;

    friend bool operator==(const TradingRound &, const TradingRound &) = default;
};

struct Pick {
    AgentIndex agent;
    ObjectIndex object;

    friend bool operator==(const Pick &, const Pick &) = default;
};

/**
 * A bijective assignment plus the provenance of how it was produced:
 * elimination rounds for classical TTC, the pick sequence for the spectral
 * pipeline.
 */
struct Allocation {
    Method method = Method::Classical;
    std::vector<ObjectIndex> assignment; // by agent
    std::vector<TradingRound> rounds;    // classical only
    std::vector<Pick> picks;             // spectral only

    std::size_t size() const noexcept { return assignment.size(); }
    bool same_assignment(const Allocation &other) const { return assignment == other.assignment; }

    friend bool operator==(const Allocation &, const Allocation &) = default;
};

bool is_bijection(std::span<const ObjectIndex> assignment);

struct Instance {
    PreferenceProfile profile;
    Endowment endowment;
    std::string label;
    std::optional<std::uint64_t> seed;

    Instance(PreferenceProfile profile, std::optional<Endowment> endowment = std::nullopt,
             std::string label = {}, std::optional<std::uint64_t> seed = std::nullopt);

    std::size_t size() const noexcept { return profile.size(); }

    friend bool operator==(const Instance &, const Instance &) = default;
};

} // namespace ttc
