#pragma once

// Top Trading Cycles for the housing market.
//
// Each round every active agent points at the owner of its favourite active
// object. The resulting functional graph has at least one cycle; every cycle
// trades (each member receives the object it points at) and leaves together.

#include <span>
#include <stdexcept>
#include <vector>

#include "ttc/model.hpp"

namespace ttc {

class NoActiveObjects : public std::logic_error {
public:
    NoActiveObjects() : std::logic_error("no active objects left to choose from") {}
};

/// Best-ranked object among those flagged active. Throws NoActiveObjects.
ObjectIndex top_active_choice(const PreferenceProfile &profile, AgentIndex agent,
                              const std::vector<bool> &active_objects);

/**
 * One round's pointing structure. points_to[i] is only meaningful when
 * active[i]; it always names an active agent.
 */
struct TopChoiceGraph {
    std::vector<bool> active;
    std::vector<AgentIndex> points_to;

    static TopChoiceGraph build(const PreferenceProfile &profile, const Endowment &endowment,
                                const std::vector<bool> &active_agents);
};

/// Every cycle of the functional graph, each rotated to start at its smallest
/// agent and listed in pointing order; cycles sorted by that smallest agent.
std::vector<Cycle> find_cycles(const TopChoiceGraph &graph);

Allocation solve_classical(const Instance &instance);

} // namespace ttc
