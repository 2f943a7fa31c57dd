#include "ttc/classical.hpp"

#include <algorithm>

namespace ttc {

ObjectIndex top_active_choice(const PreferenceProfile &profile, AgentIndex agent,
                              const std::vector<bool> &active_objects) {
    for (ObjectIndex object : profile.ranking(agent)) {
        if (object < active_objects.size() && active_objects[object]) return object;
    }
    throw NoActiveObjects();
}

TopChoiceGraph TopChoiceGraph::build(const PreferenceProfile &profile, const Endowment &endowment,
                                     const std::vector<bool> &active_agents) {
    const std::size_t n = profile.size();
    std::vector<bool> active_objects(n, false);
    for (AgentIndex i = 0; i < n; ++i) {
        if (active_agents[i]) active_objects[endowment.owned_by(i)] = true;
    }
    TopChoiceGraph graph{active_agents, std::vector<AgentIndex>(n, 0)};
    for (AgentIndex i = 0; i < n; ++i) {
        if (active_agents[i]) {
            graph.points_to[i] = endowment.owner_of(top_active_choice(profile, i, active_objects));
        }
    }
    return graph;
}

std::vector<Cycle> find_cycles(const TopChoiceGraph &graph) {
    enum class Mark : unsigned char { Unvisited, OnPath, Done };
    const std::size_t n = graph.active.size();
    std::vector<Mark> mark(n, Mark::Unvisited);
    std::vector<Cycle> cycles;
    std::vector<AgentIndex> path;

    for (AgentIndex start = 0; start < n; ++start) {
        if (!graph.active[start] || mark[start] != Mark::Unvisited) continue;
        path.clear();
        AgentIndex at = start;
        while (mark[at] == Mark::Unvisited) {
            mark[at] = Mark::OnPath;
            path.push_back(at);
            at = graph.points_to[at];
        }
        if (mark[at] == Mark::OnPath) {
            auto entry = std::find(path.begin(), path.end(), at);
            Cycle cycle(entry, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        for (AgentIndex agent : path) mark[agent] = Mark::Done;
    }
    std::sort(cycles.begin(), cycles.end(), [](const Cycle &a, const Cycle &b) { return a.front() < b.front(); });
    return cycles;
}

Allocation solve_classical(const Instance &instance) {
    const auto &profile = instance.profile;
    const auto &endowment = instance.endowment;
    const std::size_t n = profile.size();

    Allocation allocation;
    allocation.method = Method::Classical;
    allocation.assignment.assign(n, 0);

    std::vector<bool> agent_active(n, true);
    std::vector<bool> object_active(n, true);
    // Position in each agent's ranking of its current favourite; only moves forward
    // because objects never come back.
    std::vector<std::size_t> cursor(n, 0);
    TopChoiceGraph graph{std::vector<bool>(n, true), std::vector<AgentIndex>(n, 0)};
    std::size_t remaining = n;

    while (remaining > 0) {
        for (AgentIndex i = 0; i < n; ++i) {
            if (!agent_active[i]) continue;
            auto ranking = profile.ranking(i);
            while (!object_active[ranking[cursor[i]]]) ++cursor[i];
            graph.points_to[i] = endowment.owner_of(ranking[cursor[i]]);
        }
        graph.active = agent_active;

        TradingRound round{find_cycles(graph)};
        for (const Cycle &cycle : round.cycles) {
            for (AgentIndex agent : cycle) {
                allocation.assignment[agent] = endowment.owned_by(graph.points_to[agent]);
            }
        }
        for (const Cycle &cycle : round.cycles) {
            for (AgentIndex agent : cycle) {
                agent_active[agent] = false;
                object_active[endowment.owned_by(agent)] = false;
                --remaining;
            }
        }
        allocation.rounds.push_back(std::move(round));
    }
    return allocation;
}

} // namespace ttc
