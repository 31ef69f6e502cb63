#pragma once

#include <vector>

#include "stableopt/matching.hpp"

namespace stableopt {

enum class AgentSide { Institutions, Students };

struct StableSetEntry {
  std::vector<int> members;  // counterpart indices, agent's preference order (best first)
  int top = -1;              // most preferred member, -1 for the empty set
  int worst = -1;            // cutoff: least preferred member
};

// For every agent on the chosen side, the distinct sets of partners it
// receives across all stable matchings, in discovery order: agent-pessimal
// first, strictly improving cutoffs. Entry 0 always equals the agent's
// assignment in the student-optimal matching.
struct StableSetCatalog {
  AgentSide side = AgentSide::Institutions;
  std::vector<std::vector<StableSetEntry>> sets;  // per agent

  bool empty_everywhere(int agent) const {
    return sets[agent].size() == 1 && sets[agent][0].members.empty();
  }
};

// Iterative discovery: per agent, run DA, then repeatedly forbid the edge of
// the current cutoff partner and resume until infeasible. Agents
// undersubscribed in M_0 short-circuit to a single entry. Per-agent
// enumerations are independent; the default entry point distributes them
// over OpenMP threads when available.
StableSetCatalog enumerate_stable_sets(const Instance& inst, AgentSide side, bool parallel = true);

// Plain-loop reference implementation; bit-identical output to the parallel
// path.
StableSetCatalog enumerate_stable_sets_serial(const Instance& inst, AgentSide side);

}  // namespace stableopt
