#include "stableopt/stable_sets.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stableopt/da.hpp"
#include "stableopt/weight_solver.hpp"

namespace stableopt {

namespace {

StableSetEntry make_entry(const Instance& inst, int agent, const Matching& m) {
  StableSetEntry entry;
  for (int s = 0; s < inst.n_students(); ++s)
    if (m(s) == agent) entry.members.push_back(s);
  std::sort(entry.members.begin(), entry.members.end(),
            [&](int a, int b) { return inst.irank(agent, a) < inst.irank(agent, b); });
  if (!entry.members.empty()) {
    entry.top = entry.members.front();
    entry.worst = entry.members.back();
  }
  return entry;
}

// Iterative discovery for a single institution: sweep from the
// institution-pessimal stable set upward by forbidding the cutoff edge.
std::vector<StableSetEntry> discover_institution(const Instance& inst, int agent) {
  DaState state(inst);
  std::vector<StableSetEntry> entries;
  entries.push_back(make_entry(inst, agent, state.matching()));
  if (state.unfilled_in_initial()[agent]) return entries;  // invariant assignment

  while (true) {
    const std::array<std::pair<int, int>, 1> forbid{{{entries.back().worst, agent}}};
    DaOutcome outcome = state.forbid_and_resume(forbid);
    if (!outcome.stable) break;
    entries.push_back(make_entry(inst, agent, outcome.matching));
  }
  return entries;
}

// The role-swapped clone: seats become the proposing side and original
// students the receiving side, so the same institution-side discovery
// enumerates per-student stable sets from student-pessimal upward.
Instance swap_roles(const Instance& clone) {
  Instance swapped;
  swapped.student_ids = clone.institution_ids;  // seats propose
  swapped.institution_ids = clone.student_ids;
  swapped.capacity.assign(clone.student_ids.size(), 1);
  swapped.student_prefs = clone.institution_prefs;
  swapped.institution_prefs = clone.student_prefs;
  auto errors = swapped.validate();
  if (!errors.empty()) throw std::logic_error("role-swapped clone failed validation");
  return swapped;
}

std::vector<StableSetEntry> project_student_entries(const CloneResult& cloned,
                                                    const std::vector<StableSetEntry>& seat_entries) {
  std::vector<StableSetEntry> out;
  for (const auto& entry : seat_entries) {
    StableSetEntry projected;
    if (!entry.members.empty()) {
      int inst_index = cloned.seat_institution[entry.members.front()];
      projected.members = {inst_index};
      projected.top = projected.worst = inst_index;
    }
    // Distinct seats of one institution project to the same partner; they
    // arrive adjacently because seats are contiguous in every student list.
    if (out.empty() || out.back().members != projected.members) out.push_back(projected);
  }
  return out;
}

template <typename PerAgent>
void run_agents(int count, bool parallel, const PerAgent& per_agent) {
  if (!parallel) {
    for (int a = 0; a < count; ++a) per_agent(a);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < count; ++a) per_agent(a);
#else
  for (int a = 0; a < count; ++a) per_agent(a);
#endif
}

}  // namespace

StableSetCatalog enumerate_stable_sets(const Instance& inst, AgentSide side, bool parallel) {
  if (!inst.validated()) throw std::invalid_argument("enumerate_stable_sets requires a validated instance");
  StableSetCatalog catalog;
  catalog.side = side;

  if (side == AgentSide::Institutions) {
    catalog.sets.resize(inst.n_institutions());
    run_agents(inst.n_institutions(), parallel,
               [&](int i) { catalog.sets[i] = discover_institution(inst, i); });
    return catalog;
  }

  CloneResult cloned = clone_reduction(inst);
  Instance swapped = swap_roles(cloned.clone);
  catalog.sets.resize(inst.n_students());
  run_agents(inst.n_students(), parallel, [&](int s) {
    catalog.sets[s] = project_student_entries(cloned, discover_institution(swapped, s));
  });
  return catalog;
}

StableSetCatalog enumerate_stable_sets_serial(const Instance& inst, AgentSide side) {
  return enumerate_stable_sets(inst, side, false);
}

}  // namespace stableopt
