#include "stableopt/oracle.hpp"

#include <algorithm>

#include "stableopt/weight_solver.hpp"

namespace stableopt {

std::vector<std::set<std::vector<int>>> Enumeration::projections(const Instance& inst) const {
  std::vector<std::set<std::vector<int>>> out(inst.n_institutions());
  for (const auto& m : matchings) {
    std::vector<std::vector<int>> held(inst.n_institutions());
    for (int s = 0; s < inst.n_students(); ++s)
      if (m.matched(s)) held[m(s)].push_back(s);
    for (int i = 0; i < inst.n_institutions(); ++i) out[i].insert(held[i]);
  }
  return out;
}

namespace {

void check_size_budget(const Instance& inst, const OracleBudget& budget) {
  if (!inst.validated()) throw std::invalid_argument("oracle requires a validated instance");
  if (inst.n_students() > budget.max_students || inst.n_institutions() > budget.max_institutions)
    throw OracleBudgetError("instance exceeds the oracle size budget");
  for (int q : inst.capacity)
    if (q > budget.max_capacity) throw OracleBudgetError("instance exceeds the oracle capacity budget");
}

struct SearchState {
  const Instance& inst;
  const OracleBudget& budget;
  Matching current;
  std::vector<std::vector<int>> held;  // per institution, insertion order
  long long nodes = 0;
  std::vector<Matching> found;

  explicit SearchState(const Instance& i, const OracleBudget& b)
      : inst(i), budget(b), current(i.n_students()), held(i.n_institutions()) {}

  // A decided pair (s,i) with i preferred by s to her assignment blocks for
  // sure once i holds anyone it ranks below s; held sets only grow, so this
  // prune is safe. Free-seat blocking is settled at the leaves.
  bool certainly_blocked(int s) const {
    int assigned = current(s);
    int limit = assigned >= 0 ? inst.srank(s, assigned) : static_cast<int>(inst.student_prefs[s].size());
    for (int r = 0; r < limit; ++r) {
      int i = inst.student_prefs[s][r];
      for (int other : held[i])
        if (inst.irank(i, other) > inst.irank(i, s)) return true;
    }
    return false;
  }

  void recurse(int s) {
    if (++nodes > budget.max_nodes) throw OracleBudgetError("oracle search budget exceeded");
    if (s == inst.n_students()) {
      if (is_stable(inst, current).stable()) {
        found.push_back(current);
        if (static_cast<long long>(found.size()) > budget.max_matchings)
          throw OracleBudgetError("oracle matching budget exceeded");
      }
      return;
    }
    // Unmatched branch plus every acceptable institution with a free seat.
    current.partner[s] = -1;
    if (!certainly_blocked(s)) recurse(s + 1);
    for (int i : inst.student_prefs[s]) {
      if (static_cast<int>(held[i].size()) >= inst.capacity[i]) continue;
      current.partner[s] = i;
      held[i].push_back(s);
      bool blocked = certainly_blocked(s);
      // The newcomer may also complete a blocking pair for an earlier student.
      if (!blocked) {
        for (int other = 0; other < s && !blocked; ++other) {
          int assigned = current(other);
          if (!inst.acceptable(other, i)) continue;
          bool prefers_i = assigned < 0 || inst.srank(other, i) < inst.srank(other, assigned);
          if (assigned == i || !prefers_i) continue;
          if (inst.irank(i, s) > inst.irank(i, other)) blocked = true;
        }
      }
      if (!blocked) recurse(s + 1);
      held[i].pop_back();
      current.partner[s] = -1;
    }
  }
};

}  // namespace

Enumeration enumerate_all_stable(const Instance& inst, const OracleBudget& budget) {
  check_size_budget(inst, budget);
  SearchState search(inst, budget);
  search.recurse(0);
  Enumeration out;
  out.matchings = std::move(search.found);
  std::sort(out.matchings.begin(), out.matchings.end());
  out.matchings.erase(std::unique(out.matchings.begin(), out.matchings.end()), out.matchings.end());
  return out;
}

Enumeration enumerate_all_stable_via_rotations(const Instance& inst, const OracleBudget& budget) {
  check_size_budget(inst, budget);
  CloneResult cloned = clone_reduction(inst);
  RotationPoset poset =
      build_rotation_poset(cloned.clone, [](int, int) { return Rational(0); });
  std::vector<std::vector<char>> subsets;
  try {
    subsets = poset.closed_subsets(static_cast<size_t>(budget.max_matchings));
  } catch (const std::length_error&) {
    throw OracleBudgetError("oracle matching budget exceeded");
  }
  Enumeration out;
  for (const auto& chosen : subsets) out.matchings.push_back(cloned.project(poset.apply(chosen)));
  std::sort(out.matchings.begin(), out.matchings.end());
  out.matchings.erase(std::unique(out.matchings.begin(), out.matchings.end()), out.matchings.end());
  return out;
}

namespace {

OracleOptimum pick_optima(const Instance& inst, const Enumeration& all,
                          const std::function<Rational(const Matching&)>& score) {
  if (all.matchings.empty()) throw std::logic_error("no stable matchings enumerated");
  (void)inst;
  OracleOptimum best;
  bool first = true;
  for (const auto& m : all.matchings) {
    Rational value = score(m);
    if (first || value < best.value) {
      best.value = value;
      best.argmins.clear();
      first = false;
    }
    if (value == best.value) best.argmins.push_back(m);
  }
  return best;
}

}  // namespace

OracleOptimum oracle_optimum(const Instance& inst, const Objective& g, OptimizeMode mode,
                             const OracleBudget& budget) {
  Enumeration all = enumerate_all_stable(inst, budget);
  auto score = [&](const Matching& m) {
    return mode == OptimizeMode::Utilitarian ? total_objective(inst, g, m) : max_objective(inst, g, m);
  };
  return pick_optima(inst, all, score);
}

OracleOptimum oracle_optimum_two_sided(const Instance& inst, const Objective& g, const StudentCosts& h,
                                       const OracleBudget& budget) {
  Enumeration all = enumerate_all_stable(inst, budget);
  return pick_optima(inst, all,
                     [&](const Matching& m) { return two_sided_objective(inst, g, h, m); });
}

}  // namespace stableopt
