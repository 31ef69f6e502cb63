#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "stableopt/matching.hpp"
#include "stableopt/objectives.hpp"

namespace stableopt {

// Brute force is desk-scale only; enumeration refuses explicitly (never
// truncates silently) when an instance exceeds the budget.
struct OracleBudget {
  int max_students = 10;
  int max_institutions = 5;
  int max_capacity = 3;
  long long max_nodes = 200'000'000;   // search-tree nodes
  long long max_matchings = 1'000'000;
};

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Enumeration {
  std::vector<Matching> matchings;  // deduplicated, canonical (lexicographic) order

  // Distinct per-institution assignments across all matchings, members
  // sorted ascending.
  std::vector<std::set<std::vector<int>>> projections(const Instance& inst) const;
};

// Exhaustive enumeration of all stable matchings by recursive assignment
// with monotone blocking-edge pruning.
Enumeration enumerate_all_stable(const Instance& inst, const OracleBudget& budget = {});

// Independent second strategy: close the student-optimal matching of the
// seat clone under every predecessor-closed set of rotations. Must agree
// with the recursive enumeration.
Enumeration enumerate_all_stable_via_rotations(const Instance& inst, const OracleBudget& budget = {});

enum class OptimizeMode { Utilitarian, Egalitarian };

struct OracleOptimum {
  Rational value = 0;
  std::vector<Matching> argmins;
};

// Direct evaluation of the objective on every enumerated stable matching.
OracleOptimum oracle_optimum(const Instance& inst, const Objective& g, OptimizeMode mode,
                             const OracleBudget& budget = {});

OracleOptimum oracle_optimum_two_sided(const Instance& inst, const Objective& g, const StudentCosts& h,
                                       const OracleBudget& budget = {});

}  // namespace stableopt
