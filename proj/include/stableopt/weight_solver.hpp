#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stableopt/objectives.hpp"
#include "stableopt/stable_sets.hpp"

namespace stableopt {

// Linearized objective: edge weights whose sum over any stable set equals
// the set's g value. Only cutoff edges carry nonzero weight; institutions
// whose sole stable set is empty contribute their g(empty) to the constant
// offset instead.
struct EdgeWeights {
  std::map<std::pair<int, int>, Rational> weight;
  Rational constant_offset = 0;

  Rational at(int s, int i) const {
    auto it = weight.find({s, i});
    return it == weight.end() ? Rational(0) : it->second;
  }
};

EdgeWeights linearize(const Instance& inst, const StableSetCatalog& catalog, const Objective& g);

// Seat-cloned one-to-one reduction: institution i becomes q_i unit seats
// with identical priorities; each student ranks the seats of i contiguously
// in i's position. Stable matchings of the clone are exactly the canonical
// lifts of stable matchings of the original.
struct CloneResult {
  Instance clone;
  std::vector<int> seat_institution;  // seat (clone institution index) -> original institution
  std::vector<int> seat_base;         // original institution -> first seat index

  Matching project(const Matching& clone_matching) const;
  Matching lift(const Instance& original, const Matching& original_matching) const;
};

CloneResult clone_reduction(const Instance& inst);

// One rotation of the cloned one-to-one instance: student moves[k].first
// moves from seat moves[k].second to the seat of the cyclically next entry.
struct Rotation {
  std::vector<std::pair<int, int>> moves;
  Rational weight_delta = 0;
};

// All rotations with their precedence digraph. Stable matchings of the
// clone correspond exactly to predecessor-closed subsets of the rotations,
// applied on top of the student-optimal matching.
struct RotationPoset {
  std::vector<Rotation> rotations;
  std::vector<std::vector<int>> predecessors;  // direct predecessor indices per rotation
  Matching base;                               // student-optimal clone matching
  Rational base_weight = 0;

  // Matching after eliminating a predecessor-closed set of rotations.
  Matching apply(const std::vector<char>& chosen) const;
  // Every predecessor-closed subset, up to the given limit (throws
  // std::length_error beyond it). Used by the oracle's second strategy.
  std::vector<std::vector<char>> closed_subsets(size_t limit) const;
};

RotationPoset build_rotation_poset(const Instance& clone_inst,
                                   const std::function<Rational(int s, int i)>& weight);

struct MinWeightResult {
  Matching matching;
  Rational weight = 0;      // sum of edge weights (offset not included)
  int rotation_count = 0;
  Rational cut_value = 0;
  int eliminated = 0;
};

// Minimum total-weight stable matching via the rotation poset and a
// project-selection min cut; among the optima it returns the one closest to
// the student-optimal matching (the canonical minimum closure).
MinWeightResult min_weight_stable_matching(const Instance& inst, const EdgeWeights& weights);

enum class SolveMode { Utilitarian, Egalitarian };

struct SolveReport {
  Matching matching;
  Rational value = 0;                         // utilitarian sum or egalitarian max
  std::vector<Rational> institution_values;   // g_i(M(i)), recomputed directly
  EdgeWeights weights;
  int rotation_count = 0;
  Rational cut_value = 0;
  int threshold_iterations = 0;               // egalitarian scans
  double wall_seconds = 0;
};

// Stable matching minimizing sum_i g_i(M(i)).
SolveReport solve_utilitarian(const Instance& inst, const Objective& g);

// Stable matching minimizing max_i g_i(M(i)), by ascending binary-threshold
// scans over the distinct catalog values.
SolveReport solve_egalitarian(const Instance& inst, const Objective& g);

// Stable matching minimizing sum_i g_i(M(i)) + sum_s h_s(M(s)); the student
// side enters as plain edge costs, with unmatched costs folded into a
// constant by the Rural Hospitals invariance.
SolveReport solve_two_sided(const Instance& inst, const Objective& g, const StudentCosts& h);

// Optimal for the primary objective and weakly preferred by every student
// to any other optimal stable matching (rank tie-breaking costs made
// lexicographically less important than g).
SolveReport solve_student_optimal_among_optima(const Instance& inst, const Objective& g,
                                               SolveMode mode);

}  // namespace stableopt
