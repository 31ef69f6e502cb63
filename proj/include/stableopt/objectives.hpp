#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stableopt/instance.hpp"
#include "stableopt/matching.hpp"
#include "stableopt/stable_sets.hpp"

namespace stableopt {

// An institutional set function g_i, evaluated on the set of students an
// institution holds. Values are exact rationals. Evaluators capture the
// instance by reference and are pure; they stay valid as long as the
// instance does.
struct Objective {
  std::string name;
  std::function<Rational(int institution, const std::vector<int>& students)> eval;
  Rational operator()(int institution, const std::vector<int>& students) const {
    return eval(institution, students);
  }
};

// Total diversity violation under one-to-all counting: a student counts for
// every category she belongs to.
Rational eval_one_to_all(const Instance& inst, int i, const std::vector<int>& students);

// Maximum per-category violation at i under one-to-all counting (the
// institutional form of the egalitarian diversity measure).
Rational eval_one_to_all_max(const Instance& inst, int i, const std::vector<int>& students);

// Minimum total violation under one-to-one counting, over all assignments
// of each student to one of her categories. Computed through the auxiliary
// slot graph; students with no categories route to slack and contribute no
// violation.
Rational eval_one_to_one(const Instance& inst, int i, const std::vector<int>& students);

// Maximum weight of a student-side complete matching in the slot graph H
// for institution i. Exposed so tests can assert the identity
// maxweight(H) = (|S_i| + sum_c l_i^c) - g_i(S_i) on fully categorized
// inputs.
long long gadget_max_weight(const Instance& inst, int i, const std::vector<int>& students);

// Negative count of families fully contained in the student set.
Rational eval_siblings(const Instance& inst, int i, const std::vector<int>& students);

// Built-in factory; names: one2all, one2all-max, one2one, siblings.
Objective make_objective(const Instance& inst, const std::string& name);

// Weighted sum of built-ins with rational coefficients.
Objective make_weighted_mix(const Instance& inst,
                            const std::vector<std::pair<std::string, Rational>>& terms);

// Binary threshold transform: 0 where g(S) <= cutoff, 1 otherwise.
Objective threshold_objective(const Objective& g, const Rational& cutoff);

// Combined objective making g lexicographically more important than the
// external edge costs z: g is scaled by max|z|*(|E|+1) divided by the
// smallest nonzero gap between g values on catalog entries of the same
// institution. When all catalog values coincide the g term is dropped.
Objective lexicographic_combine(const Instance& inst, const Objective& g,
                                const std::function<Rational(int s, int i)>& z,
                                const StableSetCatalog& catalog);

// Student-side costs for two-sided solves: a cost per acceptable partner
// plus a cost for remaining unmatched. Missing entries default to zero.
struct StudentCosts {
  std::map<std::pair<int, int>, Rational> edge;
  std::map<int, Rational> unmatched;

  Rational edge_cost(int s, int i) const {
    auto it = edge.find({s, i});
    return it == edge.end() ? Rational(0) : it->second;
  }
  Rational unmatched_cost(int s) const {
    auto it = unmatched.find(s);
    return it == unmatched.end() ? Rational(0) : it->second;
  }
};

// sum_i g_i(M(i)) over all institutions.
Rational total_objective(const Instance& inst, const Objective& g, const Matching& m);
// max_i g_i(M(i)) over all institutions.
Rational max_objective(const Instance& inst, const Objective& g, const Matching& m);
Rational two_sided_objective(const Instance& inst, const Objective& g, const StudentCosts& h,
                             const Matching& m);

}  // namespace stableopt
