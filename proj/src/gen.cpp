#include "stableopt/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stableopt {

namespace {

// splitmix64; self-contained so generated instances are reproducible
// independent of the standard library's distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int k = static_cast<int>(v.size()) - 1; k > 0; --k) std::swap(v[k], v[below(k + 1)]);
  }
};

}  // namespace

Instance generate_random_instance(const GenParams& params, std::uint64_t seed) {
  if (params.n_students < 1 || params.n_institutions < 1 || params.q_max < 1 ||
      params.list_length < 1)
    throw std::invalid_argument("generator parameters must be positive");
  if (params.correlation < 0.0 || params.correlation > 1.0)
    throw std::invalid_argument("correlation must lie in [0,1]");

  Rng rng(seed);
  Instance inst;
  inst.counting_rule = params.counting_rule;
  const int ns = params.n_students, ni = params.n_institutions;
  for (int s = 0; s < ns; ++s) inst.student_ids.push_back("s" + std::to_string(s + 1));
  for (int i = 0; i < ni; ++i) inst.institution_ids.push_back("i" + std::to_string(i + 1));
  for (int c = 0; c < params.n_categories; ++c) inst.category_ids.push_back("c" + std::to_string(c + 1));

  inst.capacity.resize(ni);
  for (int i = 0; i < ni; ++i) inst.capacity[i] = 1 + rng.below(params.q_max);

  // Student lists: a random subset in random order.
  inst.student_prefs.resize(ns);
  const int length = std::min(params.list_length, ni);
  std::vector<int> pool(ni);
  std::iota(pool.begin(), pool.end(), 0);
  for (int s = 0; s < ns; ++s) {
    rng.shuffle(pool);
    inst.student_prefs[s].assign(pool.begin(), pool.begin() + length);
  }

  // Institutions with no applicants adopt one student so every agent has an
  // edge.
  std::vector<std::vector<int>> applicants(ni);
  for (int s = 0; s < ns; ++s)
    for (int i : inst.student_prefs[s]) applicants[i].push_back(s);
  for (int i = 0; i < ni; ++i) {
    if (!applicants[i].empty()) continue;
    int s = rng.below(ns);
    inst.student_prefs[s].push_back(i);
    applicants[i].push_back(s);
  }

  // Priorities: a blend of one global ranking and independent noise.
  std::vector<int> global_rank(ns);
  std::iota(global_rank.begin(), global_rank.end(), 0);
  rng.shuffle(global_rank);
  std::vector<int> rank_of(ns);
  for (int r = 0; r < ns; ++r) rank_of[global_rank[r]] = r;

  inst.institution_prefs.resize(ni);
  const double x = params.correlation;
  for (int i = 0; i < ni; ++i) {
    std::vector<std::pair<double, int>> keyed;
    for (int s : applicants[i]) {
      double key = (1.0 - x) * rng.unit() + x * (static_cast<double>(rank_of[s]) / ns);
      keyed.emplace_back(key, rank_of[s]);
    }
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [key, grank] : keyed) inst.institution_prefs[i].push_back(global_rank[grank]);
  }

  inst.student_categories.resize(ns);
  const int per_student = std::min(params.categories_per_student, params.n_categories);
  for (int s = 0; s < ns; ++s) {
    std::vector<int> cats(params.n_categories);
    std::iota(cats.begin(), cats.end(), 0);
    rng.shuffle(cats);
    inst.student_categories[s].assign(cats.begin(), cats.begin() + per_student);
  }

  inst.bounds.resize(ni);
  for (int i = 0; i < ni; ++i)
    for (int c = 0; c < params.n_categories; ++c)
      if (rng.chance(params.bound_density)) {
        int upper = rng.below(3);
        int lower = rng.below(upper + 1);
        inst.bounds[i].push_back({c, {lower, upper}});
      }

  // Families of two or three; each student joins at most one.
  std::vector<int> order(ns);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (size_t k = 0; k + 1 < order.size();) {
    if (rng.chance(params.family_rate)) {
      std::vector<int> family{order[k], order[k + 1]};
      size_t step = 2;
      if (k + 2 < order.size() && rng.chance(0.3)) {
        family.push_back(order[k + 2]);
        step = 3;
      }
      std::sort(family.begin(), family.end());
      inst.family_ids.push_back("f" + std::to_string(inst.families.size() + 1));
      inst.families.push_back(std::move(family));
      k += step;
    } else {
      ++k;
    }
  }

  auto errors = inst.validate();
  if (!errors.empty()) throw std::logic_error("generated instance failed validation: " + errors.front());
  return inst;
}

}  // namespace stableopt
