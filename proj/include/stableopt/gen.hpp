#pragma once

#include <cstdint>

#include "stableopt/instance.hpp"

namespace stableopt {

struct GenParams {
  int n_students = 8;
  int n_institutions = 4;
  int q_max = 3;
  int n_categories = 3;
  int categories_per_student = 1;
  double bound_density = 0.4;
  double family_rate = 0.3;
  int list_length = 3;
  double correlation = 0.5;  // 0: independent priorities, 1: one global ranking
  CountingRule counting_rule = CountingRule::OneToAll;
};

// Deterministic for a fixed (params, seed); uses its own PRNG and sampling
// so outputs are identical across platforms. Acceptability is symmetric by
// construction and every agent ends up with at least one edge.
Instance generate_random_instance(const GenParams& params, std::uint64_t seed);

}  // namespace stableopt
