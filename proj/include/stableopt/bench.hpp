#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stableopt {

struct BenchRow {
  long long edges = 0;
  std::string algorithm;
  long long proposals = 0;  // -1 where not applicable
  double wall_ms = 0;
  bool within_bound = true;  // proposals <= |E| where applicable
};

// For each target edge count: generate a seeded instance, run dc_da
// (asserting its proposal count never exceeds |E|) and time the serial and
// OpenMP stable-set enumerations against each other.
std::vector<BenchRow> run_bench(const std::vector<long long>& edge_targets, std::uint64_t seed);

std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace stableopt
