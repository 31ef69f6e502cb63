#include "stableopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "stableopt/dcda.hpp"
#include "stableopt/gen.hpp"
#include "stableopt/stable_sets.hpp"

namespace stableopt {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

GenParams params_for(long long edge_target) {
  GenParams params;
  params.list_length = 5;
  params.n_students = static_cast<int>(std::max<long long>(2, edge_target / params.list_length));
  params.n_institutions = std::max(2, params.n_students / 40);
  // Capacities average ~0.6 * q_max per institution; aim near the student count.
  params.q_max = std::max<int>(1, static_cast<int>(2LL * params.n_students / params.n_institutions));
  params.n_categories = 4;
  params.categories_per_student = 1;
  params.bound_density = 0.3;
  params.family_rate = 0.2;
  params.correlation = 0.5;
  return params;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<long long>& edge_targets, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  for (size_t k = 0; k < edge_targets.size(); ++k) {
    Instance inst = generate_random_instance(params_for(edge_targets[k]), seed + k);
    const long long edges = inst.edge_count();

    {
      auto start = std::chrono::steady_clock::now();
      DcDaResult result = dc_da(inst);
      BenchRow row{edges, "dcda", result.report.proposals, ms_since(start),
                   result.report.proposals <= edges};
      rows.push_back(row);
    }
    {
      auto start = std::chrono::steady_clock::now();
      auto catalog = enumerate_stable_sets_serial(inst, AgentSide::Institutions);
      rows.push_back({edges, "stable-sets-serial", -1, ms_since(start), true});
      (void)catalog;
    }
    {
      auto start = std::chrono::steady_clock::now();
      auto catalog = enumerate_stable_sets(inst, AgentSide::Institutions, true);
      rows.push_back({edges, "stable-sets-parallel", -1, ms_since(start), true});
      (void)catalog;
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out = "|E|        algorithm             proposals    wall_ms     bound\n";
  char line[160];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-10lld %-21s %-12lld %-11.3f %s\n", row.edges,
                  row.algorithm.c_str(), row.proposals, row.wall_ms,
                  row.proposals < 0 ? "-" : (row.within_bound ? "ok" : "VIOLATED"));
    out += line;
  }
  return out;
}

}  // namespace stableopt
