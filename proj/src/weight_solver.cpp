#include "stableopt/weight_solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "stableopt/da.hpp"

namespace stableopt {

EdgeWeights linearize(const Instance& inst, const StableSetCatalog& catalog, const Objective& g) {
  if (catalog.side != AgentSide::Institutions)
    throw std::invalid_argument("linearize expects an institution-side catalog");
  EdgeWeights weights;
  for (int i = 0; i < inst.n_institutions(); ++i) {
    const auto& entries = catalog.sets[i];
    if (entries.empty()) throw std::logic_error("catalog has no entry for an institution");
    if (catalog.empty_everywhere(i)) {
      weights.constant_offset += g(i, {});
      continue;
    }
    // Entries are stored pessimal first; the recursion processes them from
    // institution-optimal to pessimal, so each set's non-cutoff members are
    // cutoffs already priced (or zero-weight edges).
    int previous_cutoff_rank = -1;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      int cutoff = it->worst;
      int cutoff_rank = inst.irank(i, cutoff);
      if (cutoff_rank <= previous_cutoff_rank)
        throw std::logic_error("catalog cutoffs are not strictly ordered");
      previous_cutoff_rank = cutoff_rank;
      Rational rest = 0;
      for (int s : it->members)
        if (s != cutoff) rest += weights.at(s, i);
      weights.weight[{cutoff, i}] = g(i, it->members) - rest;
    }
  }
  return weights;
}

Matching CloneResult::project(const Matching& clone_matching) const {
  Matching out(static_cast<int>(clone_matching.partner.size()));
  for (size_t s = 0; s < clone_matching.partner.size(); ++s) {
    int seat = clone_matching.partner[s];
    out.partner[s] = seat >= 0 ? seat_institution[seat] : -1;
  }
  return out;
}

Matching CloneResult::lift(const Instance& original, const Matching& original_matching) const {
  Matching out(original.n_students());
  auto held = institution_assignments(original, original_matching);
  for (int i = 0; i < original.n_institutions(); ++i)
    for (size_t k = 0; k < held[i].size(); ++k) out.partner[held[i][k]] = seat_base[i] + static_cast<int>(k);
  return out;
}

CloneResult clone_reduction(const Instance& inst) {
  if (!inst.validated()) throw std::invalid_argument("clone_reduction requires a validated instance");
  CloneResult result;
  Instance& clone = result.clone;
  clone.student_ids = inst.student_ids;
  result.seat_base.resize(inst.n_institutions());
  for (int i = 0; i < inst.n_institutions(); ++i) {
    result.seat_base[i] = static_cast<int>(clone.institution_ids.size());
    for (int k = 0; k < inst.capacity[i]; ++k) {
      clone.institution_ids.push_back(inst.institution_ids[i] + "#" + std::to_string(k + 1));
      clone.capacity.push_back(1);
      clone.institution_prefs.push_back(inst.institution_prefs[i]);
      result.seat_institution.push_back(i);
    }
  }
  clone.student_prefs.resize(inst.n_students());
  for (int s = 0; s < inst.n_students(); ++s)
    for (int i : inst.student_prefs[s])
      for (int k = 0; k < inst.capacity[i]; ++k)
        clone.student_prefs[s].push_back(result.seat_base[i] + k);
  auto errors = clone.validate();
  if (!errors.empty()) throw std::logic_error("seat clone failed validation: " + errors.front());
  return result;
}

namespace {

// Reduced-list state for the minimal-differences sweep over the one-to-one
// clone. Every deletion is a suffix truncation on some seat's list, so a
// pair (s, seat) is active iff the seat still ranks s above its truncation
// point.
struct RotationBuilder {
  const Instance& clone;
  Matching current;                    // student -> seat
  std::vector<int> seat_match;         // seat -> student or -1
  std::vector<int> trunc;              // per seat: first banned rank
  std::vector<int> first_ptr;          // per student: cached first-active position
  std::unordered_map<long long, int> deleted_by;  // pair key -> rotation index
  std::unordered_map<long long, int> produced_by; // pair key -> rotation that created it
  RotationPoset poset;

  explicit RotationBuilder(const Instance& c) : clone(c), current(c.n_students()) {}

  long long key(int s, int seat) const {
    return static_cast<long long>(s) * clone.n_institutions() + seat;
  }
  bool active(int s, int seat) const { return clone.irank(seat, s) < trunc[seat]; }

  void truncate(int seat, int new_trunc, int rotation) {
    for (int r = new_trunc; r < trunc[seat]; ++r)
      deleted_by[key(clone.institution_prefs[seat][r], seat)] = rotation;
    trunc[seat] = std::min(trunc[seat], new_trunc);
  }

  int first_active(int s) {
    const auto& prefs = clone.student_prefs[s];
    int& p = first_ptr[s];
    while (p < static_cast<int>(prefs.size()) && !active(s, prefs[p])) ++p;
    return p;
  }
  int second_active(int s) {
    const auto& prefs = clone.student_prefs[s];
    for (int p = first_active(s) + 1; p < static_cast<int>(prefs.size()); ++p)
      if (active(s, prefs[p])) return p;
    return -1;
  }

  void init() {
    current = run_da(clone);
    seat_match.assign(clone.n_institutions(), -1);
    for (int s = 0; s < clone.n_students(); ++s)
      if (current.matched(s)) seat_match[current(s)] = s;
    trunc.assign(clone.n_institutions(), 0);
    // Base reduction: a seat never goes below its partner in the
    // student-optimal (seat-pessimal) matching; unmatched seats and
    // students stay so in every stable matching.
    for (int seat = 0; seat < clone.n_institutions(); ++seat)
      if (seat_match[seat] >= 0) trunc[seat] = clone.irank(seat, seat_match[seat]) + 1;
    first_ptr.assign(clone.n_students(), 0);
    for (int s = 0; s < clone.n_students(); ++s) {
      if (!current.matched(s)) continue;
      if (clone.student_prefs[s][first_active(s)] != current(s))
        throw std::logic_error("reduced lists disagree with the base matching");
    }
    poset.base = current;
  }

  // All rotations exposed in the current matching: cycles of the map
  // s -> partner of the next seat on s's reduced list.
  std::vector<std::vector<int>> exposed_cycles() {
    std::vector<std::vector<int>> cycles;
    std::vector<int> state(clone.n_students(), 0);  // 0 new, 1 on path, 2 done
    for (int start = 0; start < clone.n_students(); ++start) {
      if (state[start] != 0) continue;
      std::vector<int> path;
      int s = start;
      while (s >= 0 && state[s] == 0) {
        state[s] = 1;
        path.push_back(s);
        int second = current.matched(s) ? second_active(s) : -1;
        s = second >= 0 ? seat_match[clone.student_prefs[s][second]] : -1;
      }
      if (s >= 0 && state[s] == 1) {
        auto at = std::find(path.begin(), path.end(), s);
        cycles.emplace_back(at, path.end());
      }
      for (int v : path) state[v] = 2;
    }
    return cycles;
  }

  void eliminate(const std::vector<int>& cycle) {
    int index = static_cast<int>(poset.rotations.size());
    Rotation rho;
    const int r = static_cast<int>(cycle.size());
    std::vector<int> new_seat(r);
    for (int k = 0; k < r; ++k) {
      int s = cycle[k];
      rho.moves.emplace_back(s, current(s));
      new_seat[k] = clone.student_prefs[s][second_active(s)];
    }

    // Precedence: the rotation that produced each old pair (type 1) and the
    // rotations whose deletions let each student jump over the seats
    // between her old and new seat (type 2).
    std::vector<int> preds;
    auto add_pred = [&preds](int p) {
      if (p >= 0 && std::find(preds.begin(), preds.end(), p) == preds.end()) preds.push_back(p);
    };
    for (int k = 0; k < r; ++k) {
      auto [s, old_seat] = rho.moves[k];
      auto produced = produced_by.find(key(s, old_seat));
      if (produced != produced_by.end()) add_pred(produced->second);
      int from = clone.srank(s, old_seat), to = clone.srank(s, new_seat[k]);
      for (int p = from + 1; p < to; ++p) {
        auto deleted = deleted_by.find(key(s, clone.student_prefs[s][p]));
        if (deleted != deleted_by.end()) add_pred(deleted->second);
      }
    }

    // Apply the moves, then truncate each receiving seat below its new
    // student.
    for (int k = 0; k < r; ++k) {
      auto [s, old_seat] = rho.moves[k];
      (void)old_seat;
      current.partner[s] = new_seat[k];
      seat_match[new_seat[k]] = s;
      produced_by[key(s, new_seat[k])] = index;
    }
    for (int k = 0; k < r; ++k)
      truncate(new_seat[k], clone.irank(new_seat[k], rho.moves[k].first) + 1, index);

    poset.rotations.push_back(std::move(rho));
    poset.predecessors.push_back(std::move(preds));
  }

  void run() {
    init();
    while (true) {
      auto cycles = exposed_cycles();
      if (cycles.empty()) break;
      for (const auto& cycle : cycles) eliminate(cycle);
    }
  }
};

}  // namespace

Matching RotationPoset::apply(const std::vector<char>& chosen) const {
  Matching m = base;
  for (size_t idx = 0; idx < rotations.size(); ++idx) {
    if (!chosen[idx]) continue;
    const auto& moves = rotations[idx].moves;
    for (size_t k = 0; k < moves.size(); ++k)
      m.partner[moves[k].first] = moves[(k + 1) % moves.size()].second;
  }
  return m;
}

std::vector<std::vector<char>> RotationPoset::closed_subsets(size_t limit) const {
  std::vector<std::vector<char>> out;
  std::vector<char> chosen(rotations.size(), 0);
  // Rotation indices are a topological order, so checking direct
  // predecessors index by index enumerates exactly the closed sets.
  auto recurse = [&](auto&& self, size_t k) -> void {
    if (k == rotations.size()) {
      if (out.size() >= limit) throw std::length_error("too many closed subsets");
      out.push_back(chosen);
      return;
    }
    self(self, k + 1);
    for (int p : predecessors[k])
      if (!chosen[p]) return;
    chosen[k] = 1;
    self(self, k + 1);
    chosen[k] = 0;
  };
  recurse(recurse, 0);
  return out;
}

RotationPoset build_rotation_poset(const Instance& clone_inst,
                                   const std::function<Rational(int s, int i)>& weight) {
  RotationBuilder builder(clone_inst);
  builder.run();
  RotationPoset poset = std::move(builder.poset);
  for (auto& rho : poset.rotations) {
    Rational delta = 0;
    for (size_t k = 0; k < rho.moves.size(); ++k) {
      auto [s, old_seat] = rho.moves[k];
      int new_seat = rho.moves[(k + 1) % rho.moves.size()].second;
      delta += weight(s, new_seat) - weight(s, old_seat);
    }
    rho.weight_delta = delta;
  }
  for (int s = 0; s < clone_inst.n_students(); ++s)
    if (poset.base.matched(s)) poset.base_weight += weight(s, poset.base(s));
  return poset;
}

namespace {

// Dinic max flow over exact big integers.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : adj_(n) {}

  void add_edge(int from, int to, BigInt cap) {
    adj_[from].push_back({to, std::move(cap), static_cast<int>(adj_[to].size())});
    adj_[to].push_back({from, 0, static_cast<int>(adj_[from].size()) - 1});
  }

  BigInt max_flow(int source, int sink) {
    BigInt flow = 0;
    while (bfs(source, sink)) {
      iter_.assign(adj_.size(), 0);
      while (true) {
        BigInt pushed = dfs(source, sink, BigInt(-1));
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<char> reachable(int source) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : adj_[v])
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    BigInt cap;
    int rev;
  };

  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::vector<int> queue{source};
    level_[source] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (const auto& e : adj_[v])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          queue.push_back(e.to);
        }
    }
    return level_[sink] >= 0;
  }

  BigInt dfs(int v, int sink, BigInt limit) {
    if (v == sink) return limit;
    for (int& k = iter_[v]; k < static_cast<int>(adj_[v].size()); ++k) {
      Edge& e = adj_[v][k];
      if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
      BigInt next_limit = (limit < 0 || e.cap < limit) ? e.cap : limit;
      BigInt pushed = dfs(e.to, sink, next_limit);
      if (pushed > 0) {
        e.cap -= pushed;
        adj_[e.to][e.rev].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// Minimum-weight predecessor-closed subset of the rotation poset via
// project selection; among optimal closures returns the minimum one (the
// source-reachable side of the canonical min cut).
std::pair<std::vector<char>, Rational> min_closure(const RotationPoset& poset) {
  const int n = static_cast<int>(poset.rotations.size());
  if (n == 0) return {{}, Rational(0)};
  BigInt denom = 1;
  for (const auto& rho : poset.rotations)
    denom = boost::multiprecision::lcm(denom, denominator(rho.weight_delta));
  std::vector<BigInt> profit(n);  // scaled -delta
  BigInt inf = 1;
  for (int k = 0; k < n; ++k) {
    profit[k] = -numerator(poset.rotations[k].weight_delta) *
                (denom / denominator(poset.rotations[k].weight_delta));
    inf += boost::multiprecision::abs(profit[k]);
  }

  const int source = n, sink = n + 1;
  FlowNetwork net(n + 2);
  for (int k = 0; k < n; ++k) {
    if (profit[k] > 0) net.add_edge(source, k, profit[k]);
    if (profit[k] < 0) net.add_edge(k, sink, -profit[k]);
    for (int p : poset.predecessors[k]) net.add_edge(k, p, inf);
  }
  BigInt flow = net.max_flow(source, sink);
  auto side = net.reachable(source);
  std::vector<char> chosen(n, 0);
  for (int k = 0; k < n; ++k) chosen[k] = side[k];
  return {chosen, Rational(flow, denom)};
}

}  // namespace

MinWeightResult min_weight_stable_matching(const Instance& inst, const EdgeWeights& weights) {
  CloneResult cloned = clone_reduction(inst);
  auto lifted = [&](int s, int seat) { return weights.at(s, cloned.seat_institution[seat]); };
  RotationPoset poset = build_rotation_poset(cloned.clone, lifted);
  auto [chosen, cut_value] = min_closure(poset);

  MinWeightResult result;
  result.rotation_count = static_cast<int>(poset.rotations.size());
  result.cut_value = cut_value;
  result.eliminated = static_cast<int>(std::count(chosen.begin(), chosen.end(), 1));
  result.matching = cloned.project(poset.apply(chosen));
  for (int s = 0; s < inst.n_students(); ++s)
    if (result.matching.matched(s)) result.weight += weights.at(s, result.matching(s));
  return result;
}

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::vector<Rational> per_institution_values(const Instance& inst, const Objective& g,
                                             const Matching& m) {
  auto held = institution_assignments(inst, m);
  std::vector<Rational> values;
  values.reserve(inst.n_institutions());
  for (int i = 0; i < inst.n_institutions(); ++i) values.push_back(g(i, held[i]));
  return values;
}

std::vector<Rational> catalog_values(const Instance& inst, const StableSetCatalog& catalog,
                                     const Objective& g) {
  std::vector<Rational> values;
  for (int i = 0; i < inst.n_institutions(); ++i)
    for (const auto& entry : catalog.sets[i]) values.push_back(g(i, entry.members));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// Ascending binary-threshold scan; returns the least catalog value R such
// that every institution can stay at or under R, plus the witness matching
// and the number of scans.
std::tuple<Rational, MinWeightResult, int> egalitarian_scan(const Instance& inst,
                                                            const StableSetCatalog& catalog,
                                                            const Objective& g) {
  auto thresholds = catalog_values(inst, catalog, g);
  for (size_t l = 0; l < thresholds.size(); ++l) {
    Objective binary = threshold_objective(g, thresholds[l]);
    EdgeWeights weights = linearize(inst, catalog, binary);
    MinWeightResult mw = min_weight_stable_matching(inst, weights);
    if (total_objective(inst, binary, mw.matching) == 0)
      return {thresholds[l], std::move(mw), static_cast<int>(l) + 1};
  }
  throw std::logic_error("the largest catalog value always admits a zero-threshold matching");
}

}  // namespace

SolveReport solve_utilitarian(const Instance& inst, const Objective& g) {
  Stopwatch clock;
  StableSetCatalog catalog = enumerate_stable_sets(inst, AgentSide::Institutions);
  EdgeWeights weights = linearize(inst, catalog, g);
  MinWeightResult mw = min_weight_stable_matching(inst, weights);

  SolveReport report;
  report.matching = std::move(mw.matching);
  report.institution_values = per_institution_values(inst, g, report.matching);
  for (const auto& v : report.institution_values) report.value += v;
  report.weights = std::move(weights);
  report.rotation_count = mw.rotation_count;
  report.cut_value = mw.cut_value;
  report.wall_seconds = clock.seconds();
  return report;
}

SolveReport solve_egalitarian(const Instance& inst, const Objective& g) {
  Stopwatch clock;
  StableSetCatalog catalog = enumerate_stable_sets(inst, AgentSide::Institutions);
  auto [min_max, mw, scans] = egalitarian_scan(inst, catalog, g);

  SolveReport report;
  report.matching = std::move(mw.matching);
  report.institution_values = per_institution_values(inst, g, report.matching);
  report.value = min_max;
  report.rotation_count = mw.rotation_count;
  report.cut_value = mw.cut_value;
  report.threshold_iterations = scans;
  report.wall_seconds = clock.seconds();
  return report;
}

SolveReport solve_two_sided(const Instance& inst, const Objective& g, const StudentCosts& h) {
  Stopwatch clock;
  StableSetCatalog catalog = enumerate_stable_sets(inst, AgentSide::Institutions);
  EdgeWeights weights = linearize(inst, catalog, g);
  for (const auto& [edge, cost] : h.edge) {
    auto [s, i] = edge;
    if (s < 0 || s >= inst.n_students() || !inst.acceptable(s, i))
      throw std::invalid_argument("student cost on non-acceptability edge");
    if (cost != 0) weights.weight[{s, i}] += cost;
  }
  // The matched student set is invariant across stable matchings, so the
  // unmatched costs are a constant.
  Matching m0 = run_da(inst);
  for (int s = 0; s < inst.n_students(); ++s)
    if (!m0.matched(s)) weights.constant_offset += h.unmatched_cost(s);

  MinWeightResult mw = min_weight_stable_matching(inst, weights);
  SolveReport report;
  report.matching = std::move(mw.matching);
  report.institution_values = per_institution_values(inst, g, report.matching);
  report.value = two_sided_objective(inst, g, h, report.matching);
  report.weights = std::move(weights);
  report.rotation_count = mw.rotation_count;
  report.cut_value = mw.cut_value;
  report.wall_seconds = clock.seconds();
  return report;
}

SolveReport solve_student_optimal_among_optima(const Instance& inst, const Objective& g,
                                               SolveMode mode) {
  Stopwatch clock;
  StableSetCatalog catalog = enumerate_stable_sets(inst, AgentSide::Institutions);
  auto rank_cost = [&inst](int s, int i) { return Rational(inst.srank(s, i) + 1); };

  SolveReport report;
  Objective primary = g;
  if (mode == SolveMode::Egalitarian) {
    auto [min_max, mw, scans] = egalitarian_scan(inst, catalog, g);
    (void)mw;
    report.value = min_max;
    report.threshold_iterations = scans;
    primary = threshold_objective(g, min_max);
  }

  Objective combined = lexicographic_combine(inst, primary, rank_cost, catalog);
  EdgeWeights weights = linearize(inst, catalog, combined);
  MinWeightResult mw = min_weight_stable_matching(inst, weights);
  report.matching = std::move(mw.matching);
  report.institution_values = per_institution_values(inst, g, report.matching);
  if (mode == SolveMode::Utilitarian)
    for (const auto& v : report.institution_values) report.value += v;
  report.weights = std::move(weights);
  report.rotation_count = mw.rotation_count;
  report.cut_value = mw.cut_value;
  report.wall_seconds = clock.seconds();
  return report;
}

}  // namespace stableopt
