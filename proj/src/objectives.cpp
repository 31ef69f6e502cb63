#include "stableopt/objectives.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace stableopt {

Rational eval_one_to_all(const Instance& inst, int i, const std::vector<int>& students) {
  long long total = 0;
  for (const auto& db : inst.bounds[i]) {
    long long eta = 0;
    for (int s : students) eta += inst.in_category(s, db.category);
    total += std::max(0LL, db.bound.lower - eta) + std::max(0LL, eta - db.bound.upper);
  }
  return Rational(total);
}

Rational eval_one_to_all_max(const Instance& inst, int i, const std::vector<int>& students) {
  long long worst = 0;
  for (const auto& db : inst.bounds[i]) {
    long long eta = 0;
    for (int s : students) eta += inst.in_category(s, db.category);
    worst = std::max({worst, db.bound.lower - eta, eta - db.bound.upper});
  }
  return Rational(worst);
}

namespace {

// Minimum-cost assignment matching every left node, by shortest augmenting
// paths (Bellman-Ford; the graphs here are tiny). options[l] lists
// (right, cost) edges.
long long min_cost_full_left_matching(int n_left, int n_right,
                                      const std::vector<std::vector<std::pair<int, long long>>>& options) {
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<int> right_match(n_right, -1);
  std::vector<std::vector<long long>> cost(n_left, std::vector<long long>(n_right, inf));
  for (int l = 0; l < n_left; ++l)
    for (auto [r, c] : options[l]) cost[l][r] = std::min(cost[l][r], c);

  long long total = 0;
  for (int start = 0; start < n_left; ++start) {
    std::vector<long long> dist(n_left, inf);
    std::vector<long long> dist_right(n_right, inf);
    std::vector<int> parent_right(n_right, -1);
    dist[start] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int l = 0; l < n_left; ++l) {
        if (dist[l] >= inf) continue;
        for (auto [r, c] : options[l]) {
          long long through = dist[l] + c;
          if (through < dist_right[r]) {
            dist_right[r] = through;
            parent_right[r] = l;
            int owner = right_match[r];
            if (owner >= 0 && through - cost[owner][r] < dist[owner]) {
              dist[owner] = through - cost[owner][r];
              changed = true;
            }
          }
        }
      }
    }
    int best_free = -1;
    for (int r = 0; r < n_right; ++r) {
      if (right_match[r] >= 0 || dist_right[r] >= inf) continue;
      if (best_free < 0 || dist_right[r] < dist_right[best_free]) best_free = r;
    }
    if (best_free < 0) throw std::logic_error("slot graph admits no complete matching");
    total += dist_right[best_free];
    // Flip matches along the alternating path back to the start.
    int r = best_free;
    while (true) {
      int l = parent_right[r];
      int prev = -1;
      for (int rr = 0; rr < n_right; ++rr)
        if (right_match[rr] == l) prev = rr;
      right_match[r] = l;
      if (l == start) break;
      r = prev;
    }
  }
  return total;
}

struct SlotGraph {
  int n_left = 0;
  int n_right = 0;
  int categorized = 0;
  long long lower_sum = 0;
  std::vector<std::vector<std::pair<int, long long>>> weight_options;  // (right, weight)

  long long max_weight() const {
    if (n_left == 0) return 0;
    std::vector<std::vector<std::pair<int, long long>>> costs(n_left);
    for (int l = 0; l < n_left; ++l)
      for (auto [r, w] : weight_options[l]) costs[l].emplace_back(r, 2 - w);
    return 2LL * n_left - min_cost_full_left_matching(n_left, n_right, costs);
  }
};

// The auxiliary graph H: per category a lower class (capacity l, weight 2)
// and an upper class (capacity u-l, weight 1), one slack class (weight 0)
// connected to everyone. Capacities are clamped at |S_i| since unit slots
// beyond that can never be used. Categories with no declared bound act as
// l=0, u=infinity.
SlotGraph build_slot_graph(const Instance& inst, int i, const std::vector<int>& students) {
  SlotGraph g;
  g.n_left = static_cast<int>(students.size());
  const int clamp = g.n_left;

  std::vector<int> relevant;
  std::vector<std::pair<long long, long long>> class_bounds;  // (lower, upper)
  auto intern = [&](int c) {
    for (size_t k = 0; k < relevant.size(); ++k)
      if (relevant[k] == c) return static_cast<int>(k);
    relevant.push_back(c);
    class_bounds.emplace_back(0, std::numeric_limits<long long>::max());
    return static_cast<int>(relevant.size()) - 1;
  };
  for (const auto& db : inst.bounds[i]) {
    int k = intern(db.category);
    class_bounds[k] = {db.bound.lower, db.bound.upper};
    g.lower_sum += db.bound.lower;
  }
  for (int s : students)
    for (int c : inst.student_categories[s]) intern(c);

  std::vector<int> lower_start(relevant.size()), lower_count(relevant.size());
  std::vector<int> upper_start(relevant.size()), upper_count(relevant.size());
  int next = 0;
  for (size_t k = 0; k < relevant.size(); ++k) {
    lower_count[k] = static_cast<int>(std::min<long long>(class_bounds[k].first, clamp));
    lower_start[k] = next;
    next += lower_count[k];
    upper_count[k] =
        static_cast<int>(std::min<long long>(class_bounds[k].second - class_bounds[k].first, clamp));
    upper_start[k] = next;
    next += upper_count[k];
  }
  const int slack_start = next;
  next += clamp;
  g.n_right = next;

  g.weight_options.resize(g.n_left);
  for (int l = 0; l < g.n_left; ++l) {
    int s = students[l];
    if (!inst.student_categories[s].empty()) ++g.categorized;
    for (int c : inst.student_categories[s]) {
      int k = intern(c);  // already present; lookup only
      for (int r = 0; r < lower_count[k]; ++r) g.weight_options[l].emplace_back(lower_start[k] + r, 2);
      for (int r = 0; r < upper_count[k]; ++r) g.weight_options[l].emplace_back(upper_start[k] + r, 1);
    }
    for (int r = 0; r < clamp; ++r) g.weight_options[l].emplace_back(slack_start + r, 0);
  }
  return g;
}

}  // namespace

long long gadget_max_weight(const Instance& inst, int i, const std::vector<int>& students) {
  return build_slot_graph(inst, i, students).max_weight();
}

Rational eval_one_to_one(const Instance& inst, int i, const std::vector<int>& students) {
  SlotGraph g = build_slot_graph(inst, i, students);
  return Rational(g.categorized + g.lower_sum - g.max_weight());
}

Rational eval_siblings(const Instance& inst, int i, const std::vector<int>& students) {
  (void)i;
  if (inst.families.empty()) return 0;
  std::vector<char> present(inst.n_students(), 0);
  for (int s : students) present[s] = 1;
  long long kept = 0;
  for (const auto& family : inst.families) {
    bool all = !family.empty();
    for (int s : family) all = all && present[s];
    kept += all;
  }
  return Rational(-kept);
}

Objective make_objective(const Instance& inst, const std::string& name) {
  const Instance* p = &inst;
  if (name == "one2all")
    return {name, [p](int i, const std::vector<int>& s) { return eval_one_to_all(*p, i, s); }};
  if (name == "one2all-max")
    return {name, [p](int i, const std::vector<int>& s) { return eval_one_to_all_max(*p, i, s); }};
  if (name == "one2one")
    return {name, [p](int i, const std::vector<int>& s) { return eval_one_to_one(*p, i, s); }};
  if (name == "siblings")
    return {name, [p](int i, const std::vector<int>& s) { return eval_siblings(*p, i, s); }};
  throw std::invalid_argument("unknown objective '" + name + "'");
}

Objective make_weighted_mix(const Instance& inst,
                            const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty objective mix");
  std::vector<std::pair<Objective, Rational>> parts;
  std::string name = "mix:";
  for (const auto& [term_name, coeff] : terms) {
    parts.emplace_back(make_objective(inst, term_name), coeff);
    if (parts.size() > 1) name += ",";
    name += term_name + "=" + rational_to_string(coeff);
  }
  return {name, [parts](int i, const std::vector<int>& s) {
            Rational total = 0;
            for (const auto& [g, coeff] : parts) total += coeff * g(i, s);
            return total;
          }};
}

Objective threshold_objective(const Objective& g, const Rational& cutoff) {
  return {"threshold(" + g.name + ")", [g, cutoff](int i, const std::vector<int>& s) {
            return g(i, s) <= cutoff ? Rational(0) : Rational(1);
          }};
}

Objective lexicographic_combine(const Instance& inst, const Objective& g,
                                const std::function<Rational(int s, int i)>& z,
                                const StableSetCatalog& catalog) {
  // Smallest nonzero gap between g values within any institution's catalog,
  // capped at 1/D for the common denominator D of all catalog values: sums
  // over institutions can differ by less than any single within-institution
  // gap, but never by less than 1/D.
  std::optional<Rational> gap;
  BigInt denom = 1;
  for (int i = 0; i < inst.n_institutions(); ++i) {
    std::vector<Rational> values;
    for (const auto& entry : catalog.sets[i]) {
      values.push_back(g(i, entry.members));
      denom = boost::multiprecision::lcm(denom, denominator(values.back()));
    }
    std::sort(values.begin(), values.end());
    for (size_t k = 1; k < values.size(); ++k) {
      if (values[k] == values[k - 1]) continue;
      Rational diff = values[k] - values[k - 1];
      if (!gap || diff < *gap) gap = diff;
    }
  }
  if (gap) gap = std::min(*gap, Rational(BigInt(1), denom));

  Rational max_z = 0;
  for (int s = 0; s < inst.n_students(); ++s)
    for (int i : inst.student_prefs[s]) max_z = std::max(max_z, rational_abs(z(s, i)));

  // With no gap every stable matching scores the same g total; only z decides.
  Rational scale = 0;
  if (gap) scale = (max_z == 0 ? Rational(1) : max_z) * Rational(inst.edge_count() + 1) / *gap;

  return {"lex(" + g.name + ")", [g, z, scale](int i, const std::vector<int>& s) {
            Rational value = scale == 0 ? Rational(0) : Rational(g(i, s) * scale);
            for (int member : s) value += z(member, i);
            return value;
          }};
}

Rational total_objective(const Instance& inst, const Objective& g, const Matching& m) {
  auto held = institution_assignments(inst, m);
  Rational total = 0;
  for (int i = 0; i < inst.n_institutions(); ++i) total += g(i, held[i]);
  return total;
}

Rational max_objective(const Instance& inst, const Objective& g, const Matching& m) {
  auto held = institution_assignments(inst, m);
  Rational worst = g(0, held[0]);
  for (int i = 1; i < inst.n_institutions(); ++i) worst = std::max(worst, g(i, held[i]));
  return worst;
}

Rational two_sided_objective(const Instance& inst, const Objective& g, const StudentCosts& h,
                             const Matching& m) {
  Rational total = total_objective(inst, g, m);
  for (int s = 0; s < inst.n_students(); ++s)
    total += m.matched(s) ? h.edge_cost(s, m(s)) : h.unmatched_cost(s);
  return total;
}

}  // namespace stableopt
