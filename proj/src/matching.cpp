#include "stableopt/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stableopt {

int Matching::matched_count() const {
  int n = 0;
  for (int p : partner) n += p >= 0;
  return n;
}

std::vector<int> institution_fill(const Instance& inst, const Matching& m) {
  std::vector<int> fill(inst.n_institutions(), 0);
  for (int s = 0; s < inst.n_students(); ++s)
    if (m.matched(s)) ++fill[m(s)];
  return fill;
}

std::vector<std::vector<int>> institution_assignments(const Instance& inst, const Matching& m) {
  std::vector<std::vector<int>> held(inst.n_institutions());
  for (int s = 0; s < inst.n_students(); ++s)
    if (m.matched(s)) held[m(s)].push_back(s);
  for (int i = 0; i < inst.n_institutions(); ++i)
    std::sort(held[i].begin(), held[i].end(),
              [&](int a, int b) { return inst.irank(i, a) < inst.irank(i, b); });
  return held;
}

BlockingReport is_stable(const Instance& inst, const Matching& m) {
  BlockingReport report;
  if (m.partner.size() != static_cast<size_t>(inst.n_students())) {
    report.malformed.push_back("assignment vector size mismatch");
    return report;
  }
  for (int s = 0; s < inst.n_students(); ++s) {
    int i = m(s);
    if (i < 0) continue;
    if (i >= inst.n_institutions() || !inst.acceptable(s, i))
      report.malformed.push_back("edge (" + inst.student_ids[s] + ", " +
                                 (i >= 0 && i < inst.n_institutions() ? inst.institution_ids[i] : "?") +
                                 ") is not an acceptability edge");
  }
  auto fill = institution_fill(inst, m);
  for (int i = 0; i < inst.n_institutions(); ++i)
    if (fill[i] > inst.capacity[i])
      report.malformed.push_back("institution '" + inst.institution_ids[i] + "' over capacity");
  if (!report.malformed.empty()) return report;

  // Worst held student per institution, by priority rank.
  std::vector<int> worst_rank(inst.n_institutions(), -1);
  for (int s = 0; s < inst.n_students(); ++s)
    if (m.matched(s)) worst_rank[m(s)] = std::max(worst_rank[m(s)], inst.irank(m(s), s));

  for (int s = 0; s < inst.n_students(); ++s) {
    int current = m(s);
    int current_rank = current >= 0 ? inst.srank(s, current) : -1;
    for (size_t r = 0; r < inst.student_prefs[s].size(); ++r) {
      int i = inst.student_prefs[s][r];
      if (current >= 0 && static_cast<int>(r) >= current_rank) break;  // not preferred to M(s)
      if (fill[i] < inst.capacity[i] || inst.irank(i, s) < worst_rank[i])
        report.blocking_edges.emplace_back(s, i);
    }
  }
  return report;
}

namespace {

Matching lattice_op(const Instance& inst, const Matching& a, const Matching& b, bool take_better) {
  if (!is_stable(inst, a).stable() || !is_stable(inst, b).stable())
    throw std::invalid_argument("lattice operations are defined on stable matchings only");
  Matching out(inst.n_students());
  for (int s = 0; s < inst.n_students(); ++s) {
    int pa = a(s), pb = b(s);
    int ra = pa >= 0 ? inst.srank(s, pa) : std::numeric_limits<int>::max();
    int rb = pb >= 0 ? inst.srank(s, pb) : std::numeric_limits<int>::max();
    bool pick_a = take_better ? ra <= rb : ra >= rb;
    out.partner[s] = pick_a ? pa : pb;
  }
  return out;
}

}  // namespace

Matching join_matchings(const Instance& inst, const Matching& a, const Matching& b) {
  return lattice_op(inst, a, b, true);
}

Matching meet_matchings(const Instance& inst, const Matching& a, const Matching& b) {
  return lattice_op(inst, a, b, false);
}

}  // namespace stableopt
