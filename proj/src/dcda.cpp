#include "stableopt/dcda.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace stableopt {

UpperBoundSystem transform_bounds(const Instance& inst, const Matching& m0) {
  UpperBoundSystem system;
  system.baseline_fill = institution_fill(inst, m0);
  for (int i = 0; i < inst.n_institutions(); ++i) {
    for (const auto& db : inst.bounds[i]) {
      system.caps.push_back({i, db.category, false, db.bound.upper});
      // With l = 0 the non-category cap equals the fill and can never bind.
      if (db.bound.lower > 0)
        system.caps.push_back({i, db.category, true, system.baseline_fill[i] - db.bound.lower});
    }
  }
  return system;
}

std::vector<CategoryViolation> bound_violations(const Instance& inst, const Matching& m) {
  std::vector<CategoryViolation> out;
  auto held = institution_assignments(inst, m);
  for (int i = 0; i < inst.n_institutions(); ++i) {
    for (const auto& db : inst.bounds[i]) {
      int eta = 0;
      for (int s : held[i]) eta += inst.in_category(s, db.category);
      CategoryViolation v;
      v.institution = i;
      v.category = db.category;
      v.lower_shortfall = std::max(0, db.bound.lower - eta);
      v.upper_excess = std::max(0, eta - db.bound.upper);
      out.push_back(v);
    }
  }
  return out;
}

namespace {

// Per-cap member counts and per-institution held sets (ordered by priority
// rank), maintained incrementally from the engine's trace events.
class CapTracker {
 public:
  CapTracker(const Instance& inst, const UpperBoundSystem& system) : inst_(inst), system_(system) {
    counts_.assign(system.caps.size(), 0);
    held_.resize(inst.n_institutions());
    cap_index_.resize(inst.n_institutions());
    for (size_t k = 0; k < system.caps.size(); ++k) cap_index_[system.caps[k].institution].push_back(k);
  }

  void on_event(const TraceEvent& ev) {
    switch (ev.kind) {
      case TraceEvent::Kind::Accept:
        update(ev.student, ev.institution, +1);
        break;
      case TraceEvent::Kind::Reject:
      case TraceEvent::Kind::Evict:
        // Reject events cover both a declined proposal (student not held)
        // and a displacement; only held students need removal.
        if (held_[ev.institution].count({inst_.irank(ev.institution, ev.student), ev.student}))
          update(ev.student, ev.institution, -1);
        break;
      default:
        break;
    }
  }

  int count(size_t k) const { return counts_[k]; }

  // Index of the first violated cap (given relaxation delta), or -1.
  int first_violation(int delta) const {
    for (size_t k = 0; k < system_.caps.size(); ++k)
      if (counts_[k] > system_.caps[k].limit + delta) return static_cast<int>(k);
    return -1;
  }

  // The least-preferred held student at the cap's institution that counts
  // against the cap.
  int worst_counted(const UpperBoundSystem::Cap& cap) const {
    const auto& held = held_[cap.institution];
    for (auto it = held.rbegin(); it != held.rend(); ++it) {
      bool member = inst_.in_category(it->second, cap.category);
      if (member != cap.non_category) return it->second;
    }
    return -1;
  }

 private:
  void update(int s, int i, int delta) {
    if (delta > 0)
      held_[i].insert({inst_.irank(i, s), s});
    else
      held_[i].erase({inst_.irank(i, s), s});
    for (int k : cap_index_[i]) {
      const auto& cap = system_.caps[k];
      bool member = inst_.in_category(s, cap.category);
      if (member != cap.non_category) counts_[k] += delta;
    }
  }

  const Instance& inst_;
  const UpperBoundSystem& system_;
  std::vector<int> counts_;
  std::vector<std::set<std::pair<int, int>>> held_;  // (rank, student)
  std::vector<std::vector<int>> cap_index_;
};

DcDaWitness witness_from(const DaInfeasibility& inf) {
  DcDaWitness w;
  w.student = inf.student;
  w.institution = inf.institution;
  w.kind = inf.kind == DaInfeasibility::Kind::ProposalToUnfilled
               ? DcDaWitness::Kind::ProposalToUnfilled
               : DcDaWitness::Kind::DisplacedInvariantStudent;
  return w;
}

}  // namespace

DcDaResult dc_da(const Instance& inst, int delta, bool record_intermediates) {
  if (!inst.validated()) throw std::invalid_argument("dc_da requires a validated instance");
  if (inst.counting_rule != CountingRule::OneToAll)
    throw std::invalid_argument("dc_da is defined for one_to_all counting");

  DcDaResult result;
  CapTracker* tracker_ptr = nullptr;
  DaState state(inst, [&tracker_ptr](const TraceEvent& ev) {
    if (tracker_ptr) tracker_ptr->on_event(ev);
  });

  UpperBoundSystem system = transform_bounds(inst, state.initial_matching());
  CapTracker tracker(inst, system);
  tracker_ptr = &tracker;
  // Replay M_0 into the tracker (events before this point were ignored).
  auto held0 = institution_assignments(inst, state.initial_matching());
  for (int i = 0; i < inst.n_institutions(); ++i)
    for (int s : held0[i]) tracker.on_event({TraceEvent::Kind::Accept, s, i});

  auto finish_report = [&](const Matching& m) {
    result.report.forbidden_edges = state.forbidden_count();
    result.report.proposals = state.proposal_count();
    result.report.final_violations = bound_violations(inst, m);
  };

  // A lower bound above the invariant fill can never be met.
  for (const auto& cap : system.caps) {
    if (cap.limit + delta < 0) {
      result.report.witness = DcDaWitness{DcDaWitness::Kind::LowerBoundExceedsFill, cap.institution,
                                          cap.category, -1};
      finish_report(state.initial_matching());
      return result;
    }
  }
  // Institutions unfilled in M_0 keep their assignment in every stable
  // matching; a cap violation there is final.
  for (size_t k = 0; k < system.caps.size(); ++k) {
    const auto& cap = system.caps[k];
    if (state.unfilled_in_initial()[cap.institution] && tracker.count(k) > cap.limit + delta) {
      result.report.witness = DcDaWitness{DcDaWitness::Kind::UnfilledInstitutionViolation,
                                          cap.institution, cap.category, -1};
      finish_report(state.initial_matching());
      return result;
    }
  }

  if (record_intermediates) result.report.intermediates.push_back(state.initial_matching());

  Matching current = state.initial_matching();
  while (true) {
    int k = tracker.first_violation(delta);
    if (k < 0) break;
    const auto& cap = system.caps[k];
    if (state.unfilled_in_initial()[cap.institution]) {
      result.report.witness = DcDaWitness{DcDaWitness::Kind::UnfilledInstitutionViolation,
                                          cap.institution, cap.category, -1};
      finish_report(current);
      return result;
    }
    int s_star = tracker.worst_counted(cap);
    // A violated cap always has a counted member in the current matching.
    if (s_star < 0) throw std::logic_error("violated cap with no counted student");

    // Forbid s* and every student the institution ranks below her, skipping
    // edges the engine has already banned.
    int i = cap.institution;
    int from = inst.irank(i, s_star);
    int until = std::min(state.ban_rank(i), static_cast<int>(inst.institution_prefs[i].size()));
    std::vector<std::pair<int, int>> edges;
    for (int r = from; r < until; ++r) edges.emplace_back(inst.institution_prefs[i][r], i);

    ++result.report.iterations;
    DaOutcome outcome = state.forbid_and_resume(edges);
    if (!outcome.stable) {
      result.report.witness = witness_from(outcome.infeasibility);
      finish_report(current);
      return result;
    }
    current = outcome.matching;
    if (record_intermediates) result.report.intermediates.push_back(current);
  }

  result.solved = true;
  result.matching = current;
  finish_report(current);
  return result;
}

EgalitarianDcDaResult egalitarian_dcda(const Instance& inst) {
  int delta_cap = 1;
  for (int q : inst.capacity) delta_cap = std::max(delta_cap, q);
  for (const auto& institution_bounds : inst.bounds)
    for (const auto& db : institution_bounds) delta_cap = std::max(delta_cap, db.bound.lower);

  for (int delta = 0; delta <= delta_cap; ++delta) {
    DcDaResult run = dc_da(inst, delta);
    if (run.solved) return {delta, run.matching, run.report};
  }
  throw std::logic_error("caps must become non-binding once delta reaches max capacity");
}

}  // namespace stableopt
