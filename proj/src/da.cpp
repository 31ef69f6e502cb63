#include "stableopt/da.hpp"

#include <limits>
#include <stdexcept>

namespace stableopt {

DaState::DaState(const Instance& inst, TraceSink trace)
    : inst_(&inst),
      trace_(std::move(trace)),
      matching_(inst.n_students()),
      initial_(inst.n_students()),
      held_(inst.n_institutions()),
      cursor_(inst.n_students(), 0),
      ban_rank_(inst.n_institutions(), std::numeric_limits<int>::max()),
      queued_(inst.n_students(), 0),
      in_r_(inst.n_institutions(), 0),
      in_s_(inst.n_students(), 0) {
  if (!inst.validated()) throw std::invalid_argument("DaState requires a validated instance");
  queue_.reserve(inst.n_students());
  for (int s = 0; s < inst.n_students(); ++s) {
    queue_.push_back(s);
    queued_[s] = 1;
  }
  DaInfeasibility unused;
  run_queue(&unused);  // detectors are off before the baseline is frozen

  initial_ = matching_;
  for (int i = 0; i < inst.n_institutions(); ++i)
    in_r_[i] = static_cast<int>(held_[i].size()) < inst.capacity[i];
  for (int s = 0; s < inst.n_students(); ++s) in_s_[s] = !initial_.matched(s);
  initialized_ = true;
}

void DaState::apply_ban(int i, int rank) {
  if (rank >= ban_rank_[i]) return;
  ban_rank_[i] = rank;
  trace(TraceEvent::Kind::Ban, -1, i);
  auto& held = held_[i];
  for (size_t k = 0; k < held.size();) {
    int s = held[k];
    if (inst_->irank(i, s) >= rank) {
      held[k] = held.back();
      held.pop_back();
      matching_.partner[s] = -1;
      if (!queued_[s]) {
        queue_.push_back(s);
        queued_[s] = 1;
      }
      trace(TraceEvent::Kind::Evict, s, i);
    } else {
      ++k;
    }
  }
}

void DaState::break_edge(int s, int i) {
  trace(TraceEvent::Kind::Break, s, i);
  // The ban covers s herself, so the eviction sweep removes her from i.
  apply_ban(i, inst_->irank(i, s));
}

bool DaState::run_queue(DaInfeasibility* out) {
  const Instance& inst = *inst_;
  while (queue_head_ < queue_.size()) {
    int s = queue_[queue_head_++];
    queued_[s] = 0;
    if (matching_.matched(s)) continue;
    const auto& prefs = inst.student_prefs[s];
    bool settled = false;
    while (cursor_[s] < static_cast<int>(prefs.size())) {
      int i = prefs[cursor_[s]++];
      int rank = inst.irank(i, s);
      if (rank >= ban_rank_[i]) {
        trace(TraceEvent::Kind::Skip, s, i);
        continue;
      }
      bool free_seat = static_cast<int>(held_[i].size()) < inst.capacity[i];
      int worst = -1, worst_rank = -1;
      if (!free_seat) {
        for (int held : held_[i]) {
          int hr = inst.irank(i, held);
          if (hr > worst_rank) {
            worst_rank = hr;
            worst = held;
          }
        }
      }
      bool would_accept = free_seat || rank < worst_rank;
      if (forbidden(s, i)) {
        if (!would_accept) {
          trace(TraceEvent::Kind::Skip, s, i);
          continue;
        }
        // The edge would become matched; treat it as an immediate
        // BreakMarriage so it can never block later.
        ++proposals_;
        trace(TraceEvent::Kind::Propose, s, i);
        if (initialized_ && in_r_[i] && initial_(s) != i) {
          *out = {DaInfeasibility::Kind::ProposalToUnfilled, s, i};
          return false;
        }
        apply_ban(i, rank);
        continue;
      }
      ++proposals_;
      trace(TraceEvent::Kind::Propose, s, i);
      if (initialized_ && in_r_[i] && initial_(s) != i) {
        *out = {DaInfeasibility::Kind::ProposalToUnfilled, s, i};
        return false;
      }
      if (would_accept) {
        if (!free_seat) {
          auto& held = held_[i];
          for (size_t k = 0; k < held.size(); ++k) {
            if (held[k] == worst) {
              held[k] = held.back();
              held.pop_back();
              break;
            }
          }
          matching_.partner[worst] = -1;
          if (!queued_[worst]) {
            queue_.push_back(worst);
            queued_[worst] = 1;
          }
          trace(TraceEvent::Kind::Reject, worst, i);
        }
        held_[i].push_back(s);
        matching_.partner[s] = i;
        trace(TraceEvent::Kind::Accept, s, i);
        settled = true;
        break;
      }
      trace(TraceEvent::Kind::Reject, s, i);
    }
    if (!settled && initialized_ && !in_s_[s]) {
      *out = {DaInfeasibility::Kind::DisplacedInvariantStudent, s, -1};
      return false;
    }
  }
  return true;
}

DaOutcome DaState::forbid_and_resume(std::span<const std::pair<int, int>> edges) {
  if (dead_) throw std::logic_error("forbid_and_resume called after an infeasible outcome");
  const int ni = inst_->n_institutions();
  for (auto [s, i] : edges) {
    if (s < 0 || s >= inst_->n_students() || i < 0 || i >= ni || !inst_->acceptable(s, i))
      throw std::invalid_argument("forbidden edge is not an acceptability edge");
    forbidden_.insert(static_cast<long long>(s) * ni + i);
  }
  for (auto [s, i] : edges)
    if (matching_(s) == i) break_edge(s, i);

  DaOutcome outcome;
  if (run_queue(&outcome.infeasibility)) {
    outcome.stable = true;
    outcome.matching = matching_;
  } else {
    dead_ = true;
  }
  return outcome;
}

Matching run_da(const Instance& inst) { return DaState(inst).matching(); }

}  // namespace stableopt
