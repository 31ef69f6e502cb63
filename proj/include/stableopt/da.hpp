#pragma once

#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "stableopt/matching.hpp"

namespace stableopt {

struct TraceEvent {
  enum class Kind { Propose, Accept, Reject, Break, Ban, Evict, Skip };
  Kind kind;
  int student = -1;
  int institution = -1;
};
using TraceSink = std::function<void(const TraceEvent&)>;

struct DaInfeasibility {
  enum class Kind {
    DisplacedInvariantStudent,  // a student matched in M_0 exhausted her list
    ProposalToUnfilled,         // a proposal reached an institution unfilled in M_0
    Exhausted                   // any other exhaustion (not expected to occur)
  };
  Kind kind = Kind::Exhausted;
  int student = -1;
  int institution = -1;
};

struct DaOutcome {
  bool stable = false;
  Matching matching;            // meaningful when stable
  DaInfeasibility infeasibility;  // meaningful otherwise
};

// Student-proposing deferred acceptance with a growing forbidden edge set.
//
// Construction runs the unconstrained DA to the student-optimal matching M_0
// and freezes the Rural-Hospitals baselines: the institutions unfilled in
// M_0 and the students unmatched in M_0. forbid_and_resume then implements
// BreakMarriage: every newly forbidden edge that is currently matched is
// broken, the institution bans the broken student and everyone it ranks
// below her from proposing (and releases any held student in that banned
// region), and proposals resume skipping forbidden edges. Each student walks
// her preference list at most once over the whole lifetime of the state, so
// total proposals never exceed |E|.
class DaState {
 public:
  explicit DaState(const Instance& inst, TraceSink trace = {});

  // Adds edges to F and resumes to the next quiescent point. Returns the
  // student-optimal stable matching avoiding F, or an infeasibility witness
  // when one of the two detectors fires. Must not be called after an
  // infeasible outcome.
  DaOutcome forbid_and_resume(std::span<const std::pair<int, int>> edges);

  const Matching& matching() const { return matching_; }
  const Matching& initial_matching() const { return initial_; }
  const std::vector<char>& unfilled_in_initial() const { return in_r_; }    // R mask
  const std::vector<char>& unmatched_in_initial() const { return in_s_; }   // script-S mask
  bool dead() const { return dead_; }

  long long proposal_count() const { return proposals_; }
  long long forbidden_count() const { return static_cast<long long>(forbidden_.size()); }
  // Best banned priority rank at i (everything at or below is barred);
  // INT_MAX when nothing is banned.
  int ban_rank(int i) const { return ban_rank_[i]; }

 private:
  bool forbidden(int s, int i) const {
    return forbidden_.count(static_cast<long long>(s) * inst_->n_institutions() + i) != 0;
  }
  void break_edge(int s, int i);
  void apply_ban(int i, int rank);
  bool run_queue(DaInfeasibility* out);  // false when a detector fired
  void trace(TraceEvent::Kind k, int s, int i) {
    if (trace_) trace_(TraceEvent{k, s, i});
  }

  const Instance* inst_;
  TraceSink trace_;
  Matching matching_;
  Matching initial_;
  std::vector<std::vector<int>> held_;   // per institution, unordered
  std::vector<int> cursor_;              // next list position to consider
  std::vector<int> ban_rank_;
  std::unordered_set<long long> forbidden_;
  std::vector<int> queue_;
  size_t queue_head_ = 0;
  std::vector<char> queued_;
  std::vector<char> in_r_, in_s_;
  long long proposals_ = 0;
  bool dead_ = false;
  bool initialized_ = false;
};

// The student-optimal stable matching of a validated instance.
Matching run_da(const Instance& inst);

}  // namespace stableopt
