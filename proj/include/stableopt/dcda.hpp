#pragma once

#include <optional>
#include <vector>

#include "stableopt/da.hpp"
#include "stableopt/matching.hpp"

namespace stableopt {

// The cap system a stable matching must satisfy to be maximally diverse:
// for every declared bound (i,c), at most u_i^c category members and at most
// |M_0(i)| - l_i^c non-members. Limits can be negative (lower bound above
// the invariant fill); callers treat a negative limit as an immediate
// infeasibility witness.
struct UpperBoundSystem {
  struct Cap {
    int institution = -1;
    int category = -1;
    bool non_category = false;  // true for the u_i^{!=c} cap
    int limit = 0;
  };
  std::vector<Cap> caps;           // instance order, then declared-bound order
  std::vector<int> baseline_fill;  // |M_0(i)|
};

UpperBoundSystem transform_bounds(const Instance& inst, const Matching& m0);

struct DcDaWitness {
  enum class Kind {
    LowerBoundExceedsFill,        // l_i^c > |M_0(i)|
    UnfilledInstitutionViolation,  // an institution unfilled in M_0 breaks a cap
    DisplacedInvariantStudent,
    ProposalToUnfilled
  };
  Kind kind;
  int institution = -1;
  int category = -1;
  int student = -1;
};

struct CategoryViolation {
  int institution = -1;
  int category = -1;
  int lower_shortfall = 0;  // (l - eta)^+
  int upper_excess = 0;     // (eta - u)^+
};

struct DcDaReport {
  int iterations = 0;
  long long forbidden_edges = 0;
  long long proposals = 0;
  std::optional<DcDaWitness> witness;
  // Violations of the original declared bounds at the final matching.
  std::vector<CategoryViolation> final_violations;
  std::vector<Matching> intermediates;  // only when requested
};

struct DcDaResult {
  bool solved = false;
  Matching matching;  // meaningful when solved
  DcDaReport report;
};

// DC-DA: the student-optimal stable matching satisfying every diversity cap
// relaxed by delta, or NoSolution with the detector that fired. Requires
// one_to_all counting. Total proposals over a run are bounded by |E|.
DcDaResult dc_da(const Instance& inst, int delta = 0, bool record_intermediates = false);

struct EgalitarianDcDaResult {
  int delta_star = 0;
  Matching matching;
  DcDaReport report;  // report of the successful run
};

// Smallest delta for which dc_da finds a solution, with that solution:
// the student-optimal stable matching among those minimizing the maximum
// bound violation.
EgalitarianDcDaResult egalitarian_dcda(const Instance& inst);

// Violations of the declared bounds at m, institution by institution.
std::vector<CategoryViolation> bound_violations(const Instance& inst, const Matching& m);

}  // namespace stableopt
