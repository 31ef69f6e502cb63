#pragma once

#include <utility>
#include <vector>

#include "stableopt/instance.hpp"

namespace stableopt {

// A matching, stored as the student -> institution assignment. Unmatched is
// the absence of an edge (-1), never a sentinel partner.
struct Matching {
  std::vector<int> partner;  // per student; -1 unmatched

  explicit Matching(int n_students = 0) : partner(n_students, -1) {}

  int operator()(int s) const { return partner[s]; }
  bool matched(int s) const { return partner[s] >= 0; }
  int matched_count() const;

  bool operator==(const Matching& other) const = default;
  // Lexicographic over the partner vector; canonical order for enumerations.
  bool operator<(const Matching& other) const { return partner < other.partner; }
};

struct BlockingReport {
  std::vector<std::string> malformed;                 // capacity/acceptability faults
  std::vector<std::pair<int, int>> blocking_edges;    // (student, institution)
  bool stable() const { return malformed.empty() && blocking_edges.empty(); }
};

// All blocking edges of M: (s,i) not in M with i preferred by s to M(s) and
// i either undersubscribed or holding a student it likes less than s.
// Malformed matchings (capacity or acceptability violations) are reported
// distinctly and not scanned for blocking edges.
BlockingReport is_stable(const Instance& inst, const Matching& m);

// Students per institution, each list sorted by the institution's priority
// (best first).
std::vector<std::vector<int>> institution_assignments(const Instance& inst, const Matching& m);

std::vector<int> institution_fill(const Instance& inst, const Matching& m);

// Lattice operations on stable matchings: join gives every student the more
// preferred of her two partners, meet the less preferred (missing partner
// ranks below any acceptable one). Throws std::invalid_argument when either
// input is not stable.
Matching join_matchings(const Instance& inst, const Matching& a, const Matching& b);
Matching meet_matchings(const Instance& inst, const Matching& a, const Matching& b);

}  // namespace stableopt
