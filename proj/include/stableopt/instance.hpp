#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stableopt/rational.hpp"

namespace stableopt {

// How a multi-category student counts against diversity quotas.
enum class CountingRule { OneToAll, OneToOne };

struct Bound {
  int lower = 0;
  int upper = 0;
};

struct DeclaredBound {
  int category = -1;
  Bound bound;
};

// A many-to-one matching market. Ids are opaque strings externally; all
// algorithms work on the dense indices defined by the ordered id lists.
// Fill the public fields, then call validate(); an instance becomes usable
// only once validate() returns no errors.
class Instance {
 public:
  std::vector<std::string> student_ids;
  std::vector<std::string> institution_ids;
  std::vector<std::string> category_ids;
  std::vector<std::string> family_ids;

  std::vector<int> capacity;                         // per institution, q_i >= 1
  std::vector<std::vector<int>> student_prefs;       // strict, best first
  std::vector<std::vector<int>> institution_prefs;   // strict, best first
  std::vector<std::vector<int>> student_categories;  // category indices, sorted
  std::vector<std::vector<DeclaredBound>> bounds;    // per institution, declared order
  std::vector<std::vector<int>> families;            // disjoint member lists
  CountingRule counting_rule = CountingRule::OneToAll;
  std::map<std::pair<int, int>, Rational> edge_costs;  // optional z(s,i)

  // Checks every model invariant (symmetric acceptability, duplicate-free
  // lists, every agent incident to an edge, lower <= upper, q_i >= 1,
  // disjoint families, index ranges) and returns one message per violation.
  // On success builds the rank tables and marks the instance validated.
  std::vector<std::string> validate();
  bool validated() const { return validated_; }

  int n_students() const { return static_cast<int>(student_ids.size()); }
  int n_institutions() const { return static_cast<int>(institution_ids.size()); }
  int n_categories() const { return static_cast<int>(category_ids.size()); }

  // Rank of i in s's list (0 = best), or -1 if unacceptable.
  int srank(int s, int i) const { return srank_[static_cast<size_t>(s) * institution_ids.size() + i]; }
  // Rank of s in i's list (0 = best), or -1 if unacceptable.
  int irank(int i, int s) const { return irank_[static_cast<size_t>(i) * student_ids.size() + s]; }
  bool acceptable(int s, int i) const { return srank(s, i) >= 0; }

  // Family index of s, or -1.
  int family_of(int s) const { return family_of_[s]; }
  bool in_category(int s, int c) const;

  long long edge_count() const;

  // Lookup by external id; -1 when absent.
  int student_index(const std::string& id) const;
  int institution_index(const std::string& id) const;
  int category_index(const std::string& id) const;

  // Appends the id to the list if not present; returns its index. Used by
  // parsers and generators before validate().
  int intern_category(const std::string& id);

 private:
  std::vector<int32_t> srank_, irank_;
  std::vector<int> family_of_;
  bool validated_ = false;
};

}  // namespace stableopt
