#include "stableopt/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stableopt {

namespace {

int find_id(const std::vector<std::string>& ids, const std::string& id) {
  for (size_t k = 0; k < ids.size(); ++k)
    if (ids[k] == id) return static_cast<int>(k);
  return -1;
}

}  // namespace

int Instance::student_index(const std::string& id) const { return find_id(student_ids, id); }
int Instance::institution_index(const std::string& id) const { return find_id(institution_ids, id); }
int Instance::category_index(const std::string& id) const { return find_id(category_ids, id); }

int Instance::intern_category(const std::string& id) {
  int k = category_index(id);
  if (k >= 0) return k;
  category_ids.push_back(id);
  return static_cast<int>(category_ids.size()) - 1;
}

bool Instance::in_category(int s, int c) const {
  const auto& cats = student_categories[s];
  return std::binary_search(cats.begin(), cats.end(), c);
}

long long Instance::edge_count() const {
  long long total = 0;
  for (const auto& prefs : student_prefs) total += static_cast<long long>(prefs.size());
  return total;
}

std::vector<std::string> Instance::validate() {
  std::vector<std::string> errors;
  const int ns = n_students();
  const int ni = n_institutions();
  auto err = [&errors](const std::string& msg) { errors.push_back(msg); };

  if (student_prefs.size() != static_cast<size_t>(ns)) err("student_prefs size mismatch");
  if (institution_prefs.size() != static_cast<size_t>(ni)) err("institution_prefs size mismatch");
  if (capacity.size() != static_cast<size_t>(ni)) err("capacity size mismatch");
  if (student_categories.size() != static_cast<size_t>(ns)) student_categories.resize(ns);
  if (bounds.size() != static_cast<size_t>(ni)) bounds.resize(ni);
  if (!errors.empty()) return errors;

  std::set<std::string> seen;
  for (const auto& id : student_ids)
    if (!seen.insert(id).second) err("duplicate student id '" + id + "'");
  seen.clear();
  for (const auto& id : institution_ids)
    if (!seen.insert(id).second) err("duplicate institution id '" + id + "'");

  for (int i = 0; i < ni; ++i)
    if (capacity[i] < 1) err("institution '" + institution_ids[i] + "' has zero capacity");

  // Range checks plus duplicate-free lists.
  for (int s = 0; s < ns; ++s) {
    std::set<int> entries;
    for (int i : student_prefs[s]) {
      if (i < 0 || i >= ni) {
        err("student '" + student_ids[s] + "' lists unknown institution");
        continue;
      }
      if (!entries.insert(i).second)
        err("duplicate preference entry '" + institution_ids[i] + "' for student '" + student_ids[s] + "'");
    }
    if (student_prefs[s].empty()) err("student '" + student_ids[s] + "' has no acceptable institution");
  }
  for (int i = 0; i < ni; ++i) {
    std::set<int> entries;
    for (int s : institution_prefs[i]) {
      if (s < 0 || s >= ns) {
        err("institution '" + institution_ids[i] + "' lists unknown student");
        continue;
      }
      if (!entries.insert(s).second)
        err("duplicate preference entry '" + student_ids[s] + "' for institution '" + institution_ids[i] + "'");
    }
    if (institution_prefs[i].empty()) err("institution '" + institution_ids[i] + "' has no acceptable student");
  }
  if (!errors.empty()) return errors;

  // Symmetric acceptability.
  std::vector<std::set<int>> by_student(ns), by_institution(ni);
  for (int s = 0; s < ns; ++s) by_student[s].insert(student_prefs[s].begin(), student_prefs[s].end());
  for (int i = 0; i < ni; ++i) by_institution[i].insert(institution_prefs[i].begin(), institution_prefs[i].end());
  for (int s = 0; s < ns; ++s)
    for (int i : student_prefs[s])
      if (!by_institution[i].count(s))
        err("asymmetric acceptability: '" + student_ids[s] + "' lists '" + institution_ids[i] +
            "' which does not list them back");
  for (int i = 0; i < ni; ++i)
    for (int s : institution_prefs[i])
      if (!by_student[s].count(i))
        err("asymmetric acceptability: '" + institution_ids[i] + "' lists '" + student_ids[s] +
            "' who does not list them back");

  for (int i = 0; i < ni; ++i) {
    std::set<int> cats;
    for (const auto& db : bounds[i]) {
      if (db.category < 0 || db.category >= n_categories()) {
        err("bound at '" + institution_ids[i] + "' names unknown category");
        continue;
      }
      if (!cats.insert(db.category).second)
        err("duplicate bound for category '" + category_ids[db.category] + "' at '" + institution_ids[i] + "'");
      if (db.bound.lower < 0 || db.bound.upper < 0)
        err("negative bound at '" + institution_ids[i] + "'");
      if (db.bound.lower > db.bound.upper)
        err("lower bound exceeds upper for category '" + category_ids[db.category] + "' at '" +
            institution_ids[i] + "'");
    }
  }

  for (int s = 0; s < ns; ++s) {
    auto& cats = student_categories[s];
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    for (int c : cats)
      if (c < 0 || c >= n_categories()) err("student '" + student_ids[s] + "' has unknown category");
  }

  family_of_.assign(ns, -1);
  for (size_t f = 0; f < families.size(); ++f) {
    for (int s : families[f]) {
      if (s < 0 || s >= ns) {
        err("family lists unknown student");
        continue;
      }
      if (family_of_[s] >= 0)
        err("overlapping families: student '" + student_ids[s] + "' appears in more than one family");
      else
        family_of_[s] = static_cast<int>(f);
    }
  }

  if (!errors.empty()) return errors;

  srank_.assign(static_cast<size_t>(ns) * ni, -1);
  irank_.assign(static_cast<size_t>(ni) * ns, -1);
  for (int s = 0; s < ns; ++s)
    for (size_t r = 0; r < student_prefs[s].size(); ++r)
      srank_[static_cast<size_t>(s) * ni + student_prefs[s][r]] = static_cast<int32_t>(r);
  for (int i = 0; i < ni; ++i)
    for (size_t r = 0; r < institution_prefs[i].size(); ++r)
      irank_[static_cast<size_t>(i) * ns + institution_prefs[i][r]] = static_cast<int32_t>(r);

  for (const auto& [edge, cost] : edge_costs) {
    auto [s, i] = edge;
    if (s < 0 || s >= ns || i < 0 || i >= ni || srank(s, i) < 0)
      err("edge cost on non-acceptability edge");
  }
  if (!errors.empty()) return errors;

  validated_ = true;
  return errors;
}

}  // namespace stableopt
