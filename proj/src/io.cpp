#include "stableopt/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace stableopt {

using nlohmann::ordered_json;

namespace {

bool check_keys(const ordered_json& obj, const std::vector<std::string>& allowed,
                const std::string& where, std::vector<std::string>& errors) {
  bool ok = true;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      errors.push_back("unknown key '" + it.key() + "' in " + where);
      ok = false;
    }
  }
  return ok;
}

std::optional<Rational> cost_from_json(const ordered_json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  return std::nullopt;  // floats are rejected to keep costs exact
}

ParseResult parse_instance_json(const ordered_json& doc) {
  ParseResult result;
  Instance& inst = result.instance;
  auto err = [&result](const std::string& msg) { result.errors.push_back(msg); };

  if (!doc.is_object()) {
    err("top-level document must be an object");
    return result;
  }
  check_keys(doc, {"students", "institutions", "counting_rule", "edge_costs", "meta"}, "document",
             result.errors);
  if (!doc.contains("students") || !doc["students"].is_array() || !doc.contains("institutions") ||
      !doc["institutions"].is_array()) {
    err("document requires 'students' and 'institutions' arrays");
    return result;
  }

  struct PendingStudent {
    std::vector<std::string> prefs;
    std::vector<std::string> categories;
    std::string family;
  };
  std::vector<PendingStudent> pending_students;
  for (const auto& node : doc["students"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_string()) {
      err("each student must be an object with a string 'id'");
      return result;
    }
    check_keys(node, {"id", "prefs", "categories", "family"},
               "student '" + node["id"].get<std::string>() + "'", result.errors);
    inst.student_ids.push_back(node["id"].get<std::string>());
    PendingStudent p;
    if (node.contains("prefs")) {
      if (!node["prefs"].is_array()) {
        err("student 'prefs' must be an array");
        return result;
      }
      for (const auto& e : node["prefs"]) {
        if (!e.is_string()) {
          err("student preference entries must be institution ids");
          return result;
        }
        p.prefs.push_back(e.get<std::string>());
      }
    }
    if (node.contains("categories")) {
      if (!node["categories"].is_array()) {
        err("student 'categories' must be an array");
        return result;
      }
      for (const auto& e : node["categories"]) {
        if (!e.is_string()) {
          err("category entries must be strings");
          return result;
        }
        p.categories.push_back(e.get<std::string>());
      }
    }
    if (node.contains("family")) {
      if (!node["family"].is_string()) {
        err("student 'family' must be a string");
        return result;
      }
      p.family = node["family"].get<std::string>();
    }
    pending_students.push_back(std::move(p));
  }

  struct PendingInstitution {
    std::vector<std::string> prefs;
    std::vector<std::pair<std::string, Bound>> bounds;
  };
  std::vector<PendingInstitution> pending_institutions;
  for (const auto& node : doc["institutions"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_string()) {
      err("each institution must be an object with a string 'id'");
      return result;
    }
    const std::string id = node["id"].get<std::string>();
    check_keys(node, {"id", "capacity", "prefs", "bounds"}, "institution '" + id + "'",
               result.errors);
    inst.institution_ids.push_back(id);
    if (!node.contains("capacity") || !node["capacity"].is_number_integer()) {
      err("institution '" + id + "' requires an integer 'capacity'");
      return result;
    }
    inst.capacity.push_back(node["capacity"].get<int>());
    PendingInstitution p;
    if (node.contains("prefs")) {
      if (!node["prefs"].is_array()) {
        err("institution 'prefs' must be an array");
        return result;
      }
      for (const auto& e : node["prefs"]) {
        if (!e.is_string()) {
          err("institution preference entries must be student ids");
          return result;
        }
        p.prefs.push_back(e.get<std::string>());
      }
    }
    if (node.contains("bounds")) {
      if (!node["bounds"].is_object()) {
        err("institution 'bounds' must be an object keyed by category");
        return result;
      }
      for (auto it = node["bounds"].begin(); it != node["bounds"].end(); ++it) {
        const auto& b = it.value();
        if (!b.is_object() || !check_keys(b, {"lower", "upper"},
                                          "bound '" + it.key() + "' at '" + id + "'",
                                          result.errors)) {
          err("bounds must be objects with 'lower' and 'upper'");
          return result;
        }
        Bound bound;
        if (b.contains("lower")) {
          if (!b["lower"].is_number_integer()) {
            err("bound 'lower' must be an integer");
            return result;
          }
          bound.lower = b["lower"].get<int>();
        }
        if (!b.contains("upper") || !b["upper"].is_number_integer()) {
          err("bound 'upper' must be an integer");
          return result;
        }
        bound.upper = b["upper"].get<int>();
        p.bounds.emplace_back(it.key(), bound);
      }
    }
    pending_institutions.push_back(std::move(p));
  }

  if (doc.contains("counting_rule")) {
    if (!doc["counting_rule"].is_string()) {
      err("'counting_rule' must be a string");
      return result;
    }
    const std::string rule = doc["counting_rule"].get<std::string>();
    if (rule == "one_to_all")
      inst.counting_rule = CountingRule::OneToAll;
    else if (rule == "one_to_one")
      inst.counting_rule = CountingRule::OneToOne;
    else {
      err("counting_rule must be 'one_to_all' or 'one_to_one'");
      return result;
    }
  }

  // Resolve names to indices.
  inst.student_prefs.resize(inst.student_ids.size());
  inst.student_categories.resize(inst.student_ids.size());
  inst.institution_prefs.resize(inst.institution_ids.size());
  inst.bounds.resize(inst.institution_ids.size());
  for (size_t s = 0; s < pending_students.size(); ++s) {
    for (const auto& name : pending_students[s].prefs) {
      int i = inst.institution_index(name);
      if (i < 0) {
        err("student '" + inst.student_ids[s] + "' lists unknown institution '" + name + "'");
        continue;
      }
      inst.student_prefs[s].push_back(i);
    }
    for (const auto& name : pending_students[s].categories)
      inst.student_categories[s].push_back(inst.intern_category(name));
    const std::string& family = pending_students[s].family;
    if (!family.empty()) {
      int f = -1;
      for (size_t k = 0; k < inst.family_ids.size(); ++k)
        if (inst.family_ids[k] == family) f = static_cast<int>(k);
      if (f < 0) {
        f = static_cast<int>(inst.family_ids.size());
        inst.family_ids.push_back(family);
        inst.families.emplace_back();
      }
      inst.families[f].push_back(static_cast<int>(s));
    }
  }
  for (size_t i = 0; i < pending_institutions.size(); ++i) {
    for (const auto& name : pending_institutions[i].prefs) {
      int s = inst.student_index(name);
      if (s < 0) {
        err("institution '" + inst.institution_ids[i] + "' lists unknown student '" + name + "'");
        continue;
      }
      inst.institution_prefs[i].push_back(s);
    }
    for (const auto& [category, bound] : pending_institutions[i].bounds)
      inst.bounds[i].push_back({inst.intern_category(category), bound});
  }

  if (doc.contains("edge_costs")) {
    if (!doc["edge_costs"].is_array()) {
      err("'edge_costs' must be an array");
      return result;
    }
    for (const auto& node : doc["edge_costs"]) {
      if (!node.is_object() ||
          !check_keys(node, {"student", "institution", "cost"}, "edge cost", result.errors) ||
          !node.contains("student") || !node.contains("institution") || !node.contains("cost")) {
        err("edge costs require student, institution and cost");
        return result;
      }
      int s = inst.student_index(node["student"].get<std::string>());
      int i = inst.institution_index(node["institution"].get<std::string>());
      auto cost = cost_from_json(node["cost"]);
      if (s < 0 || i < 0) {
        err("edge cost names an unknown agent");
        continue;
      }
      if (!cost) {
        err("edge cost values must be exact decimal or rational strings");
        continue;
      }
      inst.edge_costs[{s, i}] = *cost;
    }
  }

  if (!result.errors.empty()) return result;
  auto validation = result.instance.validate();
  result.errors.insert(result.errors.end(), validation.begin(), validation.end());
  return result;
}

}  // namespace

ParseResult parse_instance_text(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    ParseResult result;
    result.errors.push_back("malformed JSON");
    return result;
  }
  return parse_instance_json(doc);
}

ParseResult parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult result;
    result.errors.push_back("cannot open '" + path + "'");
    return result;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

std::string print_instance(const Instance& inst) {
  ordered_json doc;
  doc["students"] = ordered_json::array();
  for (int s = 0; s < inst.n_students(); ++s) {
    ordered_json node;
    node["id"] = inst.student_ids[s];
    node["prefs"] = ordered_json::array();
    for (int i : inst.student_prefs[s]) node["prefs"].push_back(inst.institution_ids[i]);
    if (!inst.student_categories[s].empty()) {
      node["categories"] = ordered_json::array();
      for (int c : inst.student_categories[s]) node["categories"].push_back(inst.category_ids[c]);
    }
    for (size_t f = 0; f < inst.families.size(); ++f)
      for (int member : inst.families[f])
        if (member == s) node["family"] = inst.family_ids[f];
    doc["students"].push_back(std::move(node));
  }
  doc["institutions"] = ordered_json::array();
  for (int i = 0; i < inst.n_institutions(); ++i) {
    ordered_json node;
    node["id"] = inst.institution_ids[i];
    node["capacity"] = inst.capacity[i];
    node["prefs"] = ordered_json::array();
    for (int s : inst.institution_prefs[i]) node["prefs"].push_back(inst.student_ids[s]);
    if (!inst.bounds[i].empty()) {
      ordered_json bounds;
      for (const auto& db : inst.bounds[i])
        bounds[inst.category_ids[db.category]] = {{"lower", db.bound.lower},
                                                  {"upper", db.bound.upper}};
      node["bounds"] = std::move(bounds);
    }
    doc["institutions"].push_back(std::move(node));
  }
  doc["counting_rule"] = inst.counting_rule == CountingRule::OneToAll ? "one_to_all" : "one_to_one";
  if (!inst.edge_costs.empty()) {
    doc["edge_costs"] = ordered_json::array();
    for (const auto& [edge, cost] : inst.edge_costs)
      doc["edge_costs"].push_back({{"student", inst.student_ids[edge.first]},
                                   {"institution", inst.institution_ids[edge.second]},
                                   {"cost", rational_to_string(cost)}});
  }
  return doc.dump(2) + "\n";
}

std::string instance_digest(const Instance& inst) {
  const std::string canonical = print_instance(inst);
  unsigned long long hash = 14695981039346656037ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx", hash);
  return buffer;
}

CostParseResult parse_student_costs_file(const std::string& path, const Instance& inst) {
  CostParseResult result;
  std::ifstream in(path);
  if (!in) {
    result.errors.push_back("cannot open '" + path + "'");
    return result;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ordered_json doc = ordered_json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    result.errors.push_back("malformed cost file");
    return result;
  }
  check_keys(doc, {"edge_costs", "unmatched_costs"}, "cost file", result.errors);
  if (doc.contains("edge_costs")) {
    for (const auto& node : doc["edge_costs"]) {
      if (!node.is_object() || !node.contains("student") || !node.contains("institution") ||
          !node.contains("cost") ||
          !check_keys(node, {"student", "institution", "cost"}, "edge cost", result.errors)) {
        result.errors.push_back("edge costs require student, institution and cost");
        return result;
      }
      int s = inst.student_index(node["student"].get<std::string>());
      int i = inst.institution_index(node["institution"].get<std::string>());
      auto cost = cost_from_json(node["cost"]);
      if (s < 0 || i < 0 || !inst.acceptable(s, i))
        result.errors.push_back("cost on unknown or unacceptable edge");
      else if (!cost)
        result.errors.push_back("cost values must be exact decimal or rational strings");
      else
        result.costs.edge[{s, i}] = *cost;
    }
  }
  if (doc.contains("unmatched_costs")) {
    for (const auto& node : doc["unmatched_costs"]) {
      if (!node.is_object() || !node.contains("student") || !node.contains("cost") ||
          !check_keys(node, {"student", "cost"}, "unmatched cost", result.errors)) {
        result.errors.push_back("unmatched costs require student and cost");
        return result;
      }
      int s = inst.student_index(node["student"].get<std::string>());
      auto cost = cost_from_json(node["cost"]);
      if (s < 0)
        result.errors.push_back("unmatched cost names an unknown student");
      else if (!cost)
        result.errors.push_back("cost values must be exact decimal or rational strings");
      else
        result.costs.unmatched[s] = *cost;
    }
  }
  return result;
}

nlohmann::ordered_json matching_to_json(const Instance& inst, const Matching& m) {
  ordered_json out = ordered_json::array();
  for (int s = 0; s < inst.n_students(); ++s) {
    ordered_json node;
    node["student"] = inst.student_ids[s];
    if (m.matched(s))
      node["institution"] = inst.institution_ids[m(s)];
    else
      node["institution"] = nullptr;
    out.push_back(std::move(node));
  }
  return out;
}

}  // namespace stableopt
