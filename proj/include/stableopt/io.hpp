#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stableopt/instance.hpp"
#include "stableopt/matching.hpp"
#include "stableopt/objectives.hpp"

namespace stableopt {

struct ParseResult {
  Instance instance;
  std::vector<std::string> errors;  // parse and validation errors together
  bool ok() const { return errors.empty(); }
};

// Parses the JSON instance format. Strict: unknown keys are errors, counts
// and capacities must be JSON integers, costs must be strings (or integers)
// parsed exactly as rationals. A successful parse returns a validated
// instance.
ParseResult parse_instance_text(const std::string& text);
ParseResult parse_instance_file(const std::string& path);

// Canonical single-form serialization; parse(print(x)) reproduces x.
std::string print_instance(const Instance& inst);

// FNV-1a 64 over the canonical serialization.
std::string instance_digest(const Instance& inst);

// Student cost file for two-sided solves: {"edge_costs": [{student,
// institution, cost}], "unmatched_costs": [{student, cost}]}.
struct CostParseResult {
  StudentCosts costs;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};
CostParseResult parse_student_costs_file(const std::string& path, const Instance& inst);

nlohmann::ordered_json matching_to_json(const Instance& inst, const Matching& m);

}  // namespace stableopt
