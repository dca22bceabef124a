#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace mlfc::cli {

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
  std::string summary;
  nlohmann::json metrics = nlohmann::json::object();
};

struct AcceptanceOptions {
  int threads = 0;
  std::ostream* progress = nullptr;  // one line per criterion as it finishes
};

// Criteria 1 to 11 followed by 12 (all passed within the total time limit).
// A criterion that throws is recorded as failed with the error text.
std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opt = {});

nlohmann::json to_json(const CriterionOutcome& c);

}  // namespace mlfc::cli
