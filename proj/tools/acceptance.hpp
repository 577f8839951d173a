#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ctopo::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct CatalogEntry {
  std::string file;  // stem, e.g. "psl2_7"
  std::string name;
  nlohmann::json recipe;
};
// Every *.json directly under dir, sorted by file name.
std::vector<CatalogEntry> load_catalog(const std::string& dir);

std::string default_catalog_dir();

// Criteria 1-10. Exceptions inside a criterion become a failing line.
std::vector<CriterionResult> run_acceptance(const std::string& catalog_dir, unsigned threads);

bool all_passed(const std::vector<CriterionResult>& r);
nlohmann::json acceptance_json(const std::vector<CriterionResult>& r);
// "[PASS] 3 title (1.2 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace ctopo::cli
