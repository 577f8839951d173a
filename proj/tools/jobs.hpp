#pragma once

#include <string>
#include <vector>

#include "coset_topo/homology.hpp"
#include "coset_topo/pi1.hpp"
#include "json.hpp"

namespace ctopo::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

struct Budgets {
  std::size_t simplices = kDefaultSimplexBudget;
  std::size_t tietze_steps = kDefaultTietzeBudget;
  unsigned threads = 1;
};

struct TaskSpec {
  std::string name;
  json params = json::object();
};

struct JobSpec {
  json recipe;
  std::vector<TaskSpec> tasks;
  Budgets budgets;
  std::string output_path;  // empty: stdout
  std::string format = "json";
  std::string catalog_dir;  // for verify-all
};

// ParseError on anything malformed. Relative recipe_file paths resolve
// against base_dir.
JobSpec parse_job(const json& j, const std::string& base_dir = ".");

struct JobResult {
  json report;
  int exit_code = kExitOk;
};
// Never throws for task failures; they become flagged reports and an exit code.
JobResult run_job(const JobSpec& job);

json homology_json(const HomologyProfile& h, const std::string& model);
json certification_json(const CertificationReport& r, const SubgroupLattice& lat);

// "a.b[2].c = value" lines, one per scalar, in document order.
std::string render_text(const json& j);

}  // namespace ctopo::cli
