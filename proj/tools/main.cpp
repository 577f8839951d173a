#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "coset_topo/errors.hpp"
#include "coset_topo/lattice.hpp"
#include "coset_topo/parallel.hpp"
#include "coset_topo/recipe.hpp"
#include "coset_topo/topo.hpp"
#include "jobs.hpp"

using namespace ctopo;
using namespace ctopo::cli;

namespace {

int emit(const JobSpec& job, const JobResult& res) {
  const std::string body = job.format == "text" ? render_text(res.report) : res.report.dump(2) + "\n";
  if (job.output_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(job.output_path);
    if (!out) {
      std::cerr << "error: cannot write " << job.output_path << '\n';
      return kExitParse;
    }
    out << body;
  }
  for (const auto& r : res.report.value("reports", json::array()))
    if (r.contains("error")) std::cerr << r["task"].get<std::string>() << ": " << r["error"]["message"].get<std::string>() << '\n';
  if (res.report.contains("error")) std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << '\n';
  return res.exit_code;
}

int cmd_run(const std::string& path) {
  const json spec = read_json_file(path);
  const JobSpec job = parse_job(spec, std::filesystem::path(path).parent_path().string());
  return emit(job, run_job(job));
}

int cmd_verify(const std::string& catalog, unsigned threads) {
  const auto results = run_acceptance(catalog, threads);
  for (const auto& r : results) std::cout << format_line(r) << '\n';
  const bool ok = all_passed(results);
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  return ok ? 0 : 1;
}

int cmd_export(const std::string& recipe_path, const std::string& model, int dim, const std::string& out_path,
               std::size_t budget) {
  json recipe = read_json_file(recipe_path);
  if (recipe.is_object() && recipe.contains("recipe")) recipe = json(recipe.at("recipe"));
  const auto lat = enumerate_subgroups(build_group_ptr(recipe));
  SimplicialComplex k;
  if (model == "mcover")
    k = minimal_cover_skeleton(lat, dim, budget);
  else if (model == "delta")
    k = order_complex(coset_poset(lat), dim, budget);
  else if (model == "crosscut")
    k = crosscut_prime_complex(lat, dim, budget).complex;
  else
    throw ParseError("unknown model '" + model + "'");
  const json header = {{"recipe", recipe}, {"model", model}, {"truncated_at", dim}, {"budget", budget}};
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write " + out_path);
  write_complex(out, k, header.dump());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset posets and simplicial models of finite groups"};
  app.require_subcommand(1);

  std::string job_path;
  auto* run = app.add_subcommand("run", "Run a job spec");
  run->add_option("jobspec", job_path, "Job spec JSON")->required();

  std::string catalog = default_catalog_dir();
  unsigned threads = default_threads();
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--catalog", catalog, "Catalog directory");
  verify->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string recipe_path, model = "mcover", out_path;
  int dim = 2;
  std::size_t budget = kDefaultSimplexBudget;
  auto* exp = app.add_subcommand("export-complex", "Write a model in the flat simplex format");
  exp->add_option("recipe", recipe_path, "Recipe JSON")->required();
  exp->add_option("--model", model, "mcover | delta | crosscut");
  exp->add_option("--dim", dim, "Top dimension")->check(CLI::NonNegativeNumber);
  exp->add_option("--out", out_path, "Output path")->required();
  exp->add_option("--budget", budget, "Simplex budget")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*run) return cmd_run(job_path);
    if (*verify) return cmd_verify(catalog, threads);
    if (*exp) return cmd_export(recipe_path, model, dim, out_path, budget);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {  // includes GroupError
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  }
  return 0;
}
