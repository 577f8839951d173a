#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include "acceptance.hpp"
#include "coset_topo/errors.hpp"
#include "doctest.h"
#include "jobs.hpp"

using namespace ctopo;
using namespace ctopo::cli;

namespace {

json strip_runtime(json j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto& [_, v] : j.items()) v = strip_runtime(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_runtime(v);
  }
  return j;
}

JobResult run(const json& spec) { return run_job(parse_job(spec)); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CTOPO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string write_temp(const std::string& name, const json& j) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

const std::regex kNumber(R"(^-?[0-9]+(\.[0-9]+)?$)");

// Numbers, and strings holding exact values such as "-1560".
void collect_numbers(const json& j, std::multiset<std::string>& out) {
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j) collect_numbers(v, out);
  } else if (j.is_number()) {
    out.insert(j.dump());
  } else if (j.is_string() && std::regex_match(j.get<std::string>(), kNumber)) {
    out.insert(j.get<std::string>());
  }
}

}  // namespace

TEST_CASE("job spec validation") {
  CHECK_THROWS_AS(parse_job(json::array()), ParseError);
  CHECK_THROWS_AS(parse_job({{"recipe", {{"kind", "cyclic"}, {"n", 3}}}, {"tasks", json::array()}}), ParseError);
  CHECK_THROWS_AS(parse_job({{"recipe", {{"kind", "cyclic"}, {"n", 3}}}, {"tasks", {"frobnicate"}}}), ParseError);
  CHECK_THROWS_AS(parse_job({{"tasks", {"mobius"}}}), ParseError);
  CHECK_THROWS_AS(parse_job({{"recipe", {{"kind", "cyclic"}, {"n", 3}}},
                             {"tasks", {"mobius"}},
                             {"budgets", {{"simplices", 0}}}}),
                  ParseError);
  CHECK_THROWS_AS(parse_job({{"recipe", {{"kind", "cyclic"}, {"n", 3}}},
                             {"tasks", {"mobius"}},
                             {"output", {{"format", "xml"}}}}),
                  ParseError);
}

TEST_CASE("task reports") {
  auto r = run({{"recipe", {{"kind", "alternating"}, {"n", 5}}}, {"tasks", {{{"task", "zeta"}, {"s", -1}}}}});
  CHECK(r.exit_code == 0);
  CHECK(r.report["reports"][0]["result"]["value"] == "-1560");
  CHECK(r.report["reports"][0]["result"]["coset_poset_euler_reduced"] == 1560);

  r = run({{"recipe", {{"kind", "cyclic"}, {"n", 4}}}, {"tasks", {"coset-homology"}}});
  const auto& deg = r.report["reports"][0]["result"]["degrees"];
  CHECK(deg[1]["k"] == 0);
  CHECK(deg[1]["betti"] == 1);

  r = run({{"recipe", {{"kind", "psl2"}, {"p", 7}}}, {"tasks", {"mobius"}}});
  std::map<std::string, std::int64_t> mu;
  for (const auto& c : r.report["reports"][0]["result"]["classes"]) mu[c["type"]] = c["mu"];
  CHECK(mu["Z/2"] == -4);
  CHECK(mu["Z/3"] == 2);
  CHECK(mu["D6"] == 1);
  CHECK(mu["D8"] == 1);
  CHECK(mu["G21"] == -1);
  CHECK(mu["G24"] == -1);

  r = run({{"recipe", {{"kind", "quaternion"}}}, {"tasks", {"pi1-certify", "chief-series"}}});
  CHECK(r.report["reports"][0]["result"]["status"] == "Nontrivial");
  CHECK(r.report["reports"][1]["result"]["d"] == 2);
}

TEST_CASE("reports are deterministic and renderings agree") {
  const json spec = {{"recipe", {{"kind", "symmetric"}, {"n", 4}}},
                     {"tasks", {"analyze-lattice", "mobius", "pi1-certify", {{"task", "model"}, {"model", "mcover"}, {"dim", 2}}}},
                     {"budgets", {{"threads", 2}}}};
  const auto a = run(spec), b = run(spec);
  CHECK(strip_runtime(a.report).dump() == strip_runtime(b.report).dump());

  std::multiset<std::string> from_json;
  collect_numbers(a.report, from_json);
  std::multiset<std::string> from_text;
  const std::string text = render_text(a.report);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto v = line.substr(line.find(" = ") + 3);
    if (std::regex_match(v, kNumber)) from_text.insert(v);
  }
  CHECK(from_json == from_text);
}

TEST_CASE("budget exhaustion flags partial reports") {
  auto r = run({{"recipe", {{"kind", "alternating"}, {"n", 5}}},
                {"tasks", {"mobius", "coset-homology"}},
                {"budgets", {{"simplices", 1}}}});
  CHECK(r.exit_code == kExitBudget);
  CHECK(!r.report["reports"][0].contains("partial"));
  CHECK(r.report["reports"][1]["partial"] == true);
}

TEST_CASE("command line exit codes") {
  const json corrupted = {{"recipe", {{"kind", "cayley"}, {"table", {{0, 1, 2}, {1, 1, 0}, {2, 0, 1}}}}},
                          {"tasks", {"mobius"}}};
  CHECK(run_cli("run " + write_temp("ctopo_bad_table.json", corrupted)) == kExitInvariant);
  const json loop = {{"recipe",
                      {{"kind", "cayley"},
                       {"table", {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}}}},
                     {"tasks", {"mobius"}}};
  CHECK(run_cli("run " + write_temp("ctopo_loop.json", loop)) == kExitInvariant);
  const json tight = {{"recipe", {{"kind", "alternating"}, {"n", 5}}},
                      {"tasks", {"coset-homology"}},
                      {"budgets", {{"simplices", 1}}}};
  CHECK(run_cli("run " + write_temp("ctopo_tight.json", tight)) == kExitBudget);
  CHECK(run_cli("run " + write_temp("ctopo_unknown.json", json{{"recipe", {{"kind", "mystery"}}}, {"tasks", {"mobius"}}})) ==
        kExitParse);
  CHECK(run_cli("run /nonexistent/job.json") == kExitParse);
  const json ok = {{"recipe", {{"kind", "cyclic"}, {"n", 6}}}, {"tasks", {"coset-homology"}}};
  CHECK(run_cli("run " + write_temp("ctopo_ok.json", ok)) == 0);

  const auto out = std::filesystem::temp_directory_path() / "ctopo_s4.complex";
  const auto recipe = write_temp("ctopo_s4.json", json{{"kind", "symmetric"}, {"n", 4}});
  CHECK(run_cli("export-complex " + recipe + " --model mcover --dim 2 --out " + out.string()) == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  const auto h = json::parse(header);
  CHECK(h["model"] == "mcover");
  CHECK(h["truncated_at"] == 2);
  CHECK(run_cli("export-complex " + recipe + " --model mcover --dim 2 --budget 1 --out " + out.string()) ==
        kExitBudget);
}

TEST_CASE("catalog loads") {
  const auto cat = load_catalog(default_catalog_dir());
  CHECK(cat.size() >= 30);
  CHECK(std::is_sorted(cat.begin(), cat.end(), [](const auto& a, const auto& b) { return a.file < b.file; }));
  CHECK_THROWS_AS(load_catalog("/nonexistent"), ParseError);
}

TEST_CASE("oversized models stop at the budget") {
  auto r = run({{"recipe", {{"kind", "symmetric"}, {"n", 4}}}, {"tasks", {{{"task", "model"}, {"model", "crosscut"}}}}});
  CHECK(r.exit_code == kExitBudget);
  CHECK(r.report["reports"][0]["partial"] == true);
}
