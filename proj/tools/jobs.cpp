#include "jobs.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>

#include "acceptance.hpp"
#include "coset_topo/errors.hpp"
#include "coset_topo/lattice.hpp"
#include "coset_topo/parallel.hpp"
#include "coset_topo/recipe.hpp"
#include "coset_topo/topo.hpp"

namespace ctopo::cli {

namespace {

const char* const kTasks[] = {"analyze-lattice", "mobius",      "zeta",       "coset-homology",
                              "model",           "pi1-certify", "chief-series", "verify-all"};

std::size_t positive_field(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ParseError("job: '" + std::string(key) + "' must be a positive integer");
  return v.get<std::size_t>();
}

std::string big(const BigInt& b) { return b.str(); }

json torsion_json(const std::vector<BigInt>& t) {
  json a = json::array();
  for (const auto& x : t) {
    // Small factors as numbers, anything else as a decimal string.
    if (x <= BigInt(std::numeric_limits<std::int64_t>::max()))
      a.push_back(static_cast<std::int64_t>(x));
    else
      a.push_back(big(x));
  }
  return a;
}

std::optional<int> opt_int(const json& p, const char* key) {
  if (!p.contains(key)) return std::nullopt;
  if (!p.at(key).is_number_integer()) throw ParseError("job: '" + std::string(key) + "' must be an integer");
  return p.at(key).get<int>();
}

json lattice_summary(const SubgroupLattice& lat) {
  const FiniteGroup& g = *lat.group;
  json j;
  j["order"] = g.order();
  j["label"] = g.label();
  j["subgroups"] = lat.size();
  std::map<std::size_t, int> classes;
  std::size_t normal = 0;
  std::map<std::string, std::size_t> maximal;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    classes[lat.conj_class[i]] = 1;
    if (lat.normal[i]) ++normal;
    if (lat.maximal[i]) ++maximal[type_tag(g, lat.subgroups[i])];
  }
  j["conjugacy_classes"] = classes.size();
  j["normal_subgroups"] = normal;
  j["census"] = subgroup_census(lat);
  j["maximal"] = maximal;
  j["solvable"] = is_solvable(g);
  j["abelian"] = is_abelian(g);
  j["exponent"] = exponent(g);
  j["automorphisms"] = automorphism_count(g);
  j["cyclic_prime_power"] = is_cyclic_prime_power(g);
  return j;
}

json mobius_json(const SubgroupLattice& lat) {
  const FiniteGroup& g = *lat.group;
  const MobiusTable mu = mobius(lat);
  std::map<std::size_t, std::vector<SubgroupIndex>> classes;
  for (std::size_t i = 0; i < lat.size(); ++i) classes[lat.conj_class[i]].push_back(i);
  std::vector<std::vector<SubgroupIndex>> ordered;
  for (auto& [_, v] : classes) ordered.push_back(v);
  std::sort(ordered.begin(), ordered.end());
  json rows = json::array();
  std::size_t nonzero = 0;
  for (const auto& v : ordered) {
    json r;
    r["representative"] = v.front();
    r["type"] = type_tag(g, lat.subgroups[v.front()]);
    r["order"] = lat.order(v.front());
    r["class_size"] = v.size();
    r["mu"] = mu.mu[v.front()];
    if (mu.mu[v.front()] != 0) nonzero += v.size();
    rows.push_back(r);
  }
  json j;
  j["classes"] = rows;
  j["nonzero_subgroups"] = nonzero;
  return j;
}

json chief_json(const SubgroupLattice& lat) {
  const ChiefSeriesReport r = chief_series(lat);
  json j;
  j["applicable"] = r.applicable;
  if (!r.applicable) return j;
  json series = json::array();
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    json s;
    s["index"] = r.series[i];
    s["order"] = lat.order(r.series[i]);
    s["type"] = type_tag(*lat.group, lat.subgroups[r.series[i]]);
    if (i > 0) s["complemented"] = static_cast<bool>(r.complemented[i - 1]);
    series.push_back(s);
  }
  j["series"] = series;
  j["d"] = r.d;
  return j;
}

SimplicialComplex build_model(const SubgroupLattice& lat, const std::string& model, std::optional<int> max_dim,
                              std::size_t budget) {
  if (model == "delta") return order_complex(coset_poset(lat), max_dim, budget);
  if (model == "mcover") return minimal_cover_skeleton(lat, max_dim ? std::optional<int>(std::max(*max_dim, 1)) : std::nullopt, budget);
  if (model == "crosscut") return crosscut_prime_complex(lat, max_dim, budget).complex;
  if (model == "subgroup") return order_complex(subgroup_poset(lat), max_dim, budget);
  if (model == "sd") {
    if (max_dim) throw ParseError("job: the sd model is always built in full");
    return barycentric_subdivision(order_complex(coset_poset(lat), std::nullopt, budget), budget);
  }
  throw ParseError("job: unknown model '" + model + "'");
}

json run_task(const TaskSpec& t, const SubgroupLattice& lat, const JobSpec& job) {
  const Budgets& b = job.budgets;
  if (t.name == "analyze-lattice") return lattice_summary(lat);
  if (t.name == "mobius") return mobius_json(lat);
  if (t.name == "chief-series") return chief_json(lat);
  if (t.name == "zeta") {
    const auto s = opt_int(t.params, "s");
    if (!s) throw ParseError("job: zeta needs an integer 's'");
    json j;
    j["s"] = *s;
    j["value"] = to_fraction_string(prob_zeta(lat, mobius(lat), *s));
    if (*s == -1) j["coset_poset_euler_reduced"] = euler_characteristic_poset(coset_poset(lat)).euler_reduced;
    return j;
  }
  if (t.name == "coset-homology" || t.name == "model") {
    const std::string model = t.name == "model" ? t.params.value("model", std::string("delta")) : "delta";
    std::optional<int> up_to = opt_int(t.params, "up_to");
    if (!up_to && t.params.contains("dim")) up_to = opt_int(t.params, "dim");
    const std::optional<int> max_dim = up_to ? std::optional<int>(*up_to + 1) : std::nullopt;
    const SimplicialComplex k = build_model(lat, model, max_dim, b.simplices);
    const HomologyProfile h = up_to ? reduced_homology(k, *up_to) : reduced_homology(k);
    json j = homology_json(h, model);
    j["f_vector"] = k.f_vector();
    return j;
  }
  if (t.name == "pi1-certify") {
    CertifyOptions opt;
    opt.simplex_budget = b.simplices;
    opt.tietze_budget = b.tietze_steps;
    opt.threads = b.threads;
    return certification_json(certify_simple_connectivity(lat, opt), lat);
  }
  throw ParseError("job: unknown task '" + t.name + "'");
}

}  // namespace

JobSpec parse_job(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError("job: expected a JSON object");
  JobSpec job;
  if (j.contains("recipe")) {
    job.recipe = j.at("recipe");
  } else if (j.contains("recipe_file")) {
    if (!j.at("recipe_file").is_string()) throw ParseError("job: 'recipe_file' must be a string");
    std::filesystem::path p = j.at("recipe_file").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    job.recipe = read_json_file(p.string());
    if (job.recipe.contains("recipe")) job.recipe = json(job.recipe.at("recipe"));
  }
  if (!j.contains("tasks") || !j.at("tasks").is_array() || j.at("tasks").empty())
    throw ParseError("job: 'tasks' must be a nonempty array");
  for (const json& t : j.at("tasks")) {
    TaskSpec ts;
    if (t.is_string()) {
      ts.name = t.get<std::string>();
    } else if (t.is_object() && t.contains("task") && t.at("task").is_string()) {
      ts.name = t.at("task").get<std::string>();
      ts.params = t;
      ts.params.erase("task");
    } else {
      throw ParseError("job: each task is a name or an object with a 'task' field");
    }
    if (std::find(std::begin(kTasks), std::end(kTasks), ts.name) == std::end(kTasks))
      throw ParseError("job: unknown task '" + ts.name + "'");
    job.tasks.push_back(std::move(ts));
  }
  const bool needs_group = std::any_of(job.tasks.begin(), job.tasks.end(), [](const TaskSpec& t) { return t.name != "verify-all"; });
  if (needs_group && job.recipe.is_null()) throw ParseError("job: missing 'recipe' or 'recipe_file'");
  job.budgets.threads = default_threads();
  if (j.contains("budgets")) {
    const json& b = j.at("budgets");
    if (!b.is_object()) throw ParseError("job: 'budgets' must be an object");
    job.budgets.simplices = positive_field(b, "simplices", job.budgets.simplices);
    job.budgets.tietze_steps = positive_field(b, "tietze_steps", job.budgets.tietze_steps);
    job.budgets.threads = static_cast<unsigned>(positive_field(b, "threads", job.budgets.threads));
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) throw ParseError("job: 'output' must be an object");
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ParseError("job: output path must be a string");
      std::filesystem::path p = o.at("path").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      job.output_path = p.string();
    }
    job.format = o.value("format", std::string("json"));
    if (job.format != "json" && job.format != "text") throw ParseError("job: format must be json or text");
  }
  if (j.contains("catalog")) job.catalog_dir = j.at("catalog").get<std::string>();
  return job;
}

JobResult run_job(const JobSpec& job) {
  JobResult res;
  json& rep = res.report;
  rep["recipe"] = job.recipe;
  rep["budgets"] = {{"simplices", job.budgets.simplices},
                    {"tietze_steps", job.budgets.tietze_steps},
                    {"threads", job.budgets.threads}};
  rep["reports"] = json::array();

  std::optional<SubgroupLattice> lat;
  try {
    if (!job.recipe.is_null()) {
      lat = enumerate_subgroups(build_group_ptr(job.recipe));
      rep["group"] = {{"label", lat->group->label()}, {"order", lat->group->order()}};
    }
  } catch (const ParseError& e) {
    rep["error"] = {{"kind", "parse"}, {"message", e.what()}};
    res.exit_code = kExitParse;
    return res;
  } catch (const GroupError& e) {
    rep["error"] = {{"kind", "group"}, {"message", e.what()}};
    res.exit_code = kExitParse;
    return res;
  } catch (const InvariantViolation& e) {
    rep["error"] = {{"kind", "invariant"}, {"message", e.what()}};
    res.exit_code = kExitInvariant;
    return res;
  }

  for (const TaskSpec& t : job.tasks) {
    json r;
    r["task"] = t.name;
    if (!t.params.empty()) r["params"] = t.params;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (t.name == "verify-all") {
        const auto results = run_acceptance(job.catalog_dir.empty() ? default_catalog_dir() : job.catalog_dir,
                                            job.budgets.threads);
        r["result"] = acceptance_json(results);
        if (!all_passed(results)) r["failed"] = true;
      } else {
        r["result"] = run_task(t, *lat, job);
      }
    } catch (const BudgetExceeded& e) {
      r["partial"] = true;
      r["error"] = {{"kind", "budget"}, {"message", e.what()}};
      res.exit_code = std::max(res.exit_code, kExitBudget);
    } catch (const InvariantViolation& e) {
      r["error"] = {{"kind", "invariant"}, {"message", e.what()}};
      res.exit_code = kExitInvariant;
    } catch (const ParseError& e) {
      r["error"] = {{"kind", "parse"}, {"message", e.what()}};
      res.exit_code = std::max(res.exit_code, kExitParse);
    } catch (const std::invalid_argument& e) {
      r["error"] = {{"kind", "argument"}, {"message", e.what()}};
      res.exit_code = std::max(res.exit_code, kExitParse);
    }
    r["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    rep["reports"].push_back(r);
    if (res.exit_code == kExitInvariant) break;
  }
  if (res.exit_code == kExitOk)
    for (const json& r : rep["reports"])
      if (r.contains("failed")) res.exit_code = 1;
  return res;
}

json homology_json(const HomologyProfile& h, const std::string& model) {
  json j;
  j["model"] = model;
  json degrees = json::array();
  for (const auto& d : h.degrees) degrees.push_back({{"k", d.k}, {"betti", d.betti}, {"torsion", torsion_json(d.torsion)}});
  j["degrees"] = degrees;
  j["euler_reduced"] = h.euler_reduced ? json(*h.euler_reduced) : json(nullptr);
  j["budget_used"] = h.simplices;
  return j;
}

json certification_json(const CertificationReport& r, const SubgroupLattice& lat) {
  json j;
  j["status"] = to_string(r.status);
  j["method"] = r.method.empty() ? json(nullptr) : json(r.method);
  j["betti1"] = r.betti1 ? json(*r.betti1) : json(nullptr);
  json stages = json::array();
  for (const auto& s : r.stages) stages.push_back({{"stage", s.stage}, {"result", s.result}, {"detail", s.detail}});
  j["stages"] = stages;
  const FiniteGroup& g = *lat.group;
  if (r.two_gen) {
    json pairs = json::array();
    for (const auto& w : r.two_gen->witnesses)
      pairs.push_back({g.element_label(w.x), g.element_label(w.y), w.z ? json(g.element_label(*w.z)) : json(nullptr)});
    j["two_gen"] = {{"pairs", r.two_gen->pairs}, {"failures", r.two_gen->failures}, {"vacuous", r.two_gen->vacuous},
                    {"witnesses", pairs}};
  }
  if (r.tietze) {
    j["tietze"] = {{"steps", r.tietze->steps},
                   {"exhausted", r.tietze->exhausted},
                   {"generators", r.tietze->presentation.num_generators},
                   {"relators", r.tietze->presentation.relators.size()}};
  }
  if (r.abelian) j["abelianization"] = {{"rank", r.abelian->rank}, {"torsion", torsion_json(r.abelian->torsion)}};
  if (r.order2) {
    json edges = json::array();
    for (const auto& w : r.order2->witnesses) {
      json e = {g.element_label(w.g), g.element_label(w.h)};
      if (w.through_identity) {
        e.push_back("identity");
        e.push_back(nullptr);
      } else {
        e.push_back(w.k ? json(type_tag(g, lat.subgroups[*w.k]) + "#" + std::to_string(*w.k)) : json(nullptr));
        e.push_back(w.z ? json(g.element_label(*w.z)) : json(nullptr));
      }
      edges.push_back(e);
    }
    j["witness_pipeline"] = {{"subcertificate_ok", r.order2->subcertificate_ok},
                             {"edges", r.order2->edges},
                             {"covered", r.order2->covered},
                             {"witnesses", edges}};
  }
  return j;
}

namespace {

void render(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) render(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << " = []\n";
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream out;
  render(j, "", out);
  return out.str();
}

}  // namespace ctopo::cli
