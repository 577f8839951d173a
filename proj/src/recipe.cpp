#include "coset_topo/recipe.hpp"

#include <fstream>

#include "coset_topo/errors.hpp"

namespace ctopo {

namespace {

using nlohmann::json;

const json& field(const json& r, const char* key) {
  if (!r.contains(key)) throw ParseError("recipe: missing field '" + std::string(key) + "'");
  return r.at(key);
}

std::size_t positive(const json& r, const char* key) {
  const json& v = field(r, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ParseError("recipe: field '" + std::string(key) + "' must be a positive integer");
  return v.get<std::size_t>();
}

std::vector<std::vector<std::uint32_t>> table_of(const json& t) {
  if (!t.is_array()) throw ParseError("recipe: table must be an array of rows");
  std::vector<std::vector<std::uint32_t>> rows;
  for (const json& row : t) {
    if (!row.is_array()) throw ParseError("recipe: table row is not an array");
    rows.emplace_back();
    for (const json& x : row) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw ParseError("recipe: table entry is not an index");
      rows.back().push_back(x.get<std::uint32_t>());
    }
  }
  return rows;
}

}  // namespace

FiniteGroup build_group(const json& r) {
  if (!r.is_object()) throw ParseError("recipe: expected a JSON object");
  const json& kind_v = field(r, "kind");
  if (!kind_v.is_string()) throw ParseError("recipe: 'kind' must be a string");
  const std::string kind = kind_v.get<std::string>();

  if (kind == "cyclic") return make_cyclic(positive(r, "n"));
  if (kind == "dihedral") return make_dihedral(positive(r, "n"));
  if (kind == "quaternion") return make_quaternion();
  if (kind == "alternating") return make_alternating(positive(r, "n"));
  if (kind == "symmetric") return make_symmetric(positive(r, "n"));
  if (kind == "psl2") return make_psl2(static_cast<std::uint32_t>(positive(r, "p")));
  if (kind == "product") {
    const json& f = field(r, "factors");
    if (!f.is_array() || f.size() < 2) throw ParseError("recipe: 'factors' needs at least two recipes");
    FiniteGroup acc = build_group(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) acc = direct_product(acc, build_group(f[i]));
    return acc;
  }
  if (kind == "semidirect") {
    if (r.contains("n") && r.contains("m") && r.contains("r"))
      return make_cyclic_semidirect(positive(r, "n"), positive(r, "m"), positive(r, "r"));
    const FiniteGroup n = build_group(field(r, "normal"));
    const FiniteGroup h = build_group(field(r, "complement"));
    const auto action = table_of(field(r, "action"));
    std::vector<std::vector<Element>> act(action.size());
    for (std::size_t i = 0; i < action.size(); ++i) act[i].assign(action[i].begin(), action[i].end());
    return make_semidirect(n, h, act);
  }
  if (kind == "cayley") {
    std::string label = "cayley";
    if (r.contains("label")) {
      if (!r["label"].is_string()) throw ParseError("recipe: 'label' must be a string");
      label = r["label"].get<std::string>();
    }
    return make_from_table(table_of(field(r, "table")), label);
  }
  throw ParseError("recipe: unknown kind '" + kind + "'");
}

GroupPtr build_group_ptr(const json& recipe) { return std::make_shared<const FiniteGroup>(build_group(recipe)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace ctopo
