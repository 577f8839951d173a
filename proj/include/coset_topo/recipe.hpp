#pragma once

#include <string>

#include "coset_topo/group.hpp"
#include "json.hpp"

namespace ctopo {

// Builds a group from a recipe such as
//   {"kind": "psl2", "p": 7}
//   {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "symmetric", "n": 3}]}
//   {"kind": "semidirect", "n": 7, "m": 3, "r": 2}
//   {"kind": "cayley", "table": [[0, 1], [1, 0]]}
// Unknown kinds, missing or mistyped fields raise ParseError; bad
// parameters raise GroupError; a table that is not a group raises
// InvariantViolation.
FiniteGroup build_group(const nlohmann::json& recipe);
GroupPtr build_group_ptr(const nlohmann::json& recipe);

// Reads a JSON file; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace ctopo
