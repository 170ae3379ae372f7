#pragma once

#include <string>

#include "cnz/cluster.hpp"
#include "cnz/geometry.hpp"

namespace cnz {

// Sequence files: {"B": [[...]], "m": [1,2,...], "sigma": [[2,1], "(1 2)", ...]}.
// "sigma" may be omitted (all identity) and its entries may be one-line
// arrays or cycle-notation strings. "m" may be omitted for matrix-only uses.
// All failures throw errc::parse_error.
MutationSequence parse_sequence_json(const std::string& text);

// {"edges": 3, "triangles": [[1,2,3],[1,2,3]]}
Triangulation parse_triangulation_json(const std::string& text);

std::string read_file(const std::string& path);  // throws parse_error when unreadable

}  // namespace cnz
