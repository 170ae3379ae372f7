#include "cnz/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cnz {

namespace {

using Json = nlohmann::json;

IMat parse_int_matrix(const Json& j, const std::string& what) {
  require(j.is_array() && !j.empty(), errc::parse_error, what + " must be a non-empty array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  IMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(j[i].is_array() && static_cast<int>(j[i].size()) == cols, errc::parse_error,
            what + " rows must have equal length");
    for (int c = 0; c < cols; ++c) {
      require(j[i][c].is_number_integer(), errc::parse_error, what + " entries must be integers");
      m(i, c) = j[i][c].get<int64_t>();
    }
  }
  return m;
}

}  // namespace

MutationSequence parse_sequence_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("B"), errc::parse_error, "missing \"B\" field");
  ExchangeMatrix B = validate_exchange_matrix(parse_int_matrix(j["B"], "B"));

  std::vector<int> m;
  if (j.contains("m")) {
    require(j["m"].is_array(), errc::parse_error, "\"m\" must be an array");
    for (const auto& v : j["m"]) {
      require(v.is_number_integer(), errc::parse_error, "\"m\" entries must be integers");
      m.push_back(v.get<int>());
    }
  }

  std::vector<Permutation> sigma;
  if (j.contains("sigma")) {
    require(j["sigma"].is_array(), errc::parse_error, "\"sigma\" must be an array");
    for (const auto& s : j["sigma"]) {
      if (s.is_string()) {
        sigma.push_back(Permutation::from_cycles(s.get<std::string>(), B.n));
      } else if (s.is_array()) {
        std::vector<int> line;
        for (const auto& v : s) {
          require(v.is_number_integer(), errc::parse_error, "permutation entries must be integers");
          line.push_back(v.get<int>());
        }
        require(static_cast<int>(line.size()) == B.n, errc::parse_error,
                "one-line permutation has wrong length");
        sigma.push_back(Permutation::from_one_line(line));
      } else {
        fail(errc::parse_error, "sigma entries must be arrays or cycle strings");
      }
    }
  }
  try {
    return make_sequence(std::move(B), std::move(m), std::move(sigma));
  } catch (const error& e) {
    fail(errc::parse_error, e.what());
  }
}

Triangulation parse_triangulation_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("edges") && j.contains("triangles"), errc::parse_error,
          "triangulation needs \"edges\" and \"triangles\"");
  require(j["edges"].is_number_integer(), errc::parse_error, "\"edges\" must be an integer");
  Triangulation tri;
  tri.num_edges = j["edges"].get<int>();
  for (const auto& t : j["triangles"]) {
    require(t.is_array() && t.size() == 3, errc::parse_error, "triangles must be triples");
    std::array<int, 3> tr;
    for (int s = 0; s < 3; ++s) {
      require(t[s].is_number_integer(), errc::parse_error, "triangle entries must be integers");
      tr[s] = t[s].get<int>();
    }
    tri.triangles.push_back(tr);
  }
  return tri;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::parse_error, "cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace cnz
