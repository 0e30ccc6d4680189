#include "tperm/family_io.hpp"

#include "tperm/errors.hpp"

#include <fstream>

namespace tperm {

Json to_json(const PartialPermutation& p) {
  Json arr = Json::array();
  for (const Cell& c : p.cells()) arr.push_back(Json::array({c.row, c.col}));
  return arr;
}

Json to_json(const Family& f) {
  Json j;
  j["n"] = f.n();
  j["t"] = f.t() ? Json(*f.t()) : Json(nullptr);
  Json sets = Json::array();
  for (const auto& m : f) sets.push_back(to_json(m));
  j["sets"] = std::move(sets);
  return j;
}

PartialPermutation partial_from_json(int n, const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of [row, col] pairs");
  std::vector<Cell> cells;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
      throw ValidationError("cells must be [row, col] integer pairs");
    cells.push_back({c[0].get<int>(), c[1].get<int>()});
  }
  return PartialPermutation(n, std::move(cells));
}

Family family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw ValidationError("family JSON needs an integer \"n\"");
  int n = j["n"].get<int>();
  if (n < 1 || n > kMaxGround) throw ValidationError("\"n\" must be in [1, 255]");
  std::optional<int> t;
  if (j.contains("t") && !j["t"].is_null()) {
    if (!j["t"].is_number_integer()) throw ValidationError("\"t\" must be an integer or null");
    t = j["t"].get<int>();
  }
  if (!j.contains("sets") || !j["sets"].is_array()) throw ValidationError("family JSON needs a \"sets\" array");
  std::vector<PartialPermutation> members;
  std::size_t idx = 0;
  for (const auto& s : j["sets"]) {
    try {
      members.push_back(partial_from_json(n, s));
    } catch (const ValidationError& e) {
      throw ValidationError("member " + std::to_string(idx) + ": " + e.what());
    }
    ++idx;
  }
  return Family(n, t, std::move(members));
}

Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return family_from_json(j);
}

void save_family(const Family& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << to_json(f).dump() << "\n";
}

}  // namespace tperm
