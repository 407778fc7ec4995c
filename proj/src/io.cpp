#include "fqg/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fqg {

namespace {

using nlohmann::json;

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::vector<int> int_array(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) throw IoError("missing array \"" + key + "\"");
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw IoError("non-integer entry in \"" + key + "\"");
    out.push_back(v.get<int>());
  }
  return out;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw IoError("matrix must be a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw IoError("ragged matrix");
    for (int c = 0; c < cols; ++c) {
      const auto& e = j[i][c];
      if (!e.is_array() || e.size() != 2) throw IoError("matrix entry must be [re, im]");
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::string round_trip_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Groupoid load_groupoid(const std::string& path) {
  json j = read_file(path);
  Groupoid g;
  g.units = int_array(j, "units");
  g.src = int_array(j, "source");
  g.tgt = int_array(j, "target");
  g.inv = int_array(j, "inverse");
  g.n = static_cast<int>(g.src.size());
  if (g.tgt.size() != g.src.size() || g.inv.size() != g.src.size())
    throw IoError("source/target/inverse lengths disagree");
  g.mul.assign(g.n, std::vector<int>(g.n, -1));
  if (!j.contains("mul") || !j["mul"].is_array()) throw IoError("missing array \"mul\"");
  for (const auto& t : j["mul"]) {
    if (!t.is_array() || t.size() != 3) throw IoError("mul entries must be [x, y, xy]");
    int x = t[0].get<int>(), y = t[1].get<int>(), z = t[2].get<int>();
    if (x < 0 || x >= g.n || y < 0 || y >= g.n || z < 0 || z >= g.n)
      throw IoError("mul index out of range");
    g.mul[x][y] = z;
  }
  try {
    return validate(std::move(g));
  } catch (const GroupoidError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_groupoid(const Groupoid& g, const std::string& path) {
  json j;
  j["units"] = g.units;
  j["source"] = g.src;
  j["target"] = g.tgt;
  j["inverse"] = g.inv;
  json mul = json::array();
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (g.mul[x][y] >= 0) mul.push_back({x, y, g.mul[x][y]});
  j["mul"] = mul;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

std::pair<std::vector<int>, std::vector<int>> load_matchpair_ids(const std::string& path) {
  json j = read_file(path);
  return {int_array(j, "h"), int_array(j, "k")};
}

void save_matchpair_ids(const std::vector<int>& h, const std::vector<int>& k,
                        const std::string& path) {
  json j;
  j["h"] = h;
  j["k"] = k;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

GroupoidAction load_action(const std::string& path) {
  json j = read_file(path);
  if (!j.contains("groupoid") || !j["groupoid"].is_string())
    throw IoError("action file needs a \"groupoid\" path");
  std::filesystem::path gp = j["groupoid"].get<std::string>();
  if (gp.is_relative()) gp = std::filesystem::path(path).parent_path() / gp;
  GroupoidAction act;
  act.mod.g = load_groupoid(gp.string());
  if (!j.contains("blocks") || !j["blocks"].is_array() ||
      j["blocks"].size() != act.mod.g.units.size())
    throw IoError("\"blocks\" must list one block-dimension list per unit");
  for (const auto& b : j["blocks"]) {
    std::vector<int> dims;
    for (const auto& v : b) {
      int d = v.get<int>();
      if (d < 1) throw IoError("block dimensions must be positive");
      dims.push_back(d);
    }
    if (dims.empty()) throw IoError("empty block list");
    act.mod.blocks.push_back(dims);
  }
  if (!j.contains("maps") || !j["maps"].is_array() ||
      static_cast<int>(j["maps"].size()) != act.mod.g.n)
    throw IoError("\"maps\" must list one matrix per groupoid element");
  for (const auto& m : j["maps"]) act.maps.push_back(mat_from_json(m));
  try {
    Report rep = validate_action(act);
    if (!rep.pass()) throw IoError(path + ": maps do not define an action");
  } catch (const std::runtime_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return act;
}

void save_action(const GroupoidAction& act, const std::string& action_path,
                 const std::string& groupoid_path) {
  save_groupoid(act.mod.g, groupoid_path);
  json j;
  j["groupoid"] = std::filesystem::path(groupoid_path).filename().string();
  j["blocks"] = act.mod.blocks;
  json maps = json::array();
  for (const Mat& m : act.maps) maps.push_back(mat_to_json(m));
  j["maps"] = maps;
  std::ofstream out(action_path);
  out << j.dump(1) << "\n";
}

std::string weakhopf_to_json(const WeakHopf& w) {
  json j;
  j["n"] = w.n;
  json basis = json::array();
  for (const Mat& b : w.basis) basis.push_back(mat_to_json(b));
  j["basis"] = basis;
  j["unit"] = mat_to_json(w.unit_op);
  j["coproduct"] = mat_to_json(w.coproduct);
  j["antipode"] = mat_to_json(w.antipode);
  j["counit"] = mat_to_json(w.counit);
  if (w.has_haar()) j["haar"] = mat_to_json(w.haar);
  return j.dump(1);
}

std::string report_to_json(const Report& rep, double tol) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"axiom", c.axiom}, {"residual", c.residual}, {"pass", c.residual < tol}});
  json j;
  j["checks"] = checks;
  j["max_residual"] = rep.max_residual();
  j["pass"] = rep.pass(tol);
  return j.dump(1);
}

std::string report_to_text(const Report& rep, double tol) {
  std::ostringstream os;
  for (const auto& c : rep.checks)
    os << (c.residual < tol ? "PASS" : "FAIL") << "  " << c.axiom << "  residual="
       << round_trip_double(c.residual) << "\n";
  os << (rep.pass(tol) ? "PASS" : "FAIL") << "  max_residual="
     << round_trip_double(rep.max_residual()) << "\n";
  return os.str();
}

}  // namespace fqg
