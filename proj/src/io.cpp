#include "dtfe/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dtfe {

namespace {

void write_double(std::ostream& out, double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  out << s.str();
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
  out << (pattern.dim == 1 ? "x,ghost" : "x,y,ghost") << "\r\n";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    write_double(out, pattern.pts[i][0]);
    if (pattern.dim == 2) {
      out << ',';
      write_double(out, pattern.pts[i][1]);
    }
    out << ',' << int(pattern.ghost[i]) << "\r\n";
  }
}

PointPattern read_pattern_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("pattern csv: missing header");
  const std::string header = strip_cr(line);
  PointPattern pat;
  if (header == "x,ghost") {
    pat.dim = 1;
  } else if (header == "x,y,ghost") {
    pat.dim = 2;
  } else {
    throw std::invalid_argument("pattern csv: unrecognized header");
  }
  while (std::getline(in, line)) {
    const std::string row = strip_cr(line);
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    if (fields.size() != static_cast<std::size_t>(pat.dim) + 1)
      throw std::invalid_argument("pattern csv: wrong field count");
    Point p{0.0, 0.0};
    std::size_t pos = 0;
    p[0] = std::stod(fields[0], &pos);
    if (pat.dim == 2) p[1] = std::stod(fields[1]);
    const std::string& g = fields.back();
    if (g != "0" && g != "1")
      throw std::invalid_argument("pattern csv: ghost flag must be 0 or 1");
    pat.push(p, g == "1");
  }
  return pat;
}

nlohmann::ordered_json tessellation_json(const Tessellation& tess) {
  // build the arrays locally: inserting a key into an ordered document
  // reallocates its backing storage and would dangle earlier references
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tess.points.size(); ++i) {
    if (tess.dim == 1)
      points.push_back({tess.points[i][0]});
    else
      points.push_back({tess.points[i][0], tess.points[i][1]});
  }
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  nlohmann::ordered_json nbrs = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < tess.cells.size(); ++j) {
    nlohmann::ordered_json c = nlohmann::ordered_json::array();
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (int k = 0; k <= tess.dim; ++k) {
      c.push_back(tess.cells[j][k]);
      a.push_back(tess.cell_adj[j][k]);
    }
    cells.push_back(std::move(c));
    nbrs.push_back(std::move(a));
  }
  nlohmann::ordered_json jit = nlohmann::ordered_json::array();
  for (const auto& j : tess.jitter) {
    nlohmann::ordered_json row;
    row["point"] = j.point;
    row["offset"] = tess.dim == 1
                        ? nlohmann::ordered_json::array({j.offset[0]})
                        : nlohmann::ordered_json::array(
                              {j.offset[0], j.offset[1]});
    jit.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["dim"] = tess.dim;
  doc["points"] = std::move(points);
  doc["ghost"] = tess.ghost;
  doc["cells"] = std::move(cells);
  doc["neighbors"] = std::move(nbrs);
  doc["volumes"] = tess.cell_volume;
  doc["jitter"] = std::move(jit);
  doc["hull_volume"] = tess.hull_volume();
  return doc;
}

void write_field_csv(std::ostream& out, const IntensityEstimate& est) {
  out << "cell_id,value,volume\r\n";
  if (!est.tessellated) {
    out << "0,";
    write_double(out, est.constant_value);
    out << ',';
    write_double(out, est.window.volume());
    out << "\r\n";
    return;
  }
  for (std::size_t j = 0; j < est.cell_value.size(); ++j) {
    out << j << ',';
    write_double(out, est.cell_value[j]);
    out << ',';
    write_double(out, est.tess.cell_volume[j]);
    out << "\r\n";
  }
}

nlohmann::ordered_json moment_report_json(const MomentReport& report) {
  nlohmann::ordered_json doc;
  doc["replicates"] = report.replicates;
  doc["mean"] = report.mean;
  doc["variance"] = report.variance;
  doc["se_mean"] = report.se_mean;
  doc["se_variance"] = report.se_variance;
  doc["min"] = report.min;
  doc["max"] = report.max;
  return doc;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("experiment config must be an object");
  for (const char* key :
       {"dim", "window", "intensity", "x0", "bandwidth", "replicates",
        "seed"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("experiment config: missing ") +
                                  key);
  ExperimentConfig cfg;
  cfg.dim = doc.at("dim").get<int>();
  if (cfg.dim != 1 && cfg.dim != 2)
    throw std::invalid_argument("experiment config: dim must be 1 or 2");
  const auto& win = doc.at("window");
  if (!win.is_array() ||
      win.size() != static_cast<std::size_t>(2 * cfg.dim))
    throw std::invalid_argument(
        "experiment config: window needs 2 bounds per dimension");
  cfg.window = cfg.dim == 1
                   ? Window::interval(win[0].get<double>(),
                                      win[1].get<double>())
                   : Window::rect(win[0].get<double>(), win[1].get<double>(),
                                  win[2].get<double>(), win[3].get<double>());
  cfg.intensity = doc.at("intensity").get<std::string>();
  IntensityFunction::parse(cfg.intensity);  // fail early on bad specs
  const auto& x0 = doc.at("x0");
  if (!x0.is_array() || x0.size() != static_cast<std::size_t>(cfg.dim))
    throw std::invalid_argument(
        "experiment config: x0 needs one coordinate per dimension");
  cfg.x0[0] = x0[0].get<double>();
  if (cfg.dim == 2) cfg.x0[1] = x0[1].get<double>();
  cfg.bandwidth = doc.at("bandwidth").get<double>();
  if (!(cfg.bandwidth > 0.0))
    throw std::invalid_argument("experiment config: bandwidth must be > 0");
  cfg.replicates = doc.at("replicates").get<long>();
  if (cfg.replicates < 1)
    throw std::invalid_argument("experiment config: replicates must be >= 1");
  cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("bound")) cfg.bound = doc["bound"].get<double>();
  if (doc.contains("parallel")) cfg.parallel = doc["parallel"].get<bool>();
  return cfg;
}

namespace {

bool type_matches(const std::string& type, const nlohmann::json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

bool validate_node(const nlohmann::json& schema, const nlohmann::json& doc,
                   const std::string& path, std::string* error) {
  auto fail = [&](const std::string& why) {
    if (error) *error = path + ": " + why;
    return false;
  };
  if (!schema.is_object()) return true;
  if (schema.contains("type") &&
      !type_matches(schema["type"].get<std::string>(), doc))
    return fail("expected type " + schema["type"].get<std::string>());
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& v : schema["enum"]) hit = hit || v == doc;
    if (!hit) return fail("value not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"])
      if (!doc.contains(key.get<std::string>()))
        return fail("missing required key " + key.get<std::string>());
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items())
      if (doc.contains(key) &&
          !validate_node(sub, doc[key], path + "/" + key, error))
        return false;
  }
  if (schema.contains("items") && doc.is_array()) {
    std::size_t i = 0;
    for (const auto& item : doc) {
      if (!validate_node(schema["items"], item,
                         path + "/" + std::to_string(i), error))
        return false;
      ++i;
    }
  }
  return true;
}

}  // namespace

bool validate_against_schema(const nlohmann::json& schema,
                             const nlohmann::json& doc, std::string* error) {
  if (error) error->clear();
  return validate_node(schema, doc, "#", error);
}

}  // namespace dtfe
