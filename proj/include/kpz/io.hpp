#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpz/hypotheses.hpp"

// Output artifacts and flat key=value config files. Summary JSON is emitted
// with fixed key order so identical (config, seed) runs are byte-identical.

namespace kpz {

struct CheckLine {
  std::string name;
  double statistic = 0;
  std::string op;  // "<=", ">=", "==0", "true"
  double threshold = 0;
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckLine> checks;
  std::vector<std::pair<std::string, double>> scalars;
  std::map<std::string, std::vector<double>> sample_sets;
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> tables;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline nlohmann::ordered_json result_to_json(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.name;
  j["claim"] = r.claim;
  nlohmann::ordered_json jp = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) jp[k] = v;
  j["params"] = jp;
  nlohmann::ordered_json jc = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["statistic"] = c.statistic;
    e["op"] = c.op;
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    jc.push_back(e);
  }
  j["checks"] = jc;
  nlohmann::ordered_json js = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.scalars) js[k] = v;
  j["scalars"] = js;
  j["pass"] = r.pass();
  return j;
}

inline void write_artifacts(const ExperimentResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream os(out_dir + "/summary.json");
    os << result_to_json(r).dump(2) << "\n";
  }
  {
    std::ofstream os(out_dir + "/samples.csv");
    os << "set,value\n";
    os.precision(12);
    for (const auto& [name, xs] : r.sample_sets)
      for (double v : xs) os << name << "," << v << "\n";
  }
  {
    std::ofstream os(out_dir + "/tables.csv");
    os << "table,x,y\n";
    os.precision(12);
    for (const auto& [name, rows] : r.tables)
      for (const auto& [x, y] : rows) os << name << "," << x << "," << y << "\n";
  }
}

// hypothesis validation reports: per-condition booleans and margins
inline nlohmann::ordered_json validation_report_to_json(const ValidationReport& rep) {
  nlohmann::ordered_json j;
  j["pass"] = rep.pass;
  nlohmann::ordered_json per_n = nlohmann::ordered_json::array();
  for (const auto& pn : rep.per_n) {
    nlohmann::ordered_json e;
    e["N"] = pn.N;
    e["pass"] = pn.pass;
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& c : pn.conditions) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["ok"] = c.ok;
      cj["margin"] = c.margin;
      conds.push_back(cj);
    }
    e["conditions"] = conds;
    per_n.push_back(e);
  }
  j["per_N"] = per_n;
  return j;
}

// flat key=value config, '#' comments
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (!k.empty()) kv[k] = v;
  }
  return kv;
}

}  // namespace kpz
