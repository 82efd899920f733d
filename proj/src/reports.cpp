#include "weightlab/reports.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace weightlab {

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string config_string(const TheoremReport& rep) {
  std::string s;
  for (size_t i = 0; i < rep.hypotheses.size(); ++i) {
    if (i) s += ";";
    s += rep.hypotheses[i].first + "=" + rep.hypotheses[i].second;
  }
  return s;
}

}  // namespace

std::string report_to_csv(const TheoremReport& rep) {
  const std::string cfg = csv_quote(config_string(rep));
  std::string out;
  if (!rep.table_columns.empty()) {
    for (size_t j = 0; j < rep.table_columns.size(); ++j) {
      if (j) out += ",";
      out += rep.table_columns[j];
    }
    out += ",config\n";
    for (const auto& row : rep.table_rows) {
      for (size_t j = 0; j < row.size(); ++j) {
        if (j) out += ",";
        out += fmt_double(row[j]);
      }
      out += "," + cfg + "\n";
    }
    out += "\n";
  }
  out += "theorem,check,lhs,rhs,tol,slack,pass,config\n";
  for (const InequalityCheck& c : rep.checks) {
    out += rep.id + "," + c.name + "," + fmt_double(c.lhs) + "," + fmt_double(c.rhs) +
           "," + fmt_double(c.tol) + "," + fmt_double(c.slack) + "," +
           (c.pass ? "true" : "false") + "," + cfg + "\n";
  }
  return out;
}

std::string report_to_json(const TheoremReport& rep) {
  nlohmann::ordered_json j;
  j["format"] = "weightlab-report v1";
  j["id"] = rep.id;
  j["all_pass"] = rep.all_pass;
  j["hypotheses"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.hypotheses) j["hypotheses"][k] = v;
  j["warnings"] = rep.warnings;
  j["checks"] = nlohmann::ordered_json::array();
  for (const InequalityCheck& c : rep.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["tol"] = c.tol;
    jc["slack"] = c.slack;
    jc["pass"] = c.pass;
    j["checks"].push_back(std::move(jc));
  }
  if (!rep.table_columns.empty()) {
    j["table"]["columns"] = rep.table_columns;
    j["table"]["rows"] = rep.table_rows;
  }
  return j.dump(2) + "\n";
}

void write_report_files(const TheoremReport& rep, const std::string& base) {
  {
    std::ofstream os(base + ".csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + base + ".csv");
    os << report_to_csv(rep);
  }
  {
    std::ofstream os(base + ".json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + base + ".json");
    os << report_to_json(rep);
  }
}

}  // namespace weightlab
