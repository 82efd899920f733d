#pragma once

#include <string>

#include "weightlab/experiments.hpp"

namespace weightlab {

// CSV form: an optional sweep-table section (its own header, plus a trailing
// "config" column), a blank line, then one row per inequality check with
// columns theorem,check,lhs,rhs,tol,slack,pass,config. The config field is a
// quoted "key=value;..." echo of every hypothesis, so each row can be re-run
// in isolation. All numbers use the deterministic "%.17g" formatting.
std::string report_to_csv(const TheoremReport&);

// JSON envelope: id, hypotheses (ordered), warnings, checks, table, all_pass.
std::string report_to_json(const TheoremReport&);

// Writes <base>.csv and <base>.json.
void write_report_files(const TheoremReport&, const std::string& base);

}  // namespace weightlab
