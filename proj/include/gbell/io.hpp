#pragma once

#include <string>

#include "gbell/behavior.hpp"
#include "gbell/geometry.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/quantifiers.hpp"
#include "gbell/scenario.hpp"
#include "gbell/verify.hpp"

// Plain-text serialization. All writers emit canonical output (LF line
// endings, single-space separators, canonical rationals), so identical
// inputs always produce byte-identical files. All readers throw ParseError
// on malformed input.
namespace gbell::io {

// --- scenario registry ------------------------------------------------------
// Compact references used on the command line and inside files:
//   "ncycle:<n>"          n-cycle scenario
//   "pm"                  3x3 square-grid scenario
//   "alice:<m>"           m incompatible singleton-context measurements
//   "<alice>/<bob>"       composed bipartite scenario, e.g. "alice:2/ncycle:3"
bool is_bell_ref(const std::string& ref);
Scenario scenario_from_ref(const std::string& ref);
BellScenario bell_from_ref(const std::string& ref);
// Scenario carrying the coordinate layout a behavior file on `ref` uses:
// the scenario itself, or the joint scenario of a composed reference.
ScenarioPtr coordinates_from_ref(const std::string& ref);

// --- structured text files ---------------------------------------------------
// Every file starts with "format_version 1" and a "kind <what>" line and
// ends with "end".
std::string write_scenario(const Scenario& s);
Scenario read_scenario(const std::string& text);
std::string write_bell_scenario(const BellScenario& bs);
BellScenario read_bell_scenario(const std::string& text);

// Behavior files carry a registry reference plus one outcome->probability
// line per coordinate, grouped by context.
std::string write_behavior(const Behavior& b, const std::string& scenario_ref);
Behavior read_behavior(const std::string& text);

// Inequality files carry the label, the bound, the display orientation and
// one correlator term per line (coefficient, then measurement labels).
std::string write_inequality(const Inequality& iq, const std::string& scenario_ref);
Inequality read_inequality(const std::string& text);

// Decomposition certificates: value, weighted classical part, free part.
std::string write_certificate(const FractionCertificate& c);

// Check reports with a machine-readable RESULT line.
std::string write_report(const verify::CheckReport& r);

// --- polytope interchange -----------------------------------------------------
// PORTA/PANDA-style matrix files: DIM header, one row per line, rationals
// as "p/q". read(write(x)) reproduces x exactly and write is canonical, so
// round-trips are bit-exact.
std::string write_hrep(const HPolytope& h);
HPolytope read_hrep(const std::string& text);
std::string write_vrep(const VPolytope& v);
VPolytope read_vrep(const std::string& text);

// --- CSV -----------------------------------------------------------------------
// Correlator table of a behavior: header "term,value", one line per
// nonempty measurement subset (labels joined with '*').
std::string correlator_csv(const Behavior& b);

// --- small helpers ---------------------------------------------------------------
// Floats rendered with 12 significant digits.
std::string format_float(double x);
// Whole-file helpers; reading a missing file throws ParseError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace gbell::io
