#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "mdcf/expansion.hpp"
#include "mdcf/families.hpp"

namespace mdcf {

// "periodic" / "budget-exhausted" / "left-domain".
std::string status_str(ExpandStatus status);

// "max-normalized" / "unit-pivot".
std::string strategy_str(PivotStrategy strategy);

// Accepts "max-normalized", "unit-pivot", and the alias "unit-norm-min".
PivotStrategy parse_strategy(const std::string& name);

// Versioned machine-readable document (schema 1):
//   { schema, field.minpoly, embedding.window, strategy,
//     steps: [{n, pivot (1-based), digits, state}],
//     preperiod_len, period_len, status, discrepancies }
// Rationals are "p/q" strings, polynomial coefficients lowest degree first.
// Digits are JSON integers when they fit in 64 bits and decimal strings
// otherwise.  LeftDomain runs carry an extra "violation" object.
nlohmann::json expansion_json(const ExpansionResult& res, const RatPoly& minpoly,
                              const RatInterval& window, const std::string& strategy);

// One row per step (n, a_n, b_n[, c_n...]), then a trailing annotation
// comment with the cycle shape and status.
void write_expansion_csv(std::ostream& out, const ExpansionResult& res);

// Aligned text table with a marker line where the period begins.
void write_expansion_table(std::ostream& out, const ExpansionResult& res);

nlohmann::json report_json(const Report& report);

// Human-readable verification report: one [ OK ]/[FAIL] line plus notes.
void write_report_text(std::ostream& out, const Report& report);

}  // namespace mdcf
