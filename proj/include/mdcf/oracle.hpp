#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mdcf/expansion.hpp"
#include "mdcf/interval.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/polynomial.hpp"
#include "mdcf/rational.hpp"

namespace mdcf {

// Norm of a via the resultant path: Res(f, rep(a)) for the monic minimal
// polynomial f.  Independent of the multiplication-matrix determinant used
// by elem_norm.
Rat resultant_norm(const FieldElement& a);

// True iff the matrix-determinant and resultant norms agree exactly.
bool norm_cross_check(const FieldElement& a);

enum class OracleMode { MaxNormalized, UnitNormMin, JP };

// Self-contained description of an expansion for the oracle.  The oracle
// never touches FieldElement arithmetic: components are carried as plain
// power-basis polynomials, reduced with ordinary polynomial division, and
// every numeric decision (pivot comparison, floor) is made from certified
// rational intervals around the tracked root.
struct OracleProblem {
    RatPoly minpoly;               // squarefree, degree >= 2; made monic internally
    RatInterval window;            // isolates exactly one real root
    std::vector<RatPoly> initial;  // power-basis reps of the initial components
    OracleMode mode = OracleMode::MaxNormalized;
};

struct OracleRun {
    std::vector<std::vector<Int>> rows;  // certified digit rows, one per step
    size_t requested = 0;
    // True when an ambiguous floor or comparison survived the precision
    // ceiling; rows then holds the digits certified before the stall.
    bool precision_exhausted = false;
    unsigned long final_bits = 0;  // interval precision in force at the end
};

// Re-derives digit rows with interval arithmetic only.  Ambiguity triggers
// a restart of the interval layer at doubled precision (the exact reps make
// the recomputation local); hitting max_bits is reported, not thrown.
OracleRun oracle_expand(const OracleProblem& prob, size_t steps,
                        unsigned long start_bits = 128,
                        unsigned long max_bits = 16384);

// Positional diff of the engine's digit rows against the oracle's.  Empty
// means full agreement over the shorter prefix and equal row counts.
std::vector<Discrepancy> cross_check(const std::vector<StepRecord>& exact,
                                     const std::vector<std::vector<Int>>& oracle_rows);

// Renders a digit row as "(d1,d2,...)" for reports and discrepancy logs.
std::string digit_row_str(const std::vector<Int>& row);

}  // namespace mdcf
