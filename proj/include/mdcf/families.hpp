#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mdcf/expansion.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/oracle.hpp"
#include "mdcf/realembed.hpp"

namespace mdcf {

enum class FamilyKind { Trinomial, PurePower, ShiftedCubic, JPExample };

// Validated family description.  Use the *_spec constructors; they enforce
// each family's parameter constraints at construction time.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Trinomial;
    long l = 0;          // PurePower degree
    long m = 0;          // Trinomial / PurePower parameter
    long a = 0, b = 0;   // ShiftedCubic coefficients
    long k = 0, jl = 0;  // JPExample parameters (k, l)

    bool operator==(const FamilySpec&) const = default;
};

FamilySpec trinomial_spec(long m);              // m >= 3
FamilySpec purepower_spec(long l, long m);      // l >= 2, m >= 1
FamilySpec shifted_cubic_spec(long a, long b);  // b <= 3a^2 - 3
FamilySpec jp_example_spec(long k, long l);     // k >= l >= 0, k + l >= 2

// "trinomial(m=3)", "purepower(l=4,m=2)", "shifted-cubic(a=1,b=0)",
// "jp(k=2,l=1)" — and the inverse, used by fixture file headers.
std::string family_name(const FamilySpec& spec);
FamilySpec parse_family_name(const std::string& name);

// A family instantiated into a field, a pinned real root, and the initial
// state.  JPExample instances expand with jp_expand; everything else with
// cf_expand under default_strategy.
struct FamilyInstance {
    FieldPtr field;
    std::shared_ptr<RealEmbedding> embedding;
    ExpansionState state;
    PivotStrategy default_strategy = PivotStrategy::MaxNormalized;
    bool jp = false;
};

FamilyInstance family_build(const FamilySpec& spec);

// x^3 + k x^2 + l x + n  --(x -> x - k/3)-->  x^3 + p x + q.
std::pair<Rat, Rat> depress_cubic(const Rat& k, const Rat& l, const Rat& n);

// True iff the ShiftedCubic(a,b) initial state coincides, coefficient by
// coefficient, with the Trinomial(3a^2-b) initial state after the shift
// delta = gamma + a (checked by exact polynomial composition).
bool shifted_state_identity(long a, long b);

enum class RowPolicy { Strict, OracleAdjudicated };

struct TableRow {
    std::vector<Int> digits;
    RowPolicy policy = RowPolicy::Strict;

    bool operator==(const TableRow&) const = default;
};

// Literal published digit table for a family, instantiated at the spec's
// parameters.  OracleAdjudicated rows are entries whose published values
// disagree with both independent computations; verification logs them
// instead of failing on them.
struct ExpectedTable {
    std::vector<TableRow> preperiod;
    std::vector<TableRow> period;
    std::string source;

    // Row for 1-based step n, extending the period cyclically.
    const TableRow& at_step(size_t n) const;
    size_t rows() const { return preperiod.size() + period.size(); }
};

// Throws NoTableError when no digit table is published for the spec
// (PurePower with l >= 5, or l = 2).
ExpectedTable expected_table(const FamilySpec& spec);

// One compared digit row of a verification run.
struct RowReport {
    int step = 1;  // 1-based
    std::vector<Int> expected, observed;
    RowPolicy policy = RowPolicy::Strict;
    bool match = false;
};

struct Report {
    FamilySpec spec;
    PivotStrategy strategy = PivotStrategy::MaxNormalized;
    ExpandStatus status = ExpandStatus::BudgetExhausted;
    size_t observed_preperiod = 0;
    size_t observed_period = 0;
    bool has_table = false;
    size_t expected_preperiod = 0;
    size_t expected_period = 0;
    std::vector<RowReport> rows;
    std::vector<Discrepancy> discrepancies;  // published-value and oracle diffs
    bool strict_ok = true;  // all Strict rows matched, cycle shape as published
    bool oracle_ok = true;  // digit oracle agreed on every compared row
    ExpansionResult result;

    bool ok() const { return strict_ok && oracle_ok; }
};

// Expands the family, compares against the published table row by row under
// each row's policy, and cross-checks the digits against the independent
// interval oracle.  Failures are report content, not exceptions.
Report verify_family(const FamilySpec& spec, PivotStrategy strategy, size_t max_steps = 200,
                     bool run_oracle = true, size_t oracle_steps = 0);

// The oracle problem corresponding to a family run: same minimal polynomial,
// root window, and initial coordinates, rebuilt from the parameters alone so
// the oracle shares no state with the expansion engine.
OracleProblem family_oracle_problem(const FamilySpec& spec, PivotStrategy strategy);

// Fixture CSV: '# mdcf-fixture v1 family=NAME preperiod=P period=Q' header
// comment, then 'n,a_n,b_n[,c_n...],policy' rows, period rows extending the
// preperiod.  Round-trips expected_table exactly.
struct Fixture {
    FamilySpec spec;
    ExpectedTable table;
};

void write_fixture_csv(std::ostream& out, const FamilySpec& spec);
Fixture read_fixture_csv(std::istream& in);
void write_fixture_file(const std::string& path, const FamilySpec& spec);
Fixture read_fixture_file(const std::string& path);

// Filesystem-safe name for a family's fixture file, e.g.
// "purepower_l4_m2.csv", "shifted-cubic_a-1_b0.csv".
std::string fixture_filename(const FamilySpec& spec);

// Every family with a shipped digit table, in canonical order: trinomial
// m 3..12, pure-power (3, 1..8) and (4, 2..4), the shifted-cubic grid, and
// the JP fixed-point examples.
std::vector<FamilySpec> shipped_fixture_specs();

}  // namespace mdcf
