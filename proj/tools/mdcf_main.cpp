// Command-line front end: run expansions, verify families against their
// published digit tables, stream Jacobi-Perron digits, and manage fixture
// files.  Exit codes: 0 success (expand/jp: periodic), 2 budget exhausted,
// 3 left the algorithm's domain, 1 anything malformed.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdcf/errors.hpp"
#include "mdcf/expansion.hpp"
#include "mdcf/families.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/oracle.hpp"
#include "mdcf/rational.hpp"
#include "mdcf/realembed.hpp"
#include "mdcf/serialize.hpp"

namespace {

using namespace mdcf;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw InputError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw InputError("not an integer: '" + s + "'");
    return v;
}

// "5" -> {5}; "3..12" -> {3,4,...,12}.  The scan starts past a possible
// leading sign so "-2..2" parses.
std::vector<long> parse_range(const std::string& s) {
    size_t dots = s.find("..", 1);
    if (dots == std::string::npos) return {parse_long(s)};
    long lo = parse_long(s.substr(0, dots));
    long hi = parse_long(s.substr(dots + 2));
    if (hi < lo) throw InputError("empty range: '" + s + "'");
    std::vector<long> out;
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

// Comma-separated coefficients written highest degree first (the way
// polynomials are printed); RatPoly stores lowest first.
RatPoly poly_from_arg(const std::string& s) {
    std::vector<Rat> coeffs;
    for (const std::string& tok : split(s, ',')) coeffs.push_back(parse_rat(tok));
    std::reverse(coeffs.begin(), coeffs.end());
    return RatPoly(std::move(coeffs));
}

int exit_code(ExpandStatus status) {
    switch (status) {
        case ExpandStatus::Periodic: return 0;
        case ExpandStatus::BudgetExhausted: return 2;
        case ExpandStatus::LeftDomain: return 3;
    }
    return 1;
}

void emit_expansion(const std::string& format, const ExpansionResult& res,
                    const RatPoly& minpoly, const RatInterval& window,
                    const std::string& strategy) {
    if (format == "json")
        std::cout << expansion_json(res, minpoly, window, strategy).dump(2) << '\n';
    else if (format == "csv")
        write_expansion_csv(std::cout, res);
    else if (format == "table")
        write_expansion_table(std::cout, res);
    else
        throw InputError("unknown format: '" + format + "' (expected table, csv, or json)");
}

PivotStrategy default_strategy_of(const FamilySpec& spec) {
    return spec.kind == FamilyKind::PurePower && spec.l >= 4 ? PivotStrategy::UnitNormMin
                                                             : PivotStrategy::MaxNormalized;
}

// Appends engine-vs-oracle digit discrepancies (and a precision note when
// the oracle gave up early) to the result's log.  Periodic runs are unrolled
// so the oracle can be asked for more digits than the engine recorded.
void oracle_check(ExpansionResult& res, const OracleProblem& prob, size_t steps) {
    if (res.records.empty()) return;
    size_t want = steps ? steps : res.records.size();
    if (res.status != ExpandStatus::Periodic) want = std::min(want, res.records.size());
    std::vector<StepRecord> engine_rows =
        want > res.records.size()
            ? unroll(res, want)
            : std::vector<StepRecord>(res.records.begin(),
                                      res.records.begin() + static_cast<long>(want));

    OracleRun orun = oracle_expand(prob, want);
    std::vector<Discrepancy> diffs = cross_check(engine_rows, orun.rows);
    if (orun.precision_exhausted)
        res.discrepancies.push_back({static_cast<int>(orun.rows.size()) + 1, "precision",
                                     "oracle hit its precision ceiling",
                                     std::to_string(orun.final_bits) + " bits"});
    res.discrepancies.insert(res.discrepancies.end(), diffs.begin(), diffs.end());
}

// ---------------------------------------------------------------------------
// expand

struct ExpandArgs {
    std::string family;
    long m = 0, l = 0, a = 0, b = 0, k = 0;
    CLI::Option *om = nullptr, *ol = nullptr, *oa = nullptr, *ob = nullptr, *ok = nullptr;
    std::string minpoly_s, window_s, state_s;
    std::string strategy_s;
    long max_steps = 200;
    std::string format = "table";
    bool oracle = false;
    long oracle_steps = 0;
};

FamilySpec spec_from_flags(const ExpandArgs& a) {
    auto need = [&](const CLI::Option* opt, long v, const char* flag) {
        if (!opt->count())
            throw InputError("family '" + a.family + "' needs " + flag);
        return v;
    };
    if (a.family == "trinomial") return trinomial_spec(need(a.om, a.m, "--m"));
    if (a.family == "pure-power" || a.family == "purepower")
        return purepower_spec(need(a.ol, a.l, "--l"), need(a.om, a.m, "--m"));
    if (a.family == "shifted-cubic")
        return shifted_cubic_spec(need(a.oa, a.a, "--a"), need(a.ob, a.b, "--b"));
    if (a.family == "jp")
        return jp_example_spec(need(a.ok, a.k, "--k"), need(a.ol, a.l, "--l"));
    throw InputError("unknown family: '" + a.family +
                     "' (families: trinomial, pure-power, shifted-cubic, jp)");
}

int run_expand(const ExpandArgs& a) {
    bool family_mode = !a.family.empty();
    bool raw_mode = !a.minpoly_s.empty() || !a.window_s.empty() || !a.state_s.empty();
    if (family_mode == raw_mode)
        throw InputError("expand needs either --family or --minpoly/--window/--state");
    if (a.max_steps < 1) throw InputError("--max-steps must be >= 1");

    PivotStrategy strategy = PivotStrategy::MaxNormalized;
    bool jp = false;
    std::optional<ExpansionState> state;
    RatPoly minpoly;
    OracleProblem prob;

    if (family_mode) {
        FamilySpec spec = spec_from_flags(a);
        FamilyInstance inst = family_build(spec);
        strategy = a.strategy_s.empty() ? inst.default_strategy : parse_strategy(a.strategy_s);
        jp = inst.jp;
        prob = family_oracle_problem(spec, strategy);
        minpoly = inst.field->minpoly();
        state = inst.state;
    } else {
        if (a.minpoly_s.empty() || a.window_s.empty() || a.state_s.empty())
            throw InputError("raw expansion needs all of --minpoly, --window, --state");
        std::vector<std::string> ends = split(a.window_s, ',');
        if (ends.size() != 2) throw InputError("--window expects 'lo,hi'");
        RatInterval window(parse_rat(ends[0]), parse_rat(ends[1]));
        FieldPtr field = make_field(poly_from_arg(a.minpoly_s));
        minpoly = field->minpoly();
        auto emb = std::make_shared<RealEmbedding>(field, window);
        std::vector<FieldElement> comps;
        std::vector<RatPoly> reps;
        for (const std::string& comp : split(a.state_s, ';')) {
            comps.push_back(make_element(field, poly_from_arg(comp)));
            reps.push_back(comps.back().rep());
        }
        strategy =
            a.strategy_s.empty() ? PivotStrategy::MaxNormalized : parse_strategy(a.strategy_s);
        state = ExpansionState::create(std::move(emb), std::move(comps));
        prob = {minpoly, window, std::move(reps),
                strategy == PivotStrategy::UnitNormMin ? OracleMode::UnitNormMin
                                                       : OracleMode::MaxNormalized};
    }

    ExpansionResult res = jp ? jp_expand(*state, static_cast<int>(a.max_steps))
                             : cf_expand(*state, strategy, static_cast<int>(a.max_steps));
    if (a.oracle) oracle_check(res, prob, static_cast<size_t>(std::max(a.oracle_steps, 0L)));

    emit_expansion(a.format, res, minpoly, prob.window, jp ? "jp" : strategy_str(strategy));
    return exit_code(res.status);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string family;
    std::string ms, ls, as, bs, ks;
    std::string strategy_s;
    long max_steps = 200;
    bool no_oracle = false;
    long oracle_steps = 0;
    std::string format = "text";
    std::string fixtures_dir;
};

std::vector<FamilySpec> specs_from_ranges(const VerifyArgs& a) {
    auto need = [&](const std::string& s, const char* flag) {
        if (s.empty()) throw InputError("family '" + a.family + "' needs " + flag);
        return s;
    };
    std::vector<FamilySpec> specs;
    if (a.family == "trinomial") {
        for (long m : parse_range(need(a.ms, "--m"))) specs.push_back(trinomial_spec(m));
    } else if (a.family == "pure-power" || a.family == "purepower") {
        for (long l : parse_range(need(a.ls, "--l")))
            for (long m : parse_range(need(a.ms, "--m"))) specs.push_back(purepower_spec(l, m));
    } else if (a.family == "shifted-cubic") {
        for (long av : parse_range(need(a.as, "--a"))) {
            std::vector<long> bvals = need(a.bs, "--b") == "auto"
                                          ? std::vector<long>{3 * av * av - 3}
                                          : parse_range(a.bs);
            for (long bv : bvals) specs.push_back(shifted_cubic_spec(av, bv));
        }
    } else if (a.family == "jp") {
        for (long k : parse_range(need(a.ks, "--k")))
            for (long l : parse_range(need(a.ls, "--l"))) specs.push_back(jp_example_spec(k, l));
    } else {
        throw InputError("unknown family: '" + a.family +
                         "' (families: trinomial, pure-power, shifted-cubic, jp)");
    }
    return specs;
}

// Shipped fixture CSVs must parse, name the same family, and agree row for
// row with the built-in table.  Families without a table are skipped.
bool check_fixture(const std::string& dir, const FamilySpec& spec, std::string& note) {
    ExpectedTable want;
    try {
        want = expected_table(spec);
    } catch (const NoTableError&) {
        return true;
    }
    std::string path = dir + "/" + fixture_filename(spec);
    try {
        Fixture fx = read_fixture_file(path);
        if (fx.spec != spec || fx.table.preperiod != want.preperiod ||
            fx.table.period != want.period) {
            note = "fixture disagrees with built-in table: " + path;
            return false;
        }
    } catch (const Error& e) {
        note = std::string("fixture check failed: ") + e.what();
        return false;
    }
    return true;
}

int run_verify(const VerifyArgs& a) {
    if (a.max_steps < 1) throw InputError("--max-steps must be >= 1");
    if (a.format != "text" && a.format != "json")
        throw InputError("unknown format: '" + a.format + "' (expected text or json)");
    std::vector<FamilySpec> specs = specs_from_ranges(a);

    bool all_ok = true;
    nlohmann::json jreports = nlohmann::json::array();
    for (const FamilySpec& spec : specs) {
        PivotStrategy strategy =
            a.strategy_s.empty() ? default_strategy_of(spec) : parse_strategy(a.strategy_s);
        Report rep = verify_family(spec, strategy, static_cast<size_t>(a.max_steps),
                                   !a.no_oracle, static_cast<size_t>(std::max(a.oracle_steps, 0L)));

        std::string fixture_note;
        bool fixture_ok =
            a.fixtures_dir.empty() || check_fixture(a.fixtures_dir, spec, fixture_note);

        if (a.format == "json") {
            nlohmann::json jr = report_json(rep);
            if (!a.fixtures_dir.empty()) {
                jr["fixture_ok"] = fixture_ok;
                if (!fixture_note.empty()) jr["fixture_note"] = fixture_note;
            }
            jreports.push_back(std::move(jr));
        } else {
            write_report_text(std::cout, rep);
            if (!fixture_note.empty()) std::cout << "       " << fixture_note << '\n';
        }
        all_ok = all_ok && rep.ok() && fixture_ok;
    }

    if (a.format == "json")
        std::cout << nlohmann::json{{"schema", 1}, {"ok", all_ok}, {"reports", jreports}}.dump(2)
                  << '\n';
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// jp

struct JpArgs {
    long k = 0, l = 0;
    long steps = 100;
    std::string format = "table";
    bool oracle = false;
};

int run_jp(const JpArgs& a) {
    if (a.steps < 1) throw InputError("--steps must be >= 1");
    FamilySpec spec = jp_example_spec(a.k, a.l);
    FamilyInstance inst = family_build(spec);
    ExpansionResult res = jp_expand(inst.state, static_cast<int>(a.steps));

    OracleProblem prob = family_oracle_problem(spec, PivotStrategy::MaxNormalized);
    if (a.oracle) oracle_check(res, prob, static_cast<size_t>(a.steps));

    // The digit stream: exactly --steps rows when the expansion is periodic.
    ExpansionResult view = res;
    if (res.status == ExpandStatus::Periodic && static_cast<size_t>(a.steps) > res.records.size())
        view.records = unroll(res, static_cast<size_t>(a.steps));

    emit_expansion(a.format, view, inst.field->minpoly(), prob.window, "jp");
    return exit_code(res.status);
}

// ---------------------------------------------------------------------------
// fixtures

int run_fixtures(const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<FamilySpec> specs = shipped_fixture_specs();
    for (const FamilySpec& spec : specs)
        write_fixture_file(dir + "/" + fixture_filename(spec), spec);
    std::cout << "wrote " << specs.size() << " fixture files to " << dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multidimensional continued fraction expansions of algebraic numbers"};
    app.require_subcommand(1);

    auto* expand = app.add_subcommand("expand", "run one expansion and print the digit rows");
    ExpandArgs ea;
    expand->add_option("--family", ea.family,
                       "built-in family: trinomial, pure-power, shifted-cubic, jp");
    ea.om = expand->add_option("--m", ea.m, "family parameter m");
    ea.ol = expand->add_option("--l", ea.l, "family parameter l (degree)");
    ea.oa = expand->add_option("--a", ea.a, "shifted-cubic parameter a");
    ea.ob = expand->add_option("--b", ea.b, "shifted-cubic parameter b");
    ea.ok = expand->add_option("--k", ea.k, "jp parameter k");
    expand->add_option("--minpoly", ea.minpoly_s,
                       "defining polynomial, coefficients highest degree first");
    expand->add_option("--window", ea.window_s, "root window 'lo,hi' isolating one real root");
    expand->add_option("--state", ea.state_s,
                       "initial components 'poly;poly;...', coefficients highest degree first");
    expand->add_option("--strategy", ea.strategy_s,
                       "pivot strategy: max-normalized or unit-pivot");
    expand->add_option("--max-steps", ea.max_steps, "step budget")->capture_default_str();
    expand->add_option("--format", ea.format, "output: table, csv, json")->capture_default_str();
    expand->add_flag("--oracle", ea.oracle, "cross-check digits against the interval oracle");
    expand->add_option("--oracle-steps", ea.oracle_steps,
                       "digits to cross-check (default: every emitted row)");

    auto* verify = app.add_subcommand("verify", "check families against their published tables");
    VerifyArgs va;
    verify->add_option("--family", va.family,
                       "family: trinomial, pure-power, shifted-cubic, jp")
        ->required();
    verify->add_option("--m", va.ms, "m value or range 'lo..hi'");
    verify->add_option("--l", va.ls, "l value or range 'lo..hi'");
    verify->add_option("--a", va.as, "a value or range 'lo..hi'");
    verify->add_option("--b", va.bs, "b value, range 'lo..hi', or 'auto' (= 3a^2-3)");
    verify->add_option("--k", va.ks, "k value or range 'lo..hi'");
    verify->add_option("--strategy", va.strategy_s,
                       "pivot strategy (default: the family's own)");
    verify->add_option("--max-steps", va.max_steps, "step budget per family")
        ->capture_default_str();
    verify->add_flag("--no-oracle", va.no_oracle, "skip the interval-oracle cross-check");
    verify->add_option("--oracle-steps", va.oracle_steps,
                       "digits to cross-check (default: every emitted row)");
    verify->add_option("--format", va.format, "output: text, json")->capture_default_str();
    verify->add_option("--fixtures", va.fixtures_dir,
                       "also check the fixture CSV for each family under this directory");

    auto* jp = app.add_subcommand("jp", "stream classical Jacobi-Perron digits");
    JpArgs ja;
    jp->add_option("--k", ja.k, "parameter k (alpha^3 = k alpha^2 + l alpha + 1)")->required();
    jp->add_option("--l", ja.l, "parameter l")->required();
    jp->add_option("--steps", ja.steps, "digit rows to print")->capture_default_str();
    jp->add_option("--format", ja.format, "output: table, csv, json")->capture_default_str();
    jp->add_flag("--oracle", ja.oracle, "cross-check digits against the interval oracle");

    auto* fixtures = app.add_subcommand("fixtures", "write every shipped digit-table fixture");
    std::string fixtures_out = "fixtures";
    fixtures->add_option("--dir", fixtures_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*expand) return run_expand(ea);
        if (*verify) return run_verify(va);
        if (*jp) return run_jp(ja);
        if (*fixtures) return run_fixtures(fixtures_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
