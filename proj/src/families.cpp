#include "mdcf/families.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <utility>

#include "mdcf/errors.hpp"
#include "mdcf/oracle.hpp"

namespace mdcf {

namespace {

std::vector<Int> irow(std::initializer_list<long> ds) {
    std::vector<Int> v;
    v.reserve(ds.size());
    for (long d : ds) v.emplace_back(d);
    return v;
}

// x^l - (m^l + 1), lowest degree first.
RatPoly purepower_minpoly(long l, long m) {
    Rat c = rat_pow(Rat(m), static_cast<unsigned long>(l)) + 1;
    return RatPoly::monomial(static_cast<size_t>(l)) - RatPoly::constant(c);
}

// x^3 + 3a x^2 + b x + (ab - 2a^3 + 1).
RatPoly shifted_minpoly(long a, long b) {
    Rat n = Rat(a) * Rat(b) - 2 * rat_pow(Rat(a), 3) + 1;
    return RatPoly{n, Rat(b), Rat(3 * a), Rat(1)};
}

// x^3 - k x^2 - l x - 1.
RatPoly jp_minpoly(long k, long l) {
    return RatPoly{Rat(-1), Rat(-l), Rat(-k), Rat(1)};
}

RatPoly trinomial_minpoly(long m) { return RatPoly{Rat(1), Rat(-m), Rat(0), Rat(1)}; }

}  // namespace

FamilySpec trinomial_spec(long m) {
    if (m < 3) throw InputError("trinomial family requires m >= 3");
    FamilySpec s;
    s.kind = FamilyKind::Trinomial;
    s.m = m;
    return s;
}

FamilySpec purepower_spec(long l, long m) {
    if (l < 2) throw InputError("pure-power family requires l >= 2");
    if (m < 1) throw InputError("pure-power family requires m >= 1");
    FamilySpec s;
    s.kind = FamilyKind::PurePower;
    s.l = l;
    s.m = m;
    return s;
}

FamilySpec shifted_cubic_spec(long a, long b) {
    if (b > 3 * a * a - 3) throw InputError("shifted cubic requires b <= 3a^2 - 3");
    FamilySpec s;
    s.kind = FamilyKind::ShiftedCubic;
    s.a = a;
    s.b = b;
    return s;
}

FamilySpec jp_example_spec(long k, long l) {
    if (l < 0 || k < l || k + l < 2)
        throw InputError("JP example requires k >= l >= 0 and k + l >= 2");
    FamilySpec s;
    s.kind = FamilyKind::JPExample;
    s.k = k;
    s.jl = l;
    return s;
}

std::string family_name(const FamilySpec& spec) {
    std::ostringstream os;
    switch (spec.kind) {
        case FamilyKind::Trinomial:
            os << "trinomial(m=" << spec.m << ')';
            break;
        case FamilyKind::PurePower:
            os << "purepower(l=" << spec.l << ",m=" << spec.m << ')';
            break;
        case FamilyKind::ShiftedCubic:
            os << "shifted-cubic(a=" << spec.a << ",b=" << spec.b << ')';
            break;
        case FamilyKind::JPExample:
            os << "jp(k=" << spec.k << ",l=" << spec.jl << ')';
            break;
    }
    return os.str();
}

FamilySpec parse_family_name(const std::string& name) {
    static const std::regex shape(R"(^([a-z-]+)\(([^()]*)\)$)");
    std::smatch m;
    if (!std::regex_match(name, m, shape))
        throw InputError("malformed family name: " + name);
    std::map<std::string, long> args;
    std::string body = m[2].str();
    std::istringstream is(body);
    std::string part;
    while (std::getline(is, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InputError("malformed family argument: " + part);
        try {
            size_t used = 0;
            long v = std::stol(part.substr(eq + 1), &used);
            if (used != part.size() - eq - 1) throw std::invalid_argument(part);
            args[part.substr(0, eq)] = v;
        } catch (const std::exception&) {
            throw InputError("malformed family argument: " + part);
        }
    }
    auto need = [&](const char* key) {
        auto it = args.find(key);
        if (it == args.end())
            throw InputError(std::string("family name missing argument ") + key);
        return it->second;
    };
    const std::string head = m[1].str();
    if (head == "trinomial" && args.size() == 1) return trinomial_spec(need("m"));
    if (head == "purepower" && args.size() == 2) return purepower_spec(need("l"), need("m"));
    if (head == "shifted-cubic" && args.size() == 2)
        return shifted_cubic_spec(need("a"), need("b"));
    if (head == "jp" && args.size() == 2) return jp_example_spec(need("k"), need("l"));
    throw InputError("unknown family: " + name);
}

FamilyInstance family_build(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::Trinomial: {
            FieldPtr field = make_field(trinomial_minpoly(spec.m));
            auto emb = std::make_shared<RealEmbedding>(
                select_root(field, RatInterval(Rat(0), Rat(1))));
            FieldElement d = gen_element(field);
            return {field, emb, ExpansionState::create(emb, {d, d * d}),
                    PivotStrategy::MaxNormalized, false};
        }
        case FamilyKind::PurePower: {
            FieldPtr field = make_field(purepower_minpoly(spec.l, spec.m));
            auto emb = std::make_shared<RealEmbedding>(
                select_root(field, RatInterval(Rat(spec.m), Rat(spec.m + 1))));
            FieldElement theta = gen_element(field);
            std::vector<FieldElement> comps;
            for (long k = 1; k < spec.l; ++k)
                comps.push_back(elem_pow(theta, static_cast<unsigned long>(k)) -
                                rat_pow(Rat(spec.m), static_cast<unsigned long>(k)));
            return {field, emb, ExpansionState::create(emb, std::move(comps)),
                    spec.l >= 4 ? PivotStrategy::UnitNormMin : PivotStrategy::MaxNormalized,
                    false};
        }
        case FamilyKind::ShiftedCubic: {
            FieldPtr field = make_field(shifted_minpoly(spec.a, spec.b));
            auto emb = std::make_shared<RealEmbedding>(
                select_root(field, RatInterval(Rat(-spec.a), Rat(-spec.a + 1))));
            // floor(gamma) = -a on the constraint set, so the fractional part
            // of the root is gamma + a
            FieldElement frac = gen_element(field) + Rat(spec.a);
            return {field, emb, ExpansionState::create(emb, {frac, frac * frac}),
                    PivotStrategy::MaxNormalized, false};
        }
        case FamilyKind::JPExample: {
            FieldPtr field = make_field(jp_minpoly(spec.k, spec.jl));
            auto emb = std::make_shared<RealEmbedding>(
                select_root(field, RatInterval(Rat(spec.k), Rat(spec.k + 1))));
            FieldElement alpha = gen_element(field);
            return {field, emb,
                    ExpansionState::create(emb, {alpha.inverse(), alpha - Rat(spec.k)}),
                    PivotStrategy::MaxNormalized, true};
        }
    }
    throw InputError("unreachable family kind");
}

std::pair<Rat, Rat> depress_cubic(const Rat& k, const Rat& l, const Rat& n) {
    Rat p = l - k * k / 3;
    Rat q = n - k * l / 3 + 2 * k * k * k / 27;
    return {std::move(p), std::move(q)};
}

bool shifted_state_identity(long a, long b) {
    if (b > 3 * a * a - 3) throw InputError("shifted cubic requires b <= 3a^2 - 3");
    // gamma = delta - a: composing the shifted cubic with x - a must land
    // exactly on the trinomial x^3 - (3a^2-b)x + 1, which simultaneously
    // maps the state (gamma+a, (gamma+a)^2) onto (delta, delta^2)
    RatPoly shift{Rat(-a), Rat(1)};
    return shifted_minpoly(a, b).compose(shift) == trinomial_minpoly(3 * a * a - b);
}

const TableRow& ExpectedTable::at_step(size_t n) const {
    if (n < 1) throw InputError("table rows are 1-based");
    if (n <= preperiod.size()) return preperiod[n - 1];
    if (period.empty()) throw InputError("table has no period rows");
    return period[(n - 1 - preperiod.size()) % period.size()];
}

ExpectedTable expected_table(const FamilySpec& spec) {
    ExpectedTable t;
    switch (spec.kind) {
        case FamilyKind::Trinomial: {
            long m = spec.m;
            t.preperiod = {{irow({m - 1, 0})}, {irow({1, 0})}, {irow({0, m - 1})}};
            t.period = {{irow({0, 1})}, {irow({m - 2, 1})}, {irow({1, 0})}, {irow({1, m - 2})}};
            t.source = "trinomial reference table";
            return t;
        }
        case FamilyKind::PurePower: {
            long m = spec.m;
            if (spec.l == 3) {
                if (m == 1) {
                    t.period = {{irow({0, 1})}, {irow({2, 1})}};
                    t.source = "cube-root reference table, m=1";
                    return t;
                }
                // the published n=1 a-digit (2m^2) disagrees with both
                // independent digit paths; the row is adjudicated, not asserted
                t.preperiod = {{irow({2 * m * m, 2 * m}), RowPolicy::OracleAdjudicated}};
                t.period = {{irow({3 * m, 3 * m * m})}, {irow({3 * m * m, 3 * m})}};
                t.source = "cube-root reference table";
                return t;
            }
            if (spec.l == 4) {
                t.preperiod = {{irow({4 * m * m * m, 2 * m, 3 * m * m})},
                               {irow({6 * m * m, 4 * m * m * m, 3 * m})}};
                t.period = {{irow({4 * m, 6 * m * m, 4 * m * m * m})},
                            {irow({4 * m * m * m, 4 * m, 6 * m * m})},
                            {irow({6 * m * m, 4 * m * m * m, 4 * m})}};
                t.source = "fourth-root reference table";
                return t;
            }
            throw NoTableError("no reference digit table for " + family_name(spec));
        }
        case FamilyKind::ShiftedCubic: {
            if (spec.a == 1 && spec.b == 0) {
                // literal reference rows; the two negative entries disagree
                // with both independent digit paths and are adjudicated
                t.preperiod = {{irow({2, 0})}, {irow({1, 0})}, {irow({0, 2})}};
                t.period = {{irow({0, -1}), RowPolicy::OracleAdjudicated},
                            {irow({1, 1})},
                            {irow({-1, 0}), RowPolicy::OracleAdjudicated},
                            {irow({1, 1})}};
                t.source = "shifted-cubic reference table, a=1 b=0";
                return t;
            }
            t = expected_table(trinomial_spec(3 * spec.a * spec.a - spec.b));
            t.source = "trinomial reference table via the depression identity";
            return t;
        }
        case FamilyKind::JPExample: {
            t.period = {{irow({spec.jl, spec.k})}};
            t.source = "JP fixed-point digits";
            return t;
        }
    }
    throw InputError("unreachable family kind");
}

// The oracle's own family instantiation: reps built straight from the
// parameters, never from engine state.
OracleProblem family_oracle_problem(const FamilySpec& spec, PivotStrategy strategy) {
    OracleProblem prob;
    prob.mode = strategy == PivotStrategy::UnitNormMin ? OracleMode::UnitNormMin
                                                       : OracleMode::MaxNormalized;
    switch (spec.kind) {
        case FamilyKind::Trinomial:
            prob.minpoly = trinomial_minpoly(spec.m);
            prob.window = RatInterval(Rat(0), Rat(1));
            prob.initial = {RatPoly::monomial(1), RatPoly::monomial(2)};
            break;
        case FamilyKind::PurePower: {
            prob.minpoly = purepower_minpoly(spec.l, spec.m);
            prob.window = RatInterval(Rat(spec.m), Rat(spec.m + 1));
            for (long k = 1; k < spec.l; ++k)
                prob.initial.push_back(
                    RatPoly::monomial(static_cast<size_t>(k)) -
                    RatPoly::constant(rat_pow(Rat(spec.m), static_cast<unsigned long>(k))));
            break;
        }
        case FamilyKind::ShiftedCubic: {
            prob.minpoly = shifted_minpoly(spec.a, spec.b);
            prob.window = RatInterval(Rat(-spec.a), Rat(-spec.a + 1));
            RatPoly frac{Rat(spec.a), Rat(1)};  // gamma + a
            prob.initial = {frac, frac * frac};
            break;
        }
        case FamilyKind::JPExample:
            prob.minpoly = jp_minpoly(spec.k, spec.jl);
            prob.window = RatInterval(Rat(spec.k), Rat(spec.k + 1));
            // 1/alpha = alpha^2 - k alpha - l; second component alpha - k
            prob.initial = {RatPoly{Rat(-spec.jl), Rat(-spec.k), Rat(1)},
                            RatPoly{Rat(-spec.k), Rat(1)}};
            prob.mode = OracleMode::JP;
            break;
    }
    return prob;
}

namespace {

std::string cycle_shape_str(size_t pre, size_t per) {
    return "preperiod=" + std::to_string(pre) + " period=" + std::to_string(per);
}

}  // namespace

Report verify_family(const FamilySpec& spec, PivotStrategy strategy, size_t max_steps,
                     bool run_oracle, size_t oracle_steps) {
    Report rep;
    rep.spec = spec;
    rep.strategy = strategy;

    FamilyInstance inst = family_build(spec);
    ExpansionResult res =
        inst.jp ? jp_expand(inst.state, max_steps) : cf_expand(inst.state, strategy, max_steps);
    rep.status = res.status;
    rep.observed_preperiod = res.preperiod_len;
    rep.observed_period = res.period_len;

    try {
        ExpectedTable table = expected_table(spec);
        rep.has_table = true;
        rep.expected_preperiod = table.preperiod.size();
        rep.expected_period = table.period.size();

        for (size_t i = 0; i < res.records.size(); ++i) {
            const TableRow& want = table.at_step(i + 1);
            RowReport rr;
            rr.step = static_cast<int>(i) + 1;
            rr.expected = want.digits;
            rr.observed = res.records[i].digits;
            rr.policy = want.policy;
            rr.match = rr.expected == rr.observed;
            if (!rr.match) {
                if (want.policy == RowPolicy::Strict) rep.strict_ok = false;
                rep.discrepancies.push_back({rr.step, "reference-table",
                                             digit_row_str(rr.observed),
                                             digit_row_str(rr.expected)});
            }
            rep.rows.push_back(std::move(rr));
        }

        if (res.status != ExpandStatus::Periodic) {
            rep.strict_ok = false;
            rep.discrepancies.push_back(
                {0, "status", "expansion did not close a cycle", "periodic"});
        } else if (res.preperiod_len != table.preperiod.size() ||
                   res.period_len != table.period.size()) {
            rep.strict_ok = false;
            rep.discrepancies.push_back(
                {0, "cycle-shape", cycle_shape_str(res.preperiod_len, res.period_len),
                 cycle_shape_str(table.preperiod.size(), table.period.size())});
        }
    } catch (const NoTableError&) {
        rep.has_table = false;
    }

    if (run_oracle && !res.records.empty()) {
        size_t want = oracle_steps ? oracle_steps : res.records.size();
        if (res.status != ExpandStatus::Periodic) want = std::min(want, res.records.size());
        std::vector<StepRecord> engine_rows =
            want > res.records.size()
                ? unroll(res, want)
                : std::vector<StepRecord>(res.records.begin(), res.records.begin() + want);

        OracleRun orun = oracle_expand(family_oracle_problem(spec, strategy), want);
        std::vector<Discrepancy> diffs = cross_check(engine_rows, orun.rows);
        if (!diffs.empty() || orun.precision_exhausted) rep.oracle_ok = false;
        if (orun.precision_exhausted)
            rep.discrepancies.push_back({static_cast<int>(orun.rows.size()) + 1, "precision",
                                         "oracle hit its precision ceiling",
                                         std::to_string(orun.final_bits) + " bits"});
        rep.discrepancies.insert(rep.discrepancies.end(), diffs.begin(), diffs.end());
    }

    rep.result = std::move(res);
    return rep;
}

void write_fixture_csv(std::ostream& out, const FamilySpec& spec) {
    ExpectedTable table = expected_table(spec);
    size_t width = table.period.front().digits.size();
    out << "# mdcf-fixture v1 family=" << family_name(spec)
        << " preperiod=" << table.preperiod.size() << " period=" << table.period.size() << '\n';
    out << 'n';
    for (size_t i = 0; i < width; ++i) out << ',' << static_cast<char>('a' + i) << "_n";
    out << ",policy\n";
    for (size_t n = 1; n <= table.rows(); ++n) {
        const TableRow& row = table.at_step(n);
        out << n;
        for (const Int& d : row.digits) out << ',' << int_str(d);
        out << ',' << (row.policy == RowPolicy::Strict ? "strict" : "oracle-adjudicated")
            << '\n';
    }
}

Fixture read_fixture_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("fixture: empty file");
    static const std::regex header(
        R"(^# mdcf-fixture v1 family=(\S+) preperiod=(\d+) period=(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(line, m, header))
        throw InputError("fixture: malformed header line: " + line);

    Fixture fx;
    fx.spec = parse_family_name(m[1].str());
    size_t pre = std::stoul(m[2].str());
    size_t per = std::stoul(m[3].str());
    if (per == 0) throw InputError("fixture: period must be nonempty");

    if (!std::getline(in, line)) throw InputError("fixture: missing column header");
    size_t cols = 1 + static_cast<size_t>(std::count(line.begin(), line.end(), ','));
    if (cols < 3) throw InputError("fixture: too few columns");
    size_t width = cols - 2;

    for (size_t n = 1; n <= pre + per; ++n) {
        if (!std::getline(in, line)) throw InputError("fixture: truncated digit rows");
        std::istringstream is(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (cells.size() != cols)
            throw InputError("fixture: row " + std::to_string(n) + " has wrong column count");
        if (cells[0] != std::to_string(n))
            throw InputError("fixture: rows must be numbered consecutively from 1");
        TableRow row;
        for (size_t i = 0; i < width; ++i) {
            try {
                row.digits.emplace_back(cells[1 + i], 10);
            } catch (const std::exception&) {
                throw InputError("fixture: bad digit '" + cells[1 + i] + "' in row " +
                                 std::to_string(n));
            }
        }
        const std::string& pol = cells.back();
        if (pol == "strict")
            row.policy = RowPolicy::Strict;
        else if (pol == "oracle-adjudicated")
            row.policy = RowPolicy::OracleAdjudicated;
        else
            throw InputError("fixture: unknown policy '" + pol + "'");
        if (n <= pre)
            fx.table.preperiod.push_back(std::move(row));
        else
            fx.table.period.push_back(std::move(row));
    }
    while (std::getline(in, line))
        if (!line.empty()) throw InputError("fixture: trailing content after digit rows");
    fx.table.source = "fixture file";
    return fx;
}

void write_fixture_file(const std::string& path, const FamilySpec& spec) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open fixture file for writing: " + path);
    write_fixture_csv(out, spec);
    if (!out) throw InputError("failed writing fixture file: " + path);
}

Fixture read_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open fixture file: " + path);
    return read_fixture_csv(in);
}

std::string fixture_filename(const FamilySpec& spec) {
    std::string out;
    for (char c : family_name(spec)) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')
            out += c;
        else if (c == '(' || c == ',')
            out += '_';
        // ')' and '=' dropped
    }
    return out + ".csv";
}

std::vector<FamilySpec> shipped_fixture_specs() {
    std::vector<FamilySpec> specs;
    for (long m = 3; m <= 12; ++m) specs.push_back(trinomial_spec(m));
    for (long m = 1; m <= 8; ++m) specs.push_back(purepower_spec(3, m));
    for (long m = 2; m <= 4; ++m) specs.push_back(purepower_spec(4, m));
    for (auto [a, b] : {std::pair<long, long>{1, 0}, {-1, 0}, {2, 9}, {2, 0}, {-2, 3}})
        specs.push_back(shifted_cubic_spec(a, b));
    for (auto [k, l] : {std::pair<long, long>{2, 1}, {3, 3}, {5, 0}, {4, 2}})
        specs.push_back(jp_example_spec(k, l));
    return specs;
}

}  // namespace mdcf
