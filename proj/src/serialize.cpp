#include "mdcf/serialize.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "mdcf/errors.hpp"

namespace mdcf {

namespace {

using nlohmann::json;

// Digits are arbitrary-precision; keep native JSON integers where possible
// and fall back to decimal strings beyond 64 bits.
json digit_json(const Int& d) {
    if (d.fits_slong_p()) return static_cast<std::int64_t>(d.get_si());
    return int_str(d);
}

json digits_json(const std::vector<Int>& ds) {
    json arr = json::array();
    for (const Int& d : ds) arr.push_back(digit_json(d));
    return arr;
}

json coords_json(const FieldElement& a) {
    json arr = json::array();
    for (const Rat& c : a.coords()) arr.push_back(rat_str(c));
    return arr;
}

std::string policy_str(RowPolicy policy) {
    return policy == RowPolicy::Strict ? "strict" : "oracle-adjudicated";
}

json discrepancies_json(const std::vector<Discrepancy>& ds) {
    json arr = json::array();
    for (const Discrepancy& d : ds)
        arr.push_back({{"step", d.step},
                       {"kind", d.kind},
                       {"engine", d.engine},
                       {"paper_or_oracle", d.paper_or_oracle}});
    return arr;
}

// Column headers a_n, b_n, ... for a digit row of the given width.
std::vector<std::string> digit_headers(size_t width) {
    std::vector<std::string> h;
    for (size_t i = 0; i < width; ++i)
        h.push_back(std::string(1, static_cast<char>('a' + i)) + "_n");
    return h;
}

std::string annotation_line(const ExpansionResult& res) {
    std::ostringstream os;
    os << "# preperiod=" << res.preperiod_len << " period=" << res.period_len
       << " status=" << status_str(res.status);
    if (res.status == ExpandStatus::LeftDomain)
        os << " violation_step=" << res.violation_step << " reason=" << res.violation_reason;
    return os.str();
}

}  // namespace

std::string status_str(ExpandStatus status) {
    switch (status) {
        case ExpandStatus::Periodic: return "periodic";
        case ExpandStatus::BudgetExhausted: return "budget-exhausted";
        case ExpandStatus::LeftDomain: return "left-domain";
    }
    return "unknown";
}

std::string strategy_str(PivotStrategy strategy) {
    return strategy == PivotStrategy::MaxNormalized ? "max-normalized" : "unit-pivot";
}

PivotStrategy parse_strategy(const std::string& name) {
    if (name == "max-normalized") return PivotStrategy::MaxNormalized;
    if (name == "unit-pivot" || name == "unit-norm-min") return PivotStrategy::UnitNormMin;
    throw InputError("unknown strategy: " + name +
                     " (expected max-normalized or unit-pivot)");
}

json expansion_json(const ExpansionResult& res, const RatPoly& minpoly,
                    const RatInterval& window, const std::string& strategy) {
    json doc;
    doc["schema"] = 1;

    json mp = json::array();
    for (const Rat& c : minpoly.coeffs()) mp.push_back(rat_str(c));
    doc["field"] = {{"minpoly", mp}};
    doc["embedding"] = {{"window", {rat_str(window.lo), rat_str(window.hi)}}};
    doc["strategy"] = strategy;

    json steps = json::array();
    for (size_t i = 0; i < res.records.size(); ++i) {
        const StepRecord& rec = res.records[i];
        json step;
        step["n"] = rec.index;
        step["pivot"] = rec.pivot + 1;  // 1-based in serialized output
        step["digits"] = digits_json(rec.digits);
        if (i + 1 < res.states.size()) {
            json state = json::array();
            for (const FieldElement& c : res.states[i + 1].components())
                state.push_back(coords_json(c));
            step["state"] = state;
        }
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);

    doc["preperiod_len"] = res.preperiod_len;
    doc["period_len"] = res.period_len;
    doc["status"] = status_str(res.status);
    doc["discrepancies"] = discrepancies_json(res.discrepancies);
    if (res.status == ExpandStatus::LeftDomain)
        doc["violation"] = {{"step", res.violation_step}, {"reason", res.violation_reason}};
    return doc;
}

void write_expansion_csv(std::ostream& out, const ExpansionResult& res) {
    if (!res.records.empty()) {
        out << 'n';
        for (const std::string& h : digit_headers(res.records.front().digits.size()))
            out << ',' << h;
        out << '\n';
        for (const StepRecord& rec : res.records) {
            out << rec.index;
            for (const Int& d : rec.digits) out << ',' << int_str(d);
            out << '\n';
        }
    }
    out << annotation_line(res) << '\n';
}

void write_expansion_table(std::ostream& out, const ExpansionResult& res) {
    if (res.records.empty()) {
        out << "(no steps)\n" << annotation_line(res) << '\n';
        return;
    }
    size_t width = res.records.front().digits.size();
    std::vector<std::string> headers = digit_headers(width);

    // column widths: header vs widest digit
    std::vector<size_t> w(width);
    for (size_t j = 0; j < width; ++j) w[j] = headers[j].size();
    size_t nw = 1;
    for (const StepRecord& rec : res.records) {
        nw = std::max(nw, std::to_string(rec.index).size());
        for (size_t j = 0; j < width; ++j)
            w[j] = std::max(w[j], int_str(rec.digits[j]).size());
    }
    nw = std::max(nw, std::string("n").size());

    auto pad = [&out](const std::string& s, size_t target) {
        for (size_t i = s.size(); i < target; ++i) out << ' ';
        out << s;
    };

    pad("n", nw);
    for (size_t j = 0; j < width; ++j) {
        out << "  ";
        pad(headers[j], w[j]);
    }
    out << "  pivot\n";

    for (const StepRecord& rec : res.records) {
        if (res.status == ExpandStatus::Periodic &&
            static_cast<size_t>(rec.index) == res.preperiod_len + 1)
            out << "-- period begins (length " << res.period_len << ") --\n";
        pad(std::to_string(rec.index), nw);
        for (size_t j = 0; j < width; ++j) {
            out << "  ";
            pad(int_str(rec.digits[j]), w[j]);
        }
        out << "  " << rec.pivot + 1 << '\n';
    }
    out << "status: " << status_str(res.status) << " (preperiod " << res.preperiod_len
        << ", period " << res.period_len << ")\n";
    if (res.status == ExpandStatus::LeftDomain)
        out << "violation at step " << res.violation_step << ": " << res.violation_reason
            << '\n';
}

json report_json(const Report& report) {
    json doc;
    doc["schema"] = 1;
    doc["family"] = family_name(report.spec);
    doc["mode"] = report.spec.kind == FamilyKind::JPExample ? "jp" : "ajpa";
    doc["strategy"] = strategy_str(report.strategy);
    doc["status"] = status_str(report.status);
    doc["observed"] = {{"preperiod", report.observed_preperiod},
                       {"period", report.observed_period}};
    doc["has_table"] = report.has_table;
    if (report.has_table)
        doc["expected"] = {{"preperiod", report.expected_preperiod},
                           {"period", report.expected_period}};
    doc["strict_ok"] = report.strict_ok;
    doc["oracle_ok"] = report.oracle_ok;
    doc["ok"] = report.ok();

    json rows = json::array();
    for (const RowReport& r : report.rows)
        rows.push_back({{"n", r.step},
                        {"expected", digits_json(r.expected)},
                        {"observed", digits_json(r.observed)},
                        {"policy", policy_str(r.policy)},
                        {"match", r.match}});
    doc["rows"] = std::move(rows);
    doc["discrepancies"] = discrepancies_json(report.discrepancies);
    return doc;
}

void write_report_text(std::ostream& out, const Report& report) {
    out << (report.ok() ? "[ OK ] " : "[FAIL] ") << family_name(report.spec);
    if (report.spec.kind == FamilyKind::JPExample)
        out << " mode=jp";
    else
        out << " strategy=" << strategy_str(report.strategy);
    if (report.spec.kind == FamilyKind::ShiftedCubic)
        out << " reduced-m=" << 3 * report.spec.a * report.spec.a - report.spec.b;
    out << " status=" << status_str(report.status) << " observed preperiod="
        << report.observed_preperiod << " period=" << report.observed_period;
    if (report.has_table)
        out << " (table preperiod=" << report.expected_preperiod << " period="
            << report.expected_period << ')';
    else
        out << " (no reference table)";
    out << '\n';

    for (const Discrepancy& d : report.discrepancies) {
        out << "       ";
        if (d.kind == "reference-table") {
            bool adjudicated = d.step >= 1 &&
                               static_cast<size_t>(d.step) <= report.rows.size() &&
                               report.rows[static_cast<size_t>(d.step) - 1].policy ==
                                   RowPolicy::OracleAdjudicated;
            out << (adjudicated ? "adjudicated" : "MISMATCH") << " row " << d.step
                << ": engine " << d.engine << ", reference " << d.paper_or_oracle;
        } else if (d.kind == "digit") {
            out << "ORACLE MISMATCH step " << d.step << ": engine " << d.engine << ", oracle "
                << d.paper_or_oracle;
        } else {
            out << d.kind << " step " << d.step << ": " << d.engine << " vs "
                << d.paper_or_oracle;
        }
        out << '\n';
    }
}

}  // namespace mdcf
