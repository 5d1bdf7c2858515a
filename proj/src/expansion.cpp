#include "mdcf/expansion.hpp"

#include <unordered_map>

#include "mdcf/errors.hpp"

namespace mdcf {

namespace {

void check_coherent(const std::shared_ptr<RealEmbedding>& emb,
                    const std::vector<FieldElement>& comps) {
    if (!emb) throw InputError("state without an embedding");
    if (comps.empty()) throw InputError("state without components");
    for (const auto& c : comps)
        if (!same_field(c.field(), emb->field()))
            throw FieldMismatchError("state component from a foreign field");
}

// |N(component)|, with the zero-norm degenerate case surfaced as a domain
// violation (a nonzero field element cannot have zero norm unless the
// defining polynomial is reducible).
Rat abs_norm(const FieldElement& a) {
    Rat n = elem_norm(a);
    if (n == 0)
        throw DomainViolationError("component with zero norm (reducible defining polynomial?)");
    return abs(n);
}

}  // namespace

ExpansionState ExpansionState::create(std::shared_ptr<RealEmbedding> emb,
                                      std::vector<FieldElement> comps) {
    check_coherent(emb, comps);
    int l = emb->field()->degree();
    if (comps.size() != static_cast<size_t>(l - 1))
        throw InputError("state needs exactly degree-1 components");
    for (size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        std::string at = "component " + std::to_string(i + 1);
        if (c.is_zero()) throw DomainViolationError(at + " is zero");
        if (c.is_rational()) throw DomainViolationError(at + " is rational");
        if (elem_sign(c, *emb) < 0) throw DomainViolationError(at + " is negative");
        if (elem_sign(c - Rat(1), *emb) >= 0) throw DomainViolationError(at + " is not below 1");
    }
    if (!independent_with_one(comps))
        throw DomainViolationError("components are not independent with 1");
    return ExpansionState(std::move(emb), std::move(comps));
}

ExpansionState ExpansionState::create_unchecked(std::shared_ptr<RealEmbedding> emb,
                                                std::vector<FieldElement> comps) {
    check_coherent(emb, comps);
    return ExpansionState(std::move(emb), std::move(comps));
}

std::string ExpansionState::key() const {
    std::string k;
    for (const auto& c : comps_) k += canonical_key(c);
    return k;
}

std::vector<StepRecord> ExpansionResult::preperiod() const {
    return {records.begin(), records.begin() + static_cast<long>(preperiod_len)};
}

std::vector<StepRecord> ExpansionResult::period() const {
    return {records.begin() + static_cast<long>(preperiod_len),
            records.begin() + static_cast<long>(preperiod_len + period_len)};
}

int pivot_select(const ExpansionState& state, PivotStrategy strategy) {
    const auto& c = state.components();
    int l = state.field()->degree();
    RealEmbedding& emb = *state.embedding();
    std::vector<Rat> norms(c.size());
    for (size_t i = 0; i < c.size(); ++i) norms[i] = abs_norm(c[i]);

    if (strategy == PivotStrategy::MaxNormalized) {
        size_t best = 0;
        for (size_t i = 1; i < c.size(); ++i)
            if (compare_normalized(c[i], norms[i], c[best], norms[best], l, emb) ==
                CompareResult::IGreater)
                best = i;
        return static_cast<int>(best);
    }

    // UnitNormMin: filter to minimal |N|, then take the smallest normalized
    // value (with equal norms that is simply the smallest value).
    Rat min_norm = norms[0];
    for (size_t i = 1; i < norms.size(); ++i)
        if (norms[i] < min_norm) min_norm = norms[i];
    size_t best = norms.size();
    for (size_t i = 0; i < c.size(); ++i) {
        if (norms[i] != min_norm) continue;
        if (best == norms.size()) {
            best = i;
            continue;
        }
        if (compare_normalized(c[best], min_norm, c[i], min_norm, l, emb) ==
            CompareResult::IGreater)
            best = i;
    }
    return static_cast<int>(best);
}

std::pair<StepRecord, ExpansionState> cf_step(const ExpansionState& state,
                                              PivotStrategy strategy) {
    int p = pivot_select(state, strategy);
    const auto& c = state.components();
    RealEmbedding& emb = *state.embedding();
    if (c[static_cast<size_t>(p)].is_zero())
        throw DomainViolationError("pivot component is zero");
    FieldElement inv_p = c[static_cast<size_t>(p)].inverse();

    StepRecord rec;
    rec.pivot = p;
    rec.kind = strategy == PivotStrategy::MaxNormalized ? RecordKind::MaxNormalized
                                                        : RecordKind::UnitNormMin;
    rec.digits.resize(c.size());
    std::vector<FieldElement> next;
    next.reserve(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        FieldElement q = static_cast<int>(i) == p ? inv_p : c[i] * inv_p;
        Int d = elem_floor(q, emb);
        rec.digits[i] = d;
        next.push_back(q - Rat(d));
    }
    if (rec.digits[static_cast<size_t>(p)] < 1)
        throw DomainViolationError("pivot digit below 1: state outside the domain");
    for (size_t i = 0; i < rec.digits.size(); ++i)
        if (rec.digits[i] < 0)
            throw DomainViolationError("negative digit: state outside the domain");
    return {std::move(rec), ExpansionState::create(state.embedding(), std::move(next))};
}

namespace {

// Shared driver for cf_expand / jp_expand.
template <typename StepFn>
ExpansionResult expand_loop(const ExpansionState& initial, int max_steps, StepFn step) {
    if (max_steps < 1) throw InputError("expansion needs max_steps >= 1");
    ExpansionResult res;
    res.states.push_back(initial);
    std::unordered_map<std::string, size_t> seen;
    seen.emplace(initial.key(), 0);
    for (int n = 1; n <= max_steps; ++n) {
        StepRecord rec;
        try {
            auto [r, next] = step(res.states.back());
            rec = std::move(r);
            rec.index = n;
            res.states.push_back(std::move(next));
        } catch (const DomainViolationError& e) {
            res.status = ExpandStatus::LeftDomain;
            res.violation_step = n;
            res.violation_reason = e.what();
            res.preperiod_len = res.records.size();
            res.period_len = 0;
            return res;
        }
        res.records.push_back(std::move(rec));
        auto [it, inserted] = seen.emplace(res.states.back().key(), static_cast<size_t>(n));
        if (!inserted) {
            res.status = ExpandStatus::Periodic;
            res.preperiod_len = it->second;
            res.period_len = static_cast<size_t>(n) - it->second;
            return res;
        }
    }
    res.status = ExpandStatus::BudgetExhausted;
    res.preperiod_len = res.records.size();
    res.period_len = 0;
    return res;
}

}  // namespace

ExpansionResult cf_expand(const ExpansionState& initial, PivotStrategy strategy,
                          int max_steps) {
    return expand_loop(initial, max_steps,
                       [&](const ExpansionState& s) { return cf_step(s, strategy); });
}

ExpansionState step_inverse(const StepRecord& rec, const ExpansionState& next) {
    const auto& b = next.components();
    if (rec.digits.size() != b.size())
        throw InputError("record and state have different dimensions");
    if (rec.pivot < 0 || static_cast<size_t>(rec.pivot) >= b.size())
        throw InputError("record pivot out of range");
    const FieldPtr& field = next.field();
    std::vector<FieldElement> prev(b.size(), make_element(field, Rat(0)));
    if (rec.kind == RecordKind::JP) {
        size_t last = b.size() - 1;
        FieldElement denom = b[last] + Rat(rec.digits[last]);
        if (denom.is_zero())
            throw InputError("corrupt record: zero reconstruction denominator");
        FieldElement psi1 = denom.inverse();
        prev[0] = psi1;
        for (size_t i = 0; i + 1 < b.size(); ++i)
            prev[i + 1] = (b[i] + Rat(rec.digits[i])) * psi1;
    } else {
        size_t p = static_cast<size_t>(rec.pivot);
        FieldElement denom = b[p] + Rat(rec.digits[p]);
        if (denom.is_zero())
            throw InputError("corrupt record: zero reconstruction denominator");
        FieldElement alpha_p = denom.inverse();
        for (size_t i = 0; i < b.size(); ++i)
            prev[i] = i == p ? alpha_p : (b[i] + Rat(rec.digits[i])) * alpha_p;
    }
    return ExpansionState::create_unchecked(next.embedding(), std::move(prev));
}

std::vector<Rat> convergent(const std::vector<StepRecord>& records, size_t upto) {
    if (upto > records.size())
        throw InputError("convergent index exceeds the record count");
    if (records.empty()) return {};
    size_t d = records.front().digits.size();
    std::vector<Rat> v(d, Rat(0));
    for (size_t k = upto; k-- > 0;) {
        const StepRecord& rec = records[k];
        if (rec.digits.size() != d) throw InputError("records of mixed dimensions");
        std::vector<Rat> prev(d);
        if (rec.kind == RecordKind::JP) {
            Rat den = Rat(rec.digits[d - 1]) + v[d - 1];
            if (den == 0) throw InputError("corrupt record: zero reconstruction denominator");
            Rat psi1 = Rat(1) / den;
            prev[0] = psi1;
            for (size_t i = 0; i + 1 < d; ++i) prev[i + 1] = (Rat(rec.digits[i]) + v[i]) * psi1;
        } else {
            size_t p = static_cast<size_t>(rec.pivot);
            if (p >= d) throw InputError("record pivot out of range");
            Rat den = Rat(rec.digits[p]) + v[p];
            if (den == 0) throw InputError("corrupt record: zero reconstruction denominator");
            Rat alpha_p = Rat(1) / den;
            for (size_t i = 0; i < d; ++i)
                prev[i] = i == p ? alpha_p : (Rat(rec.digits[i]) + v[i]) * alpha_p;
        }
        v = std::move(prev);
    }
    return v;
}

std::pair<StepRecord, ExpansionState> jp_step(const ExpansionState& state) {
    const auto& c = state.components();
    RealEmbedding& emb = *state.embedding();
    if (c.front().is_zero())
        throw DomainViolationError("leading component is zero: JP step undefined");
    FieldElement inv1 = c.front().inverse();

    StepRecord rec;
    rec.kind = RecordKind::JP;
    rec.pivot = static_cast<int>(c.size()) - 1;
    rec.digits.resize(c.size());
    std::vector<FieldElement> next;
    next.reserve(c.size());
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        FieldElement q = c[i + 1] * inv1;
        Int d = elem_floor(q, emb);
        rec.digits[i] = d;
        next.push_back(q - Rat(d));
    }
    Int d_last = elem_floor(inv1, emb);
    rec.digits[c.size() - 1] = d_last;
    next.push_back(inv1 - Rat(d_last));
    if (rec.digits[c.size() - 1] < 1)
        throw DomainViolationError("reciprocal digit below 1: leading component not in (0,1)");
    for (size_t i = 0; i + 1 < rec.digits.size(); ++i)
        if (rec.digits[i] < 0)
            throw DomainViolationError("negative digit: component outside [0,1)");
    return {std::move(rec), ExpansionState::create_unchecked(state.embedding(), std::move(next))};
}

ExpansionResult jp_expand(const ExpansionState& initial, int max_steps) {
    // JP admits rational and zero components, but they must sit in [0,1).
    RealEmbedding& emb = *initial.embedding();
    for (const auto& c : initial.components()) {
        if (elem_sign(c, emb) < 0) throw DomainViolationError("component is negative");
        if (elem_sign(c - Rat(1), emb) >= 0) throw DomainViolationError("component is not below 1");
    }
    return expand_loop(initial, max_steps, [](const ExpansionState& s) { return jp_step(s); });
}

std::vector<StepRecord> unroll(const ExpansionResult& result, size_t n) {
    if (n <= result.records.size()) {
        return {result.records.begin(), result.records.begin() + static_cast<long>(n)};
    }
    if (result.status != ExpandStatus::Periodic || result.period_len == 0)
        throw InputError("cannot unroll a non-periodic result past its records");
    std::vector<StepRecord> out = result.records;
    out.reserve(n);
    while (out.size() < n) {
        size_t src = result.preperiod_len +
                     (out.size() - result.preperiod_len) % result.period_len;
        StepRecord rec = result.records[src];
        rec.index = static_cast<int>(out.size()) + 1;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace mdcf
