#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <set>
#include <vector>

#include "mdcf/errors.hpp"
#include "mdcf/expansion.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/realembed.hpp"
#include "testutil.hpp"

using namespace mdcf;

namespace {

RatPoly ipoly(std::initializer_list<long> coeffs) {
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return RatPoly(std::move(v));
}

std::vector<std::vector<Int>> digit_rows(const std::vector<StepRecord>& recs) {
    std::vector<std::vector<Int>> out;
    for (const auto& r : recs) out.push_back(r.digits);
    return out;
}

std::vector<Int> row(std::initializer_list<long> ds) {
    std::vector<Int> v;
    for (long d : ds) v.emplace_back(d);
    return v;
}

// (delta, delta^2) with delta the (0,1) root of x^3 - m*x + 1
ExpansionState trinomial_state(long m) {
    FieldPtr f = make_field(RatPoly::monomial(3, Rat(1)) - RatPoly::monomial(1, Rat(m)) +
                            RatPoly::constant(Rat(1)));
    auto emb = std::make_shared<RealEmbedding>(select_root(f, RatInterval(Rat(0), Rat(1))));
    FieldElement delta = gen_element(f);
    return ExpansionState::create(emb, {delta, delta * delta});
}

// (theta-m, ..., theta^{l-1}-m^{l-1}) with theta = (m^l+1)^{1/l} in (m, m+1)
ExpansionState purepower_state(int l, long m) {
    Rat c = rat_pow(Rat(m), static_cast<unsigned long>(l)) + 1;
    FieldPtr f = make_field(RatPoly::monomial(static_cast<size_t>(l), Rat(1)) -
                            RatPoly::constant(c));
    auto emb = std::make_shared<RealEmbedding>(
        select_root(f, RatInterval(Rat(m), Rat(m + 1))));
    FieldElement theta = gen_element(f);
    std::vector<FieldElement> comps;
    for (int k = 1; k < l; ++k)
        comps.push_back(elem_pow(theta, static_cast<unsigned long>(k)) -
                        rat_pow(Rat(m), static_cast<unsigned long>(k)));
    return ExpansionState::create(emb, std::move(comps));
}

// classical JP start (1/alpha, alpha - k) for alpha the root of
// x^3 - k x^2 - l x - 1 in (k, k+1)
ExpansionState jp_state(long k, long l) {
    RatPoly p = RatPoly::monomial(3, Rat(1)) - RatPoly::monomial(2, Rat(k)) -
                RatPoly::monomial(1, Rat(l)) - RatPoly::constant(Rat(1));
    FieldPtr f = make_field(p);
    auto emb = std::make_shared<RealEmbedding>(
        select_root(f, RatInterval(Rat(k), Rat(k + 1))));
    FieldElement alpha = gen_element(f);
    return ExpansionState::create_unchecked(emb, {alpha.inverse(), alpha - Rat(k)});
}

}  // namespace

TEST_CASE("state validation enforces the domain") {
    FieldPtr f = make_field(ipoly({1, -3, 0, 1}));
    auto emb = std::make_shared<RealEmbedding>(select_root(f, RatInterval(Rat(0), Rat(1))));
    FieldElement delta = gen_element(f);

    CHECK_NOTHROW(ExpansionState::create(emb, {delta, delta * delta}));
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta, make_element(f, Rat(0))}),
                    DomainViolationError);
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta, make_element(f, make_rat(1, 2))}),
                    DomainViolationError);
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta, -delta}), DomainViolationError);
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta, delta + Rat(1)}), DomainViolationError);
    // 2*delta is inside (0,1) but {1, delta, 2*delta} is linearly dependent
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta, delta * Rat(2)}), DomainViolationError);
    CHECK_THROWS_AS(ExpansionState::create(emb, {delta}), InputError);  // needs l-1 = 2
    CHECK_NOTHROW(ExpansionState::create_unchecked(emb, {delta, make_element(f, make_rat(1, 2))}));
}

TEST_CASE("pivot_select: fixed decisions") {
    ExpansionState tri = trinomial_state(3);
    CHECK(pivot_select(tri, PivotStrategy::MaxNormalized) == 0);  // delta > delta^2, both |N|=1

    ExpansionState pp = purepower_state(4, 2);
    CHECK(pivot_select(pp, PivotStrategy::UnitNormMin) == 0);      // min |N| tie -> smallest value
    CHECK(pivot_select(pp, PivotStrategy::MaxNormalized) == 1);    // theta^2-4 normalized largest
}

TEST_CASE("cf_step: trinomial m=3 first step") {
    ExpansionState s = trinomial_state(3);
    auto [rec, next] = cf_step(s, PivotStrategy::MaxNormalized);
    CHECK(rec.pivot == 0);
    CHECK(rec.digits == row({2, 0}));
    CHECK(rec.kind == RecordKind::MaxNormalized);
    // next = (1 - delta^2, delta)
    const FieldPtr& f = s.field();
    CHECK(next.components()[0] == make_element(f, ipoly({1, 0, -1})));
    CHECK(next.components()[1] == gen_element(f));

    auto [rec2, next2] = cf_step(next, PivotStrategy::MaxNormalized);
    CHECK(rec2.digits == row({1, 0}));
}

TEST_CASE("cf_expand: trinomial digit table for several m") {
    for (long m : {3L, 5L, 12L}) {
        CAPTURE(m);
        ExpansionResult res = cf_expand(trinomial_state(m), PivotStrategy::MaxNormalized, 100);
        REQUIRE(res.status == ExpandStatus::Periodic);
        CHECK(res.preperiod_len == 3);
        CHECK(res.period_len == 4);
        CHECK(digit_rows(res.preperiod()) ==
              std::vector<std::vector<Int>>{row({m - 1, 0}), row({1, 0}), row({0, m - 1})});
        CHECK(digit_rows(res.period()) ==
              std::vector<std::vector<Int>>{row({0, 1}), row({m - 2, 1}), row({1, 0}),
                                            row({1, m - 2})});
        // records carry 1-based consecutive indices
        for (size_t i = 0; i < res.records.size(); ++i)
            CHECK(res.records[i].index == static_cast<int>(i) + 1);
    }
}

TEST_CASE("cf_expand: pure power l=3") {
    // m=1 is purely periodic with period 2
    ExpansionResult r1 = cf_expand(purepower_state(3, 1), PivotStrategy::MaxNormalized, 100);
    REQUIRE(r1.status == ExpandStatus::Periodic);
    CHECK(r1.preperiod_len == 0);
    CHECK(r1.period_len == 2);
    CHECK(digit_rows(r1.period()) == std::vector<std::vector<Int>>{row({0, 1}), row({2, 1})});
    CHECK(r1.records[0].pivot == 1);
    CHECK(r1.records[1].pivot == 0);

    // m >= 2: one preperiod row (3m^2, 2m), then the period (3m,3m^2),(3m^2,3m)
    for (long m : {2L, 8L}) {
        CAPTURE(m);
        ExpansionResult res = cf_expand(purepower_state(3, m), PivotStrategy::MaxNormalized, 100);
        REQUIRE(res.status == ExpandStatus::Periodic);
        CHECK(res.preperiod_len == 1);
        CHECK(res.period_len == 2);
        CHECK(digit_rows(res.preperiod()) ==
              std::vector<std::vector<Int>>{row({3 * m * m, 2 * m})});
        CHECK(digit_rows(res.period()) ==
              std::vector<std::vector<Int>>{row({3 * m, 3 * m * m}), row({3 * m * m, 3 * m})});
    }
}

TEST_CASE("cf_expand: pure power l=4 m=2 under UnitNormMin matches the table") {
    ExpansionResult res = cf_expand(purepower_state(4, 2), PivotStrategy::UnitNormMin, 100);
    REQUIRE(res.status == ExpandStatus::Periodic);
    CHECK(res.preperiod_len == 2);
    CHECK(res.period_len == 3);
    CHECK(digit_rows(res.preperiod()) ==
          std::vector<std::vector<Int>>{row({32, 4, 12}), row({24, 32, 6})});
    CHECK(digit_rows(res.period()) ==
          std::vector<std::vector<Int>>{row({8, 24, 32}), row({32, 8, 24}), row({24, 32, 8})});
    // pivot rotation 1,2,3,1,2 (0-based 0,1,2,0,1)
    std::vector<int> pivots;
    for (const auto& r : res.records) pivots.push_back(r.pivot);
    CHECK(pivots == std::vector<int>{0, 1, 2, 0, 1});
}

TEST_CASE("cf_expand: pure power l=5 m=2 under UnitNormMin") {
    ExpansionResult res = cf_expand(purepower_state(5, 2), PivotStrategy::UnitNormMin, 100);
    REQUIRE(res.status == ExpandStatus::Periodic);
    CHECK(res.preperiod_len == 3);
    CHECK(res.period_len == 4);
    CHECK(digit_rows(res.records) == std::vector<std::vector<Int>>{
                                         row({80, 4, 12, 32}), row({80, 80, 6, 24}),
                                         row({40, 80, 80, 8}), row({10, 40, 80, 80}),
                                         row({80, 10, 40, 80}), row({80, 80, 10, 40}),
                                         row({40, 80, 80, 10})});
}

TEST_CASE("cf_expand: MaxNormalized on l=4 m=2 picks a different first pivot") {
    auto [rec, next] = cf_step(purepower_state(4, 2), PivotStrategy::MaxNormalized);
    CHECK(rec.pivot == 1);
    CHECK(rec.digits == row({0, 8, 3}));
}

TEST_CASE("periodicity certificate: exact state revisit, no earlier collision") {
    ExpansionResult res = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 100);
    REQUIRE(res.status == ExpandStatus::Periodic);
    size_t entry = res.preperiod_len, period = res.period_len;
    CHECK(res.states[entry].key() == res.states[entry + period].key());
    std::set<std::string> keys;
    for (size_t i = 0; i < entry + period; ++i) CHECK(keys.insert(res.states[i].key()).second);
    // post-step components are certified in (0,1)
    RealEmbedding& emb = *res.states[0].embedding();
    for (const auto& st : res.states) {
        for (const auto& c : st.components()) {
            CHECK(elem_sign(c, emb) > 0);
            CHECK(elem_sign(c - Rat(1), emb) < 0);
        }
    }
    // digit invariants
    for (const auto& r : res.records) {
        CHECK(r.digits[static_cast<size_t>(r.pivot)] >= 1);
        for (const auto& d : r.digits) CHECK(d >= 0);
    }
}

TEST_CASE("digit sequences are invariant under minpoly scaling") {
    FieldPtr f = make_field(ipoly({2, -6, 0, 2}));  // 2(x^3 - 3x + 1)
    auto emb = std::make_shared<RealEmbedding>(select_root(f, RatInterval(Rat(0), Rat(1))));
    FieldElement delta = gen_element(f);
    ExpansionState s = ExpansionState::create(emb, {delta, delta * delta});
    ExpansionResult scaled = cf_expand(s, PivotStrategy::MaxNormalized, 100);
    ExpansionResult base = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 100);
    CHECK(digit_rows(scaled.records) == digit_rows(base.records));
    CHECK(scaled.preperiod_len == base.preperiod_len);
    CHECK(scaled.period_len == base.period_len);
}

TEST_CASE("cf_expand: budget exhaustion and bad budgets") {
    ExpansionResult res = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 2);
    CHECK(res.status == ExpandStatus::BudgetExhausted);
    CHECK(res.records.size() == 2);
    CHECK(res.preperiod_len == 2);
    CHECK(res.period_len == 0);
    CHECK_THROWS_AS(cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 0), InputError);
}

TEST_CASE("cf_expand: a state leaving the domain is a status, not a crash") {
    FieldPtr f = make_field(ipoly({1, -3, 0, 1}));
    auto emb = std::make_shared<RealEmbedding>(select_root(f, RatInterval(Rat(0), Rat(1))));
    FieldElement delta = gen_element(f);
    // rational second component: first step's fractional parts degenerate
    ExpansionState bad =
        ExpansionState::create_unchecked(emb, {delta, make_element(f, make_rat(1, 2))});
    ExpansionResult res = cf_expand(bad, PivotStrategy::MaxNormalized, 50);
    CHECK(res.status == ExpandStatus::LeftDomain);
    CHECK(res.violation_step == 1);
    CHECK(!res.violation_reason.empty());
}

TEST_CASE("step_inverse: exact reconstruction along whole runs") {
    for (PivotStrategy strat : {PivotStrategy::MaxNormalized, PivotStrategy::UnitNormMin}) {
        ExpansionResult res = cf_expand(purepower_state(4, 3), strat, 40);
        REQUIRE(res.records.size() >= 3);
        for (size_t k = 0; k < res.records.size(); ++k) {
            ExpansionState prev = step_inverse(res.records[k], res.states[k + 1]);
            CHECK(prev.components() == res.states[k].components());
        }
    }
    // the documented example: inverse of trinomial step 1 applied to (1-d^2, d)
    ExpansionResult tri = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 10);
    ExpansionState back = step_inverse(tri.records[0], tri.states[1]);
    CHECK(back.components() == tri.states[0].components());
}

TEST_CASE("step_inverse: corrupt records are rejected") {
    ExpansionResult res = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 10);
    StepRecord rec = res.records[0];
    FieldPtr f = res.states[0].field();
    auto emb = res.states[0].embedding();
    // zero digits against a zero component: denominator collapses
    StepRecord zero_rec = rec;
    zero_rec.digits = {Int(0), Int(0)};
    ExpansionState degenerate = ExpansionState::create_unchecked(
        emb, {make_element(f, Rat(0)), make_element(f, Rat(0))});
    CHECK_THROWS_AS(step_inverse(zero_rec, degenerate), InputError);

    StepRecord short_rec = rec;
    short_rec.digits = {Int(2)};
    CHECK_THROWS_AS(step_inverse(short_rec, res.states[1]), InputError);
    StepRecord bad_pivot = rec;
    bad_pivot.pivot = 5;
    CHECK_THROWS_AS(step_inverse(bad_pivot, res.states[1]), InputError);
}

TEST_CASE("convergents approach the expanded point") {
    ExpansionResult res = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 100);
    REQUIRE(res.status == ExpandStatus::Periodic);

    CHECK(convergent(res.records, 0) == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(convergent(res.records, 1) == std::vector<Rat>{make_rat(1, 2), Rat(0)});
    CHECK_THROWS_AS(convergent(res.records, res.records.size() + 1), InputError);

    // |pi_40 - (delta, delta^2)| < 1e-6 componentwise, decided by exact signs
    std::vector<StepRecord> forty = unroll(res, 40);
    std::vector<Rat> pi = convergent(forty, 40);
    const auto& target = res.states[0].components();
    RealEmbedding& emb = *res.states[0].embedding();
    Rat eps = make_rat(1, 1000000);
    for (size_t i = 0; i < pi.size(); ++i) {
        FieldElement err = target[i] - pi[i];
        CHECK(elem_sign(err - eps, emb) < 0);
        CHECK(elem_sign(err + eps, emb) > 0);
    }
}

TEST_CASE("unroll extends periodic results cyclically") {
    ExpansionResult res = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 100);
    std::vector<StepRecord> eleven = unroll(res, 11);
    REQUIRE(eleven.size() == 11);
    for (size_t i = 0; i < 11; ++i) CHECK(eleven[i].index == static_cast<int>(i) + 1);
    // rows 8..11 repeat rows 4..7
    for (size_t i = 7; i < 11; ++i) CHECK(eleven[i].digits == eleven[i - 4].digits);
    CHECK(unroll(res, 3) == std::vector<StepRecord>(res.records.begin(), res.records.begin() + 3));

    ExpansionResult cut = cf_expand(trinomial_state(3), PivotStrategy::MaxNormalized, 2);
    CHECK_THROWS_AS(unroll(cut, 5), InputError);
    CHECK(unroll(cut, 2).size() == 2);
}

TEST_CASE("jp_expand: fixed points with constant digits (l, k)") {
    struct Case {
        long k, l;
    };
    for (Case c : {Case{2, 1}, Case{3, 3}, Case{5, 0}, Case{4, 2}}) {
        CAPTURE(c.k);
        CAPTURE(c.l);
        ExpansionResult res = jp_expand(jp_state(c.k, c.l), 20);
        REQUIRE(res.status == ExpandStatus::Periodic);
        CHECK(res.preperiod_len == 0);
        CHECK(res.period_len == 1);
        CHECK(res.records[0].digits == row({c.l, c.k}));
        CHECK(res.records[0].kind == RecordKind::JP);
        CHECK(res.records[0].pivot == 1);
        // fixed point: the state returns to itself after one step
        CHECK(res.states[1].components() == res.states[0].components());
    }
}

TEST_CASE("jp_step: rational fixture walks into the zero-component error") {
    FieldPtr f = make_field(ipoly({1, -3, 0, 1}));
    auto emb = std::make_shared<RealEmbedding>(select_root(f, RatInterval(Rat(0), Rat(1))));
    ExpansionState s = ExpansionState::create_unchecked(
        emb, {make_element(f, make_rat(1, 2)), make_element(f, make_rat(1, 4))});

    auto [rec1, s1] = jp_step(s);
    CHECK(rec1.digits == row({0, 2}));
    CHECK(s1.components()[0] == make_element(f, make_rat(1, 2)));
    CHECK(s1.components()[1].is_zero());

    ExpansionResult res = jp_expand(s, 50);
    CHECK(res.status == ExpandStatus::LeftDomain);
    CHECK(res.violation_step == 3);  // (1/2,1/4) -> (1/2,0) -> (0,0) -> undefined
    CHECK(res.records.size() == 2);

    // JP record inversion reconstructs the rational predecessors too
    for (size_t k = 0; k < res.records.size(); ++k) {
        ExpansionState prev = step_inverse(res.records[k], res.states[k + 1]);
        CHECK(prev.components() == res.states[k].components());
    }

    // negative or >= 1 components are rejected up front
    ExpansionState neg = ExpansionState::create_unchecked(
        emb, {make_element(f, make_rat(-1, 2)), make_element(f, make_rat(1, 4))});
    CHECK_THROWS_AS(jp_expand(neg, 5), DomainViolationError);
    ExpansionState big = ExpansionState::create_unchecked(
        emb, {make_element(f, make_rat(1, 2)), make_element(f, make_rat(5, 4))});
    CHECK_THROWS_AS(jp_expand(big, 5), DomainViolationError);
}
