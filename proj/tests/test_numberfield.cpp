#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "mdcf/errors.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/polynomial.hpp"
#include "mdcf/rational.hpp"
#include "testutil.hpp"

using namespace mdcf;
using namespace mdcf::testutil;

namespace {

RatPoly ipoly(std::initializer_list<long> coeffs) {
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return RatPoly(std::move(v));
}

// x^3 - 9 (theta^3 = 9)
FieldPtr cbrt9_field() { return make_field(ipoly({-9, 0, 0, 1})); }
// x^3 - 3x + 1
FieldPtr delta_field() { return make_field(ipoly({1, -3, 0, 1})); }
// x^4 - 17
FieldPtr quartic17_field() { return make_field(ipoly({-17, 0, 0, 0, 1})); }

FieldElement rand_element(Rng& rng, const FieldPtr& f, long max_num = 9, long max_den = 9) {
    std::vector<Rat> c(static_cast<size_t>(f->degree()));
    for (auto& x : c) x = rand_rat(rng, max_num, max_den);
    return make_element(f, RatPoly(std::move(c)));
}

}  // namespace

TEST_CASE("field construction normalizes and validates") {
    FieldPtr f = make_field(ipoly({-18, 0, 0, 2}));  // 2x^3 - 18
    CHECK(f->degree() == 3);
    CHECK(f->minpoly() == ipoly({-9, 0, 0, 1}));
    CHECK(same_field(f, cbrt9_field()));

    CHECK_THROWS_AS(make_field(ipoly({-2, 1})), InputError);       // degree 1
    CHECK_THROWS_AS(make_field(RatPoly()), InputError);            // zero
    CHECK_THROWS_AS(make_field(ipoly({1, -2, 1})), InputError);    // (x-1)^2
    CHECK_THROWS_AS(make_field(ipoly({0, 0, 1})), InputError);     // x^2
}

TEST_CASE("element construction reduces modulo the defining polynomial") {
    FieldPtr f = cbrt9_field();
    CHECK(elem_pow(gen_element(f), 3) == make_element(f, Rat(9)));
    CHECK(make_element(f, RatPoly::monomial(4, Rat(1))) == gen_element(f) * Rat(9));
    CHECK(make_element(f, Rat(0)).is_zero());
    CHECK(make_element(f, make_rat(5, 2)).is_rational());
    CHECK(make_element(f, make_rat(5, 2)).rational_value() == make_rat(5, 2));
    CHECK_FALSE(gen_element(f).is_rational());
    CHECK_THROWS_AS(gen_element(f).rational_value(), InputError);
    CHECK(gen_element(f).coords() == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});
}

TEST_CASE("products reduce correctly in the power basis") {
    FieldPtr f = cbrt9_field();
    FieldElement theta = gen_element(f);
    // (theta-2)(theta^2+2theta+4) = theta^3 - 8 = 1
    CHECK((theta - Rat(2)) * make_element(f, ipoly({4, 2, 1})) == make_element(f, Rat(1)));
    // a * 1 = a
    FieldElement a = make_element(f, ipoly({3, -1, 2}));
    CHECK(a * make_element(f, Rat(1)) == a);

    FieldPtr d = delta_field();
    FieldElement delta = gen_element(d);
    // delta * delta^2 = delta^3 = 3*delta - 1
    CHECK(delta * (delta * delta) == make_element(d, ipoly({-1, 3})));
}

TEST_CASE("inverses via the extended Euclidean algorithm") {
    FieldPtr f = cbrt9_field();
    FieldElement theta = gen_element(f);
    CHECK((theta - Rat(2)).inverse() == make_element(f, ipoly({4, 2, 1})));
    CHECK(make_element(f, make_rat(2, 3)).inverse() == make_element(f, make_rat(3, 2)));

    FieldPtr d = delta_field();
    FieldElement delta = gen_element(d);
    // 1/delta = 3 - delta^2, from 1 = 3*delta - delta^3
    CHECK(delta.inverse() == make_element(d, ipoly({3, 0, -1})));

    CHECK_THROWS_AS(make_element(f, Rat(0)).inverse(), NonInvertibleError);

    Rng rng(424242);
    for (int it = 0; it < 40; ++it) {
        FieldElement a = rand_element(rng, f);
        if (a.is_zero()) continue;
        CHECK(a * a.inverse() == make_element(f, Rat(1)));
        CHECK(a / a == make_element(f, Rat(1)));
    }
}

TEST_CASE("a reducible defining polynomial is detected on inversion") {
    // (x-3)(x^2-2) = x^3 - 3x^2 - 2x + 6 is squarefree, so construction
    // succeeds; inverting theta-3 hits the shared factor.
    FieldPtr f = make_field(ipoly({6, -2, -3, 1}));
    FieldElement theta = gen_element(f);
    CHECK_THROWS_AS((theta - Rat(3)).inverse(), NonInvertibleError);
    // elements coprime to the factorization still invert
    CHECK(theta * theta.inverse() == make_element(f, Rat(1)));
}

TEST_CASE("cross-field operations are rejected") {
    FieldPtr f = cbrt9_field(), d = delta_field();
    CHECK_THROWS_AS(gen_element(f) + gen_element(d), FieldMismatchError);
    CHECK_THROWS_AS(gen_element(f) * gen_element(d), FieldMismatchError);
    CHECK_FALSE(gen_element(f) == gen_element(d));
}

TEST_CASE("norms: fixed values") {
    FieldPtr f = cbrt9_field();
    FieldElement theta = gen_element(f);
    CHECK(elem_norm(theta - Rat(2)) == 1);
    CHECK(elem_norm(theta * theta - Rat(4)) == 17);
    CHECK(elem_norm(make_element(f, Rat(5))) == 125);
    CHECK(elem_norm(make_element(f, make_rat(-1, 2))) == make_rat(-1, 8));
    CHECK(elem_norm(make_element(f, Rat(0))) == 0);

    FieldPtr d = delta_field();
    CHECK(elem_norm(gen_element(d)) == -1);

    FieldPtr q = quartic17_field();
    FieldElement t4 = gen_element(q);
    CHECK(elem_norm(elem_pow(t4, 3) - Rat(8)) == -817);
    CHECK(elem_norm(t4 * t4 - Rat(4)) == 1);

    // N(theta - m) = 1 when theta^3 = m^3 + 1
    for (long m = 1; m <= 6; ++m) {
        RatPoly p = RatPoly::monomial(3, Rat(1)) - RatPoly::constant(Rat(m * m * m + 1));
        FieldPtr fm = make_field(p);
        CHECK(elem_norm(gen_element(fm) - Rat(m)) == 1);
    }
}

TEST_CASE("norm properties: multiplicativity, inverses, resultant agreement") {
    Rng rng(20260814);
    std::vector<FieldPtr> fields = {
        cbrt9_field(), delta_field(), quartic17_field(),
        make_field(ipoly({-2, 0, 0, 0, 0, 1})),     // x^5 - 2
        make_field(ipoly({-3, 0, 0, 0, 0, 0, 1})),  // x^6 - 3
    };
    for (const auto& f : fields) {
        for (int it = 0; it < 25; ++it) {
            FieldElement a = rand_element(rng, f, 6, 4);
            FieldElement b = rand_element(rng, f, 6, 4);
            CHECK(elem_norm(a * b) == elem_norm(a) * elem_norm(b));
            if (!a.is_zero()) CHECK(elem_norm(a.inverse()) == Rat(1) / elem_norm(a));
            // independent reference: Sylvester resultant of (minpoly, rep)
            if (!a.is_zero()) CHECK(elem_norm(a) == sylvester_resultant(f->minpoly(), a.rep()));
        }
        // norm of a rational c is c^l
        Rat c = make_rat(-3, 2);
        CHECK(elem_norm(make_element(f, c)) == rat_pow(c, static_cast<unsigned long>(f->degree())));
    }
}

TEST_CASE("canonical keys: fixed encodings") {
    FieldPtr f = cbrt9_field();
    // zero element: per coefficient a sign byte 1 plus two empty length prefixes
    std::string zero_key = canonical_key(make_element(f, Rat(0)));
    CHECK(zero_key.size() == 9);  // 3 bytes per coefficient, degree 3
    CHECK(zero_key == std::string("\x01\x00\x00\x01\x00\x00\x01\x00\x00", 9));

    FieldElement theta = gen_element(f);
    std::string k1 = canonical_key(theta - Rat(2));   // coords (-2, 1, 0)
    std::string k2 = canonical_key(-(theta - Rat(2)));  // coords (2, -1, 0)
    REQUIRE(k1.size() == k2.size());
    std::vector<size_t> diff;
    for (size_t i = 0; i < k1.size(); ++i)
        if (k1[i] != k2[i]) diff.push_back(i);
    // they differ in exactly the two sign bytes (coeff 0 at offset 0,
    // coeff 1 after the 5-byte encoding of -2)
    CHECK(diff == std::vector<size_t>{0, 5});
}

TEST_CASE("canonical keys round-trip and are injective") {
    Rng rng(1618);
    FieldPtr f = quartic17_field();
    std::set<std::string> seen;
    std::set<std::string> reps;
    for (int it = 0; it < 300; ++it) {
        FieldElement a = rand_element(rng, f, 20, 6);
        std::string key = canonical_key(a);
        CHECK(canonical_key_decode(f, key) == a);
        // injectivity: distinct elements never collide
        bool new_rep = reps.insert(canonical_key(a)).second;
        bool new_key = seen.insert(key).second;
        CHECK(new_rep == new_key);
    }
    // big coefficients exercise multi-byte length prefixes
    Rat big = rat_pow(make_rat(7, 3), 200);
    FieldElement huge = make_element(f, big) + gen_element(f) * rat_pow(Rat(2), 300);
    CHECK(canonical_key_decode(f, canonical_key(huge)) == huge);
}

TEST_CASE("canonical key decoding rejects malformed input") {
    FieldPtr f = cbrt9_field();
    std::string key = canonical_key(gen_element(f) - Rat(2));
    CHECK_THROWS_AS(canonical_key_decode(f, key.substr(0, key.size() - 1)), InputError);
    CHECK_THROWS_AS(canonical_key_decode(f, key + std::string(1, '\x01')), InputError);
    CHECK_THROWS_AS(canonical_key_decode(f, std::string(1, '\x07')), InputError);
    CHECK_THROWS_AS(canonical_key_decode(f, std::string()), InputError);
}

TEST_CASE("joint independence with 1") {
    FieldPtr f = cbrt9_field();
    FieldElement theta = gen_element(f);
    CHECK(independent_with_one({theta - Rat(2), theta * theta - Rat(4)}));
    CHECK_FALSE(independent_with_one({theta - Rat(2), (theta - Rat(2)) * Rat(2)}));
    CHECK_FALSE(independent_with_one({theta, make_element(f, make_rat(5, 2))}));

    FieldPtr d = delta_field();
    FieldElement delta = gen_element(d);
    CHECK(independent_with_one({delta, delta * delta}));

    CHECK_THROWS_AS(independent_with_one({theta}), InputError);  // needs l-1 = 2
    CHECK_THROWS_AS(independent_with_one(std::vector<FieldElement>{}), InputError);
    CHECK_THROWS_AS(independent_with_one({theta, gen_element(d)}), FieldMismatchError);
}

TEST_CASE("rational scalar operations") {
    FieldPtr f = delta_field();
    FieldElement delta = gen_element(f);
    CHECK((delta + make_rat(1, 2)) - make_rat(1, 2) == delta);
    CHECK(delta * make_rat(3, 4) == make_element(f, RatPoly::monomial(1, make_rat(3, 4))));
    CHECK((delta * Rat(0)).is_zero());
}
