#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mdcf/polynomial.hpp"
#include "mdcf/rational.hpp"

namespace mdcf {

// A number field K = Q[x]/(f) presented by a monic defining polynomial of
// degree l >= 2.  Irreducibility is a documented precondition rather than a
// verified one: a reducible polynomial is detected lazily, when some inverse
// hits a nontrivial gcd with it (see FieldElement::inverse).
class NumberField {
  public:
    explicit NumberField(const RatPoly& minpoly);

    int degree() const { return minpoly_.degree(); }
    const RatPoly& minpoly() const { return minpoly_; }

  private:
    RatPoly minpoly_;  // monic
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(const RatPoly& minpoly);

// Two field handles are compatible when they define the same quotient ring.
bool same_field(const FieldPtr& a, const FieldPtr& b);

// An element of K in the power basis 1, theta, ..., theta^{l-1}, stored as a
// polynomial representative of degree < l (trailing zeros trimmed).
class FieldElement {
  public:
    FieldElement(FieldPtr field, RatPoly rep);

    const FieldPtr& field() const { return field_; }
    const RatPoly& rep() const { return rep_; }
    // Power-basis coordinates, always exactly l entries.
    std::vector<Rat> coords() const;

    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rat rational_value() const;  // requires is_rational()

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const Rat& c) const;
    FieldElement operator+(const Rat& c) const;
    FieldElement operator-(const Rat& c) const;
    // Multiplicative inverse via the extended Euclidean algorithm against
    // minpoly.  Throws NonInvertibleError on zero, or when gcd(rep, minpoly)
    // is a nontrivial factor (reducible defining polynomial).
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    FieldPtr field_;
    RatPoly rep_;
};

FieldElement make_element(const FieldPtr& field, RatPoly rep);
FieldElement make_element(const FieldPtr& field, const Rat& value);
// The distinguished generator theta of the power basis.
FieldElement gen_element(const FieldPtr& field);
FieldElement elem_pow(const FieldElement& a, unsigned long e);

// Field norm N(a) = det of the multiplication-by-a matrix in the power
// basis, computed by fraction-free (Bareiss) elimination over the integers.
Rat elem_norm(const FieldElement& a);

// Injective, deterministic encoding of the coefficient vector; per
// coefficient: a sign byte (0 negative, 1 zero, 2 positive) followed by a
// length-prefixed numerator magnitude and length-prefixed denominator (both
// omitted-as-empty for zero).  Equal keys iff equal elements.
std::string canonical_key(const FieldElement& a);
FieldElement canonical_key_decode(const FieldPtr& field, const std::string& key);

// True iff 1, alpha_1, ..., alpha_{l-1} are linearly independent over Q,
// i.e. the l x l matrix of their coordinate rows is nonsingular.  Requires
// exactly l-1 elements, all in the same field.
bool independent_with_one(const std::vector<FieldElement>& elems);

}  // namespace mdcf
