#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "mdcf/rational.hpp"

namespace mdcf {

// Dense univariate polynomial over the rationals, coefficients stored
// lowest degree first.  The zero polynomial has an empty coefficient
// vector; otherwise the leading coefficient is nonzero.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static RatPoly constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }
    // x^k
    static RatPoly monomial(size_t k, const Rat& c = Rat(1));

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    // coefficient of x^k (0 beyond the degree)
    const Rat& coeff(size_t k) const;
    const Rat& lc() const;  // leading coefficient; polynomial must be nonzero

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rat& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RatPoly& o) const { return c_ != o.c_; }

    RatPoly derivative() const;
    // divides every coefficient by lc(); polynomial must be nonzero
    RatPoly monic() const;
    // p(s(x)) by Horner over polynomials
    RatPoly compose(const RatPoly& s) const;

private:
    void trim();
    std::vector<Rat> c_;
};

// Exact evaluation f(x).
Rat poly_eval(const RatPoly& f, const Rat& x);

// Euclidean division: f = q*g + r with deg r < deg g.  g must be nonzero.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& f, const RatPoly& g);

// Monic gcd (zero polynomial if both inputs are zero).
RatPoly poly_gcd(const RatPoly& f, const RatPoly& g);

// s*f + t*g = d with d the monic gcd.
struct PolyExtGcd {
    RatPoly d, s, t;
};
PolyExtGcd poly_ext_gcd(const RatPoly& f, const RatPoly& g);

// f / gcd(f, f'): same roots, all simple.
RatPoly squarefree_part(const RatPoly& f);

// Res(f, g) = lc(f)^{deg g} * prod_{f(a)=0} g(a), computed by the
// subresultant polynomial remainder sequence.  f, g must be nonzero.
Rat poly_resultant(const RatPoly& f, const RatPoly& g);

// Sturm chain of the squarefree part of f; reusable across queries.
class SturmChain {
public:
    explicit SturmChain(const RatPoly& f);
    // number of distinct real roots in (lo, hi]; f must not vanish at lo, hi
    int count(const Rat& lo, const Rat& hi) const;
    int variations(const Rat& x) const;
    const RatPoly& squarefree() const { return chain_.front(); }

private:
    std::vector<RatPoly> chain_;  // integer-coefficient, primitive
};

// Distinct real roots of the squarefree part of f in the open interval
// (lo, hi); requires f(lo) != 0 and f(hi) != 0.
int sturm_count(const RatPoly& f, const Rat& lo, const Rat& hi);

}  // namespace mdcf
