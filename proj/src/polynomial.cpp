#include "mdcf/polynomial.hpp"

#include <algorithm>

#include "mdcf/errors.hpp"

namespace mdcf {

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::monomial(size_t k, const Rat& c) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return RatPoly(std::move(v));
}

const Rat& RatPoly::coeff(size_t k) const {
    static const Rat zero(0);
    return k < c_.size() ? c_[k] : zero;
}

const Rat& RatPoly::lc() const {
    if (c_.empty()) throw InputError("leading coefficient of zero polynomial");
    return c_.back();
}

RatPoly RatPoly::operator-() const {
    std::vector<Rat> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (c_.empty() || o.c_.empty()) return RatPoly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rat& s) const {
    if (s == 0) return RatPoly();
    std::vector<Rat> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(v));
}

RatPoly RatPoly::monic() const {
    return *this * (Rat(1) / lc());
}

RatPoly RatPoly::compose(const RatPoly& s) const {
    RatPoly r;
    for (size_t i = c_.size(); i-- > 0;) r = r * s + RatPoly::constant(c_[i]);
    return r;
}

Rat poly_eval(const RatPoly& f, const Rat& x) {
    Rat r(0);
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& f, const RatPoly& g) {
    if (g.is_zero()) throw InputError("polynomial division by zero");
    if (f.degree() < g.degree()) return {RatPoly(), f};
    std::vector<Rat> rem = f.coeffs();
    std::vector<Rat> quo(f.degree() - g.degree() + 1, Rat(0));
    const auto& gc = g.coeffs();
    const Rat& glc = g.lc();
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        Rat q = rem[k + g.degree()] / glc;
        quo[k] = q;
        if (q == 0) continue;
        for (int j = 0; j <= g.degree(); ++j) rem[k + j] -= q * gc[j];
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly poly_gcd(const RatPoly& f, const RatPoly& g) {
    RatPoly a = f, b = g;
    while (!b.is_zero()) {
        RatPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

PolyExtGcd poly_ext_gcd(const RatPoly& f, const RatPoly& g) {
    // invariant: s*f + t*g = a and u*f + v*g = b
    RatPoly a = f, b = g;
    RatPoly s = RatPoly::constant(Rat(1)), t;
    RatPoly u, v = RatPoly::constant(Rat(1));
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        RatPoly ns = s - q * u, nt = t - q * v;
        s = std::move(u);
        t = std::move(v);
        u = std::move(ns);
        v = std::move(nt);
    }
    if (a.is_zero()) return {a, s, t};
    Rat inv_lc = Rat(1) / a.lc();
    return {a * inv_lc, s * inv_lc, t * inv_lc};
}

RatPoly squarefree_part(const RatPoly& f) {
    if (f.is_zero() || f.degree() == 0) return f;
    RatPoly d = poly_gcd(f, f.derivative());
    return poly_divmod(f, d).first;
}

namespace {

// Integer polynomial helpers for the subresultant PRS and Sturm chains.
using IntPoly = std::vector<Int>;  // lowest degree first, trimmed

void ip_trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int ip_deg(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

// Clears denominators and the content; returns the primitive integer
// polynomial with the same sign as f, plus the positive rational c with
// f = c * primitive.
IntPoly primitive_of(const RatPoly& f, Rat* scale = nullptr) {
    Int den(1);
    for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly p(f.coeffs().size());
    Int content(0);
    for (size_t i = 0; i < p.size(); ++i) {
        p[i] = f.coeffs()[i].get_num() * (den / f.coeffs()[i].get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), p[i].get_mpz_t());
    }
    if (content == 0) content = 1;
    for (auto& c : p) c /= content;
    if (scale) *scale = make_rat(content, den);
    return p;
}

// Pseudo-remainder: lc(B)^{deg A - deg B + 1} * A = Q*B + R.
IntPoly ip_prem(IntPoly A, const IntPoly& B) {
    int db = ip_deg(B);
    const Int blc = B.back();
    int spare = ip_deg(A) - db + 1;  // factors of blc not yet applied
    while (ip_deg(A) >= db) {
        Int head = A.back();
        int k = ip_deg(A) - db;
        for (auto& c : A) c *= blc;
        for (int j = 0; j <= db; ++j) A[static_cast<size_t>(j + k)] -= head * B[j];
        ip_trim(A);
        --spare;
    }
    if (spare > 0 && !A.empty()) {
        Int f = int_pow(blc, static_cast<unsigned long>(spare));
        for (auto& c : A) c *= f;
    }
    return A;
}

int ip_eval_sign(const IntPoly& p, const Rat& x) {
    // sign of p(n/d) from d^deg * p(n/d) = sum c_i n^i d^{deg-i}
    const Int& n = x.get_num();
    const Int& d = x.get_den();
    Int acc(0), npow(1);
    std::vector<Int> terms(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        terms[i] = p[i] * npow;
        npow *= n;
    }
    Int dpow(1);
    for (size_t i = p.size(); i-- > 0;) {
        acc += terms[i] * dpow;
        dpow *= d;
    }
    return sgn(acc);
}

}  // namespace

Rat poly_resultant(const RatPoly& f, const RatPoly& g) {
    if (f.is_zero() || g.is_zero()) throw InputError("resultant of zero polynomial");
    // Res(f,g) = Res(F,G) / (df^{deg g} * dg^{deg f}) for the primitive
    // integer parts F, G with f = cf*F, g = cg*G:
    //   Res(cf*F, cg*G) = cf^{deg G} * cg^{deg F} * Res(F, G)
    Rat cf, cg;
    IntPoly A = primitive_of(f, &cf), B = primitive_of(g, &cg);
    Rat outer = rat_pow(cf, static_cast<unsigned long>(ip_deg(B))) *
                rat_pow(cg, static_cast<unsigned long>(ip_deg(A)));

    int s = 1;
    if (ip_deg(A) < ip_deg(B)) {
        if ((ip_deg(A) & 1) && (ip_deg(B) & 1)) s = -s;
        std::swap(A, B);
    }
    // Both constants: empty Sylvester matrix.
    if (ip_deg(A) == 0) return outer;

    Int gcoef(1), h(1);
    while (ip_deg(B) > 0) {
        int delta = ip_deg(A) - ip_deg(B);
        if ((ip_deg(A) & 1) && (ip_deg(B) & 1)) s = -s;
        IntPoly R = ip_prem(A, B);
        A = std::move(B);
        // B = R / (g * h^delta), exact in Z
        Int div = gcoef * int_pow(h, static_cast<unsigned long>(delta));
        B = std::move(R);
        for (auto& c : B) {
            Int q;
            mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
            c = std::move(q);
        }
        if (B.empty()) return Rat(0);  // common factor
        gcoef = A.back();
        if (delta > 0) {
            // h = g^delta / h^{delta-1}, exact
            Int num = int_pow(gcoef, static_cast<unsigned long>(delta));
            Int den = int_pow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // B is a nonzero constant c: Res = s * c^{deg A} / h^{deg A - 1}
    Int num = int_pow(B[0], static_cast<unsigned long>(ip_deg(A)));
    Int den = int_pow(h, static_cast<unsigned long>(ip_deg(A) - 1));
    Int res;
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (s < 0) res = -res;
    return outer * Rat(res);
}

namespace {

// Integer-primitive representative with the same sign (positive rescale only),
// so Sturm sign sequences are unaffected.
RatPoly to_primitive(const RatPoly& p) {
    IntPoly ip = primitive_of(p);
    std::vector<Rat> v(ip.size());
    for (size_t i = 0; i < ip.size(); ++i) v[i] = Rat(ip[i]);
    return RatPoly(std::move(v));
}

}  // namespace

SturmChain::SturmChain(const RatPoly& f) {
    if (f.is_zero()) throw InputError("Sturm chain of zero polynomial");
    RatPoly p0 = squarefree_part(f);
    chain_.push_back(to_primitive(p0));
    if (p0.degree() == 0) return;
    chain_.push_back(to_primitive(p0.derivative()));
    while (chain_.back().degree() > 0) {
        const RatPoly& a = chain_[chain_.size() - 2];
        const RatPoly& b = chain_.back();
        RatPoly r = poly_divmod(a, b).second;
        if (r.is_zero()) break;  // cannot happen for squarefree input
        chain_.push_back(to_primitive(-r));
    }
}

int SturmChain::variations(const Rat& x) const {
    int var = 0, prev = 0;
    for (const auto& p : chain_) {
        // chain polynomials have integer coefficients by construction
        IntPoly ip(p.coeffs().size());
        for (size_t i = 0; i < ip.size(); ++i) ip[i] = p.coeffs()[i].get_num();
        int sg = ip_eval_sign(ip, x);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++var;
        prev = sg;
    }
    return var;
}

int SturmChain::count(const Rat& lo, const Rat& hi) const {
    if (!(lo < hi)) throw InputError("Sturm count on empty interval");
    return variations(lo) - variations(hi);
}

int sturm_count(const RatPoly& f, const Rat& lo, const Rat& hi) {
    SturmChain chain(f);
    if (poly_eval(chain.squarefree(), lo) == 0 || poly_eval(chain.squarefree(), hi) == 0)
        throw InputError("Sturm count endpoint is a root; perturb the endpoint");
    return chain.count(lo, hi);
}

}  // namespace mdcf
