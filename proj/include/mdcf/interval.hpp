#pragma once

#include <algorithm>

#include "mdcf/errors.hpp"
#include "mdcf/polynomial.hpp"
#include "mdcf/rational.hpp"

namespace mdcf {

// Closed interval [lo, hi] with exact rational endpoints.  The arithmetic
// below is outward-rounded in the trivial sense (exact endpoint arithmetic),
// so every operation returns an interval containing the image of its inputs.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw InputError("interval with lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    // +1 if certainly positive, -1 if certainly negative, 0 if the interval
    // straddles (or touches) zero and the sign is undecided.
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;
    }
};

inline RatInterval iv_add(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline RatInterval iv_sub(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline RatInterval iv_neg(const RatInterval& a) {
    return {-a.hi, -a.lo};
}

inline RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline RatInterval iv_scale(const RatInterval& a, const Rat& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

inline RatInterval iv_shift(const RatInterval& a, const Rat& c) {
    return {a.lo + c, a.hi + c};
}

// 1/[lo,hi]; requires a sign-definite interval.
inline RatInterval iv_inv(const RatInterval& a) {
    if (a.sign() == 0) throw InputError("interval reciprocal across zero");
    return {Rat(1) / a.hi, Rat(1) / a.lo};
}

// Horner evaluation of f over x; contains f(t) for every t in x.
inline RatInterval interval_horner(const RatPoly& f, const RatInterval& x) {
    RatInterval r;  // [0, 0]
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        r = iv_mul(r, x);
        r = iv_shift(r, c[i]);
    }
    return r;
}

// Smallest enclosing interval with dyadic endpoints of denominator 2^bits.
// Used to keep endpoint sizes bounded across long interval computations.
inline RatInterval round_outward(const RatInterval& a, unsigned long bits) {
    Rat scale = pow2_neg(bits);  // 2^-bits
    Rat lo = Rat(rat_floor(a.lo / scale)) * scale;
    Rat hi = Rat(rat_ceil(a.hi / scale)) * scale;
    return {std::move(lo), std::move(hi)};
}

}  // namespace mdcf
