#pragma once

#include <gmpxx.h>

#include <string>

#include "mdcf/errors.hpp"

namespace mdcf {

// Arbitrary-precision integers and rationals.  GMP's mpq_class keeps
// exactly the invariants the library needs (canonical form, positive
// denominator, canonical zero 0/1) as long as values are canonicalized
// at construction boundaries; arithmetic results stay canonical.
using Int = mpz_class;
using Rat = mpq_class;

// num/den as a canonical rational; den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) {
    return make_rat(Int(num), Int(den));
}

// Exact floor of a rational.
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Exact ceiling of a rational.
inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// x^e for e >= 0.
inline Rat rat_pow(const Rat& x, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
    // num/den were already coprime, so their powers are too.
    return r;
}

inline Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

// 2^-bits as an exact rational.
inline Rat pow2_neg(unsigned long bits) {
    Rat r(1);
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), bits);
    return r;
}

// Parses "p" or "p/q" with an optional leading sign on either part;
// whitespace is rejected.
inline Rat parse_rat(const std::string& s) {
    auto malformed = [&] { return InputError("malformed rational: '" + s + "'"); };
    auto parse_part = [&](std::string part) {
        bool neg = false;
        if (!part.empty() && (part[0] == '+' || part[0] == '-')) {
            neg = part[0] == '-';
            part.erase(0, 1);
        }
        if (part.empty()) throw malformed();
        for (char c : part)
            if (c < '0' || c > '9') throw malformed();
        Int v(part, 10);
        if (neg) v = -v;
        return v;
    };
    size_t slash = s.find('/');
    if (slash != std::string::npos && s.find('/', slash + 1) != std::string::npos)
        throw malformed();
    Int num = parse_part(slash == std::string::npos ? s : s.substr(0, slash));
    Int den = slash == std::string::npos ? Int(1) : parse_part(s.substr(slash + 1));
    if (den == 0) throw malformed();
    return make_rat(num, den);
}

// "p/q" for non-integers, "p" otherwise.
inline std::string rat_str(const Rat& x) {
    return x.get_str();
}

inline std::string int_str(const Int& x) {
    return x.get_str();
}

}  // namespace mdcf
