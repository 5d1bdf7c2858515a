#include "mdcf/oracle.hpp"

#include <optional>
#include <sstream>
#include <utility>

#include "mdcf/errors.hpp"

namespace mdcf {

namespace {

// Bisection tracker for the single root of f inside a caller-supplied
// window.  This is the oracle's own isolator: it shares only the algebra
// module (Sturm counting, exact evaluation) with the engine.
class RootTracker {
public:
    RootTracker(RatPoly f, RatInterval window) : f_(std::move(f)), iv_(std::move(window)) {
        if (!(iv_.width() > 0)) throw InputError("oracle: empty root window");
        if (sturm_count(f_, iv_.lo, iv_.hi) != 1)
            throw InputError("oracle: window does not isolate exactly one root");
        int slo = sgn(poly_eval(f_, iv_.lo));
        int shi = sgn(poly_eval(f_, iv_.hi));
        if (slo == 0 || shi == 0 || slo == shi)
            throw InputError("oracle: window endpoints must straddle the root");
        sign_lo_ = slo;
    }

    // Shrinks the isolating interval until its width is at most 2^-bits.
    void refine(unsigned long bits) {
        Rat target = pow2_neg(bits);
        while (iv_.width() > target) {
            Rat m = iv_.mid();
            int s = sgn(poly_eval(f_, m));
            // impossible for an irreducible minpoly of degree >= 2; guard anyway
            if (s == 0) throw InputError("oracle: rational root hit during refinement");
            if (s == sign_lo_)
                iv_ = RatInterval(std::move(m), iv_.hi);
            else
                iv_ = RatInterval(iv_.lo, std::move(m));
        }
    }

    const RatInterval& interval() const { return iv_; }

private:
    RatPoly f_;
    RatInterval iv_;
    int sign_lo_;
};

RatPoly checked_monic(const RatPoly& f) {
    if (f.degree() < 2) throw InputError("oracle: minimal polynomial must have degree >= 2");
    return f.monic();
}

// Interval layer over exact power-basis reps.  Reps evolve by polynomial
// modular arithmetic only; every floor/sign decision comes from a certified
// interval, recomputed at doubled precision whenever it is ambiguous.
class OracleEngine {
public:
    OracleEngine(const OracleProblem& prob, unsigned long start_bits, unsigned long max_bits)
        : f_(checked_monic(prob.minpoly)),
          exponent_(static_cast<unsigned long>(f_.degree()) - 1),
          bits_(start_bits),
          max_bits_(max_bits),
          root_(f_, prob.window) {
        root_.refine(bits_);
    }

    unsigned long bits() const { return bits_; }

    RatPoly reduce(const RatPoly& p) const {
        if (p.degree() < f_.degree()) return p;
        return poly_divmod(p, f_).second;
    }

    RatPoly mulmod(const RatPoly& a, const RatPoly& b) const { return reduce(a * b); }

    RatPoly powmod(const RatPoly& a, unsigned long e) const {
        RatPoly acc = RatPoly::constant(Rat(1));
        RatPoly base = reduce(a);
        while (e > 0) {
            if (e & 1) acc = mulmod(acc, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return acc;
    }

    // |N(rep)| via the resultant path; exact.
    Rat abs_norm(const RatPoly& rep) const {
        if (rep.is_zero()) return Rat(0);
        return Rat(abs(poly_resultant(f_, rep)));
    }

    // Inverse of rep modulo f via the extended Euclidean algorithm.
    RatPoly inv_mod(const RatPoly& rep) const {
        if (rep.is_zero()) throw DomainViolationError("oracle: zero pivot component", 0);
        PolyExtGcd e = poly_ext_gcd(f_, rep);
        if (e.d.degree() != 0) throw InputError("oracle: reducible minimal polynomial");
        return reduce(e.t);
    }

    // Certified sign of the real value of rep; nullopt = precision ceiling.
    std::optional<int> certified_sign(const RatPoly& rep) {
        if (rep.degree() <= 0) return rep.is_zero() ? 0 : sgn(rep.coeff(0));
        for (;;) {
            int s = value_iv(rep).sign();
            if (s != 0) return s;
            if (!escalate()) return std::nullopt;
        }
    }

    // Certified floor; the true value of a nonconstant rep is irrational, so
    // ambiguity is always resolvable by precision alone.
    std::optional<Int> certified_floor(const RatPoly& rep) {
        if (rep.degree() <= 0) return rat_floor(rep.is_zero() ? Rat(0) : rep.coeff(0));
        for (;;) {
            RatInterval v = value_iv(rep);
            Int flo = rat_floor(v.lo);
            Int fhi = rat_floor(v.hi);
            if (flo == fhi) return flo;
            if (!escalate()) return std::nullopt;
        }
    }

    // One step; on success replaces reps and returns the digit row.
    std::optional<std::vector<Int>> step(std::vector<RatPoly>& reps, OracleMode mode) {
        return mode == OracleMode::JP ? step_jp(reps) : step_ajpa(reps, mode);
    }

private:
    RatInterval value_iv(const RatPoly& rep) const {
        if (rep.degree() <= 0) {
            Rat c = rep.is_zero() ? Rat(0) : rep.coeff(0);
            return RatInterval(c, c);
        }
        return round_outward(interval_horner(rep, root_.interval()), bits_);
    }

    bool escalate() {
        if (bits_ >= max_bits_) return false;
        bits_ = std::min(bits_ * 2, max_bits_);
        root_.refine(bits_);
        return true;
    }

    std::optional<size_t> pivot_of(const std::vector<RatPoly>& reps, OracleMode mode) {
        std::vector<Rat> norms(reps.size());
        for (size_t i = 0; i < reps.size(); ++i) {
            norms[i] = abs_norm(reps[i]);
            if (sgn(norms[i]) == 0)
                throw DomainViolationError("oracle: zero component in state", 0);
        }
        if (reps.size() == 1) return 0;

        if (mode == OracleMode::MaxNormalized) {
            size_t best = 0;
            for (size_t i = 1; i < reps.size(); ++i) {
                auto s = cmp_normalized(reps[i], norms[i], reps[best], norms[best]);
                if (!s) return std::nullopt;
                if (*s > 0) best = i;
            }
            return best;
        }

        // UnitNormMin: minimal |N| first, then the smallest value among ties.
        Rat min_norm = norms[0];
        for (size_t i = 1; i < norms.size(); ++i)
            if (norms[i] < min_norm) min_norm = norms[i];
        size_t best = reps.size();
        for (size_t i = 0; i < reps.size(); ++i) {
            if (norms[i] != min_norm) continue;
            if (best == reps.size()) {
                best = i;
                continue;
            }
            auto s = certified_sign(reps[best] - reps[i]);
            if (!s) return std::nullopt;
            if (*s == 0)
                throw DomainViolationError("oracle: normalized values coincide", 0);
            if (*s > 0) best = i;
        }
        return best;
    }

    // sign of a_i/|N_i|^{1/e} - a_j/|N_j|^{1/e}, radical-free: both values are
    // positive on the algorithm's domain, so it equals sign(a_i^e n_j - a_j^e n_i).
    std::optional<int> cmp_normalized(const RatPoly& ri, const Rat& ni, const RatPoly& rj,
                                      const Rat& nj) {
        RatPoly d = powmod(ri, exponent_) * nj - powmod(rj, exponent_) * ni;
        auto s = certified_sign(reduce(d));
        if (s && *s == 0)
            throw DomainViolationError("oracle: normalized values coincide", 0);
        return s;
    }

    std::optional<std::vector<Int>> step_ajpa(std::vector<RatPoly>& reps, OracleMode mode) {
        auto p = pivot_of(reps, mode);
        if (!p) return std::nullopt;
        RatPoly inv = inv_mod(reps[*p]);
        std::vector<Int> row(reps.size());
        std::vector<RatPoly> next(reps.size());
        for (size_t i = 0; i < reps.size(); ++i) {
            RatPoly q = (i == *p) ? inv : mulmod(reps[i], inv);
            auto d = certified_floor(q);
            if (!d) return std::nullopt;
            row[i] = *d;
            next[i] = q - RatPoly::constant(Rat(*d));
        }
        reps = std::move(next);
        return row;
    }

    // JP: divide by the leading component; digit row is
    // (floor(psi_2/psi_1), ..., floor(psi_{l-1}/psi_1), floor(1/psi_1)).
    std::optional<std::vector<Int>> step_jp(std::vector<RatPoly>& reps) {
        if (reps.front().is_zero())
            throw DomainViolationError("oracle: leading component is zero: JP step undefined", 0);
        RatPoly inv = inv_mod(reps.front());
        size_t n = reps.size();
        std::vector<Int> row(n);
        std::vector<RatPoly> next(n);
        for (size_t i = 0; i + 1 < n; ++i) {
            RatPoly q = mulmod(reps[i + 1], inv);
            auto d = certified_floor(q);
            if (!d) return std::nullopt;
            row[i] = *d;
            next[i] = q - RatPoly::constant(Rat(*d));
        }
        auto dlast = certified_floor(inv);
        if (!dlast) return std::nullopt;
        row[n - 1] = *dlast;
        next[n - 1] = inv - RatPoly::constant(Rat(*dlast));
        reps = std::move(next);
        return row;
    }

    RatPoly f_;
    unsigned long exponent_;
    unsigned long bits_;
    unsigned long max_bits_;
    RootTracker root_;
};

}  // namespace

Rat resultant_norm(const FieldElement& a) {
    if (a.is_zero()) return Rat(0);
    return poly_resultant(a.field()->minpoly(), a.rep());
}

bool norm_cross_check(const FieldElement& a) { return resultant_norm(a) == elem_norm(a); }

OracleRun oracle_expand(const OracleProblem& prob, size_t steps, unsigned long start_bits,
                        unsigned long max_bits) {
    if (steps < 1) throw InputError("oracle: steps must be >= 1");
    if (start_bits < 1 || max_bits < start_bits)
        throw InputError("oracle: invalid precision bounds");
    OracleEngine eng(prob, start_bits, max_bits);

    size_t dim = static_cast<size_t>(prob.minpoly.degree()) - 1;
    if (prob.initial.size() != dim)
        throw InputError("oracle: initial state must have degree-1 components");
    std::vector<RatPoly> reps;
    reps.reserve(dim);
    for (const RatPoly& p : prob.initial) reps.push_back(eng.reduce(p));

    OracleRun run;
    run.requested = steps;
    for (size_t n = 0; n < steps; ++n) {
        auto row = eng.step(reps, prob.mode);
        if (!row) {
            run.precision_exhausted = true;
            break;
        }
        run.rows.push_back(std::move(*row));
    }
    run.final_bits = eng.bits();
    return run;
}

std::string digit_row_str(const std::vector<Int>& row) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << row[i];
    }
    os << ')';
    return os.str();
}

std::vector<Discrepancy> cross_check(const std::vector<StepRecord>& exact,
                                     const std::vector<std::vector<Int>>& oracle_rows) {
    std::vector<Discrepancy> out;
    size_t n = std::min(exact.size(), oracle_rows.size());
    for (size_t i = 0; i < n; ++i)
        if (exact[i].digits != oracle_rows[i])
            out.push_back({static_cast<int>(i) + 1, "digit", digit_row_str(exact[i].digits),
                           digit_row_str(oracle_rows[i])});
    if (exact.size() != oracle_rows.size())
        out.push_back({static_cast<int>(n) + 1, "row-count", std::to_string(exact.size()),
                       std::to_string(oracle_rows.size())});
    return out;
}

}  // namespace mdcf
