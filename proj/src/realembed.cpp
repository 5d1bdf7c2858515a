#include "mdcf/realembed.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "mdcf/errors.hpp"

namespace mdcf {

namespace {

constexpr unsigned long kDefaultMaxBits = 65536;
constexpr unsigned long kFirstEscalationBits = 64;

unsigned long max_bits_from_env() {
    const char* v = std::getenv("MDCF_MAX_PRECISION_BITS");
    if (!v || !*v) return kDefaultMaxBits;
    char* end = nullptr;
    unsigned long bits = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0' || bits == 0)
        throw InputError("MDCF_MAX_PRECISION_BITS must be a positive integer");
    return bits;
}

// A point strictly inside (lo, hi) where f does not vanish.  The midpoint is
// preferred; when it happens to be a root (possible only for rational roots)
// nearby fractions are tried — only finitely many points can be roots.
Rat nonroot_split(const RatPoly& f, const Rat& lo, const Rat& hi) {
    Rat mid = (lo + hi) / 2;
    if (poly_eval(f, mid) != 0) return mid;
    for (long k = 3;; ++k) {
        Rat candidate = lo + (hi - lo) / k;
        if (poly_eval(f, candidate) != 0) return candidate;
    }
}

int eval_sign(const RatPoly& f, const Rat& x) { return sgn(poly_eval(f, x)); }

}  // namespace

RealEmbedding::RealEmbedding(FieldPtr field, RatInterval isolator)
    : field_(std::move(field)), iso_(std::move(isolator)), max_bits_(max_bits_from_env()) {
    if (!field_) throw InputError("embedding without a field");
    const RatPoly& f = field_->minpoly();
    if (!(iso_.lo < iso_.hi)) throw InputError("isolating interval must have positive width");
    if (poly_eval(f, iso_.lo) == 0 || poly_eval(f, iso_.hi) == 0)
        throw InputError("isolating interval endpoint is a root");
    if (sturm_count(f, iso_.lo, iso_.hi) != 1)
        throw InputError("interval does not isolate exactly one root");
    sign_lo_ = eval_sign(f, iso_.lo);
    // one simple root inside and nonzero endpoints force a sign change
    if (sign_lo_ == eval_sign(f, iso_.hi))
        throw InputError("isolating interval endpoints have equal sign");
}

void RealEmbedding::set_max_precision_bits(unsigned long bits) {
    if (bits == 0) throw InputError("precision ceiling must be positive");
    max_bits_ = bits;
}

void RealEmbedding::bisect_once() {
    const RatPoly& f = field_->minpoly();
    Rat m = (iso_.lo + iso_.hi) / 2;
    int sm = eval_sign(f, m);
    if (sm == 0) {
        // the midpoint is the (rational) root itself: shrink symmetrically
        Rat w8 = iso_.width() / 8;
        iso_ = RatInterval(m - w8, m + w8);
        return;  // endpoint signs are preserved around a simple root
    }
    if (sm == sign_lo_)
        iso_ = RatInterval(std::move(m), iso_.hi);
    else
        iso_ = RatInterval(iso_.lo, std::move(m));
}

void RealEmbedding::refine_to(const Rat& width) {
    if (width <= 0) throw InputError("refinement width must be positive");
    while (iso_.width() > width) bisect_once();
}

std::vector<RatInterval> isolate_roots(const RatPoly& f) {
    if (f.is_zero()) throw InputError("root isolation of the zero polynomial");
    if (f.degree() == 0) return {};
    SturmChain chain(f);
    const RatPoly& g = chain.squarefree();

    // Cauchy bound: all real roots lie strictly inside (-B, B)
    Rat maxc(0);
    for (const auto& c : g.coeffs()) {
        Rat ac = abs(c);
        if (ac > maxc) maxc = std::move(ac);
    }
    Rat alc = abs(g.lc());
    Rat bound = 2 + maxc / alc;

    std::vector<RatInterval> out;
    // work-list subdivision; every examined interval has nonroot endpoints
    std::vector<RatInterval> work;
    work.emplace_back(-bound, bound);
    while (!work.empty()) {
        RatInterval iv = std::move(work.back());
        work.pop_back();
        int n = chain.count(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(std::move(iv));
            continue;
        }
        Rat m = nonroot_split(g, iv.lo, iv.hi);
        work.emplace_back(iv.lo, m);
        work.emplace_back(m, iv.hi);
    }
    std::sort(out.begin(), out.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });

    // shrink until the isolators are pairwise disjoint, not merely abutting
    auto bisect_toward_root = [&](RatInterval& iv) {
        Rat m = nonroot_split(g, iv.lo, iv.hi);
        if (chain.count(iv.lo, m) == 1)
            iv = RatInterval(iv.lo, std::move(m));
        else
            iv = RatInterval(std::move(m), iv.hi);
    };
    for (size_t i = 1; i < out.size(); ++i) {
        while (!(out[i - 1].hi < out[i].lo)) {
            bisect_toward_root(out[i - 1]);
            bisect_toward_root(out[i]);
        }
    }
    return out;
}

RealEmbedding select_root(const FieldPtr& nf, const RatInterval& window) {
    if (!nf) throw InputError("embedding without a field");
    const RatPoly& f = nf->minpoly();
    if (!(window.lo < window.hi)) throw InputError("root window must have positive width");
    if (poly_eval(f, window.lo) == 0 || poly_eval(f, window.hi) == 0)
        throw InputError("root window endpoint is itself a root");
    int n = sturm_count(f, window.lo, window.hi);
    if (n != 1)
        throw InputError("root window holds " + std::to_string(n) + " roots, expected exactly 1");
    return RealEmbedding(nf, window);
}

RatInterval eval_interval(const FieldElement& a, RealEmbedding& emb, const Rat& width) {
    if (width <= 0) throw InputError("evaluation width must be positive");
    if (!same_field(a.field(), emb.field()))
        throw FieldMismatchError("element evaluated under a foreign embedding");
    if (a.is_rational()) {
        Rat v = a.rep().coeff(0);
        return {v, v};
    }
    for (unsigned long bits = kFirstEscalationBits;; bits *= 2) {
        emb.refine_to(pow2_neg(bits));
        RatInterval h = interval_horner(a.rep(), emb.isolator());
        if (h.width() <= width) return h;
        if (bits >= emb.max_precision_bits())
            throw PrecisionExhaustedError("interval evaluation exceeded the precision ceiling");
    }
}

int elem_sign(const FieldElement& a, RealEmbedding& emb) {
    if (!same_field(a.field(), emb.field()))
        throw FieldMismatchError("element evaluated under a foreign embedding");
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sgn(a.rep().coeff(0));
    for (unsigned long bits = kFirstEscalationBits;; bits *= 2) {
        emb.refine_to(pow2_neg(bits));
        int s = interval_horner(a.rep(), emb.isolator()).sign();
        if (s != 0) return s;
        if (bits >= emb.max_precision_bits())
            throw PrecisionExhaustedError(
                "sign refinement exceeded the precision ceiling; "
                "the defining polynomial is likely reducible");
    }
}

Int elem_floor(const FieldElement& a, RealEmbedding& emb) {
    if (!same_field(a.field(), emb.field()))
        throw FieldMismatchError("element evaluated under a foreign embedding");
    if (a.is_rational()) return rat_floor(a.rep().coeff(0));
    for (unsigned long bits = kFirstEscalationBits;; bits *= 2) {
        emb.refine_to(pow2_neg(bits));
        RatInterval h = interval_horner(a.rep(), emb.isolator());
        Int flo = rat_floor(h.lo), fhi = rat_floor(h.hi);
        if (flo == fhi) return flo;
        // straddling an integer boundary: if the value IS that integer the
        // element would be rational (structural test), so refinement ends.
        if (fhi == flo + 1 && (a - Rat(fhi)).is_zero()) return fhi;
        if (bits >= emb.max_precision_bits())
            throw PrecisionExhaustedError(
                "floor refinement exceeded the precision ceiling; "
                "the defining polynomial is likely reducible");
    }
}

CompareResult compare_normalized(const FieldElement& ai, const Rat& ni,
                                 const FieldElement& aj, const Rat& nj, int l,
                                 RealEmbedding& emb) {
    if (l < 2) throw InputError("normalized comparison needs degree >= 2");
    if (ni <= 0 || nj <= 0)
        throw InputError("normalized comparison needs positive norm magnitudes");
    unsigned long e = static_cast<unsigned long>(l - 1);
    FieldElement d = elem_pow(ai, e) * nj - elem_pow(aj, e) * ni;
    if (d.is_zero())
        throw DomainViolationError("normalized values coincide: state left its domain", 0);
    return elem_sign(d, emb) > 0 ? CompareResult::IGreater : CompareResult::JGreater;
}

}  // namespace mdcf
