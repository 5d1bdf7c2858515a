#pragma once

#include <vector>

#include "mdcf/interval.hpp"
#include "mdcf/numberfield.hpp"
#include "mdcf/polynomial.hpp"
#include "mdcf/rational.hpp"

namespace mdcf {

// A choice of real root of the defining polynomial, pinned by an isolating
// interval.  Refinement (bisection of the isolator) is cached and monotone:
// the interval only ever shrinks and never loses its root.  Copying an
// embedding is cheap and yields an independent refinement state.
class RealEmbedding {
  public:
    // The interval must isolate exactly one real root and its endpoints must
    // not themselves be roots; prefer select_root for validated construction.
    RealEmbedding(FieldPtr field, RatInterval isolator);

    const FieldPtr& field() const { return field_; }
    const RatInterval& isolator() const { return iso_; }

    // Shrinks the isolator by bisection until its width is <= width.
    void refine_to(const Rat& width);
    RealEmbedding clone() const { return *this; }

    // Hard ceiling on certified refinement (isolator width 2^-bits); the
    // default comes from MDCF_MAX_PRECISION_BITS or 65536.
    unsigned long max_precision_bits() const { return max_bits_; }
    void set_max_precision_bits(unsigned long bits);

  private:
    void bisect_once();

    FieldPtr field_;
    RatInterval iso_;
    int sign_lo_;  // sign of minpoly at iso_.lo (constant under refinement)
    unsigned long max_bits_;
};

// Pairwise-disjoint rational intervals, each isolating exactly one real root
// of the squarefree part of f; their union covers all real roots.
std::vector<RatInterval> isolate_roots(const RatPoly& f);

// Embedding pinned to the unique real root of nf's defining polynomial
// inside window; errors if the window holds zero or several roots.
RealEmbedding select_root(const FieldPtr& nf, const RatInterval& window);

// Interval of width <= width certified to contain the real value of a.
RatInterval eval_interval(const FieldElement& a, RealEmbedding& emb, const Rat& width);

// Exact sign of the real value of a; zero only for the zero element
// (structural test).  For nonzero a the interval is refined until the sign
// is decided; hitting the precision ceiling signals a reducible defining
// polynomial (a "field" whose arithmetic lies) or a bug, never a legitimate
// state, and raises PrecisionExhaustedError.
int elem_sign(const FieldElement& a, RealEmbedding& emb);

// Exact floor of the real value of a.
Int elem_floor(const FieldElement& a, RealEmbedding& emb);

enum class CompareResult { IGreater, JGreater };

// Decides ai / |N(ai)|^{1/(l-1)} vs aj / |N(aj)|^{1/(l-1)} for state
// components in (0,1) without forming radicals, by the exact sign of
// d = nj*ai^{l-1} - ni*aj^{l-1} where ni = |N(ai)|, nj = |N(aj)|.
// A structurally zero d means the inputs were not Q-independent (the state
// left its domain) and raises DomainViolationError.
CompareResult compare_normalized(const FieldElement& ai, const Rat& ni,
                                 const FieldElement& aj, const Rat& nj, int l,
                                 RealEmbedding& emb);

}  // namespace mdcf
