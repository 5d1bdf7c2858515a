#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mdcf/numberfield.hpp"
#include "mdcf/rational.hpp"
#include "mdcf/realembed.hpp"

namespace mdcf {

enum class PivotStrategy { MaxNormalized, UnitNormMin };

// Strategy tag carried by emitted step records; JP marks records produced by
// the classical Jacobi-Perron mode, whose inversion formula rotates indices.
enum class RecordKind { MaxNormalized, UnitNormMin, JP };

enum class ExpandStatus { Periodic, BudgetExhausted, LeftDomain };

// One emitted digit row.
struct StepRecord {
    int index = 1;            // 1-based step number
    int pivot = 0;            // 0-based component index (always the last for JP)
    std::vector<Int> digits;  // one digit per component; digits[pivot] >= 1
    RecordKind kind = RecordKind::MaxNormalized;

    bool operator==(const StepRecord&) const = default;
};

// A point of the algorithm's domain: l-1 field elements, each certified in
// (0,1) under the embedding and jointly independent with 1.  The embedding's
// refinement state is shared by every state of one expansion run.
class ExpansionState {
  public:
    // Validates full domain membership; throws DomainViolationError (step 0)
    // on zero/rational components, components outside (0,1), or failed
    // independence.
    static ExpansionState create(std::shared_ptr<RealEmbedding> emb,
                                 std::vector<FieldElement> comps);
    // Coherence checks only (same field, nonempty); domain membership is the
    // caller's problem.  Used for JP states (which admit rational and zero
    // components) and for tests that inject out-of-domain states.
    static ExpansionState create_unchecked(std::shared_ptr<RealEmbedding> emb,
                                           std::vector<FieldElement> comps);

    const FieldPtr& field() const { return comps_.front().field(); }
    const std::shared_ptr<RealEmbedding>& embedding() const { return emb_; }
    const std::vector<FieldElement>& components() const { return comps_; }

    // Exact state identity for cycle detection: concatenated canonical keys.
    std::string key() const;

  private:
    ExpansionState(std::shared_ptr<RealEmbedding> emb, std::vector<FieldElement> comps)
        : emb_(std::move(emb)), comps_(std::move(comps)) {}

    std::shared_ptr<RealEmbedding> emb_;
    std::vector<FieldElement> comps_;
};

// A table-verification discrepancy (filled by the verification layers, kept
// here because results carry their own discrepancy log).
struct Discrepancy {
    int step = 0;                // 1-based digit row
    std::string kind;            // e.g. "paper-table-adjudicated"
    std::string engine;          // engine's value, rendered
    std::string paper_or_oracle; // the competing value and its source

    bool operator==(const Discrepancy&) const = default;
};

struct ExpansionResult {
    std::vector<StepRecord> records;     // every emitted step, indices 1..n
    std::vector<ExpansionState> states;  // state_0 .. state_n
    ExpandStatus status = ExpandStatus::BudgetExhausted;
    size_t preperiod_len = 0;            // digit rows before the cycle entry
    size_t period_len = 0;               // cycle length (0 unless Periodic)
    int violation_step = 0;              // LeftDomain: 1-based failing step
    std::string violation_reason;
    std::vector<Discrepancy> discrepancies;

    std::vector<StepRecord> preperiod() const;
    std::vector<StepRecord> period() const;
};

// Pivot choice on a valid state (0-based component index).
//   MaxNormalized: argmax alpha_i / |N(alpha_i)|^{1/(l-1)}.
//   UnitNormMin:   among components of minimal |N|, the smallest normalized.
// Tied comparisons surface as DomainViolationError.
int pivot_select(const ExpansionState& state, PivotStrategy strategy);

// One T_K step: pivot position p gets frac(1/alpha_p) with digit
// floor(1/alpha_p); every other i gets frac(alpha_i/alpha_p) with digit
// floor(alpha_i/alpha_p).  The produced record has index 1; the caller
// assigns the real step number.
std::pair<StepRecord, ExpansionState> cf_step(const ExpansionState& state,
                                              PivotStrategy strategy);

// Iterates cf_step with exact full-state cycle detection.  LeftDomain is a
// status, not an exception.
ExpansionResult cf_expand(const ExpansionState& initial, PivotStrategy strategy,
                          int max_steps = 10000);

// Exact reconstruction of the predecessor state from a record and the state
// it produced: alpha_p = 1/(a_p + b_p), alpha_i = (a_i + b_i) * alpha_p
// (JP records use the rotated layout).  Inputs are taken at face value; a
// zero reconstruction denominator signals a corrupt record.
ExpansionState step_inverse(const StepRecord& rec, const ExpansionState& next);

// Rational convergent pi_upto: starts from the all-zero tail vector and runs
// the record inversion backwards through records[0..upto).
std::vector<Rat> convergent(const std::vector<StepRecord>& records, size_t upto);

// Classical Jacobi-Perron step on (psi_1, ..., psi_d):
//   digits ( floor(psi_2/psi_1), ..., floor(psi_d/psi_1), floor(1/psi_1) ),
//   next   ( frac(psi_2/psi_1), ...,  frac(psi_d/psi_1),  frac(1/psi_1) ).
// Requires psi_1 != 0; zero and rational components are otherwise legal.
std::pair<StepRecord, ExpansionState> jp_step(const ExpansionState& state);

// jp_step iterated with the same cycle detection as cf_expand.
ExpansionResult jp_expand(const ExpansionState& initial, int max_steps = 10000);

// First n digit rows, extending a Periodic result cyclically past its
// recorded steps (indices renumbered 1..n).
std::vector<StepRecord> unroll(const ExpansionResult& result, size_t n);

}  // namespace mdcf
