#pragma once

#include <stdexcept>
#include <string>

namespace mdcf {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent caller input (bad polynomial, wrong tuple
// length, mismatched fields, violated family constraints, ...).
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// Operands belong to different number fields.
class FieldMismatchError : public InputError {
public:
    explicit FieldMismatchError(const std::string& msg) : InputError(msg) {}
};

// gcd(rep, minpoly) is nontrivial: the minimal polynomial is reducible,
// so the "field" is not a field.  Detected lazily by elem_inv.
class NonInvertibleError : public Error {
public:
    explicit NonInvertibleError(const std::string& msg) : Error(msg) {}
};

// A state left the algorithm's domain X_K (zero component, rational
// component, or failed independence).  Carries the 1-based step index
// at which the violation was detected (0 = initial state).
class DomainViolationError : public Error {
public:
    DomainViolationError(const std::string& msg, int step = 0)
        : Error(msg), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

// Interval refinement hit the precision ceiling.  For exact signs and
// floors this is never legitimate on a genuine (irreducible) field;
// it signals a reducible minimal polynomial or corrupt input.
class PrecisionExhaustedError : public Error {
public:
    explicit PrecisionExhaustedError(const std::string& msg) : Error(msg) {}
};

// expected_table() was asked for a family with no digit table.
class NoTableError : public Error {
public:
    explicit NoTableError(const std::string& msg) : Error(msg) {}
};

}  // namespace mdcf
