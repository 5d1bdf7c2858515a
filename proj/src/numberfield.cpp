#include "mdcf/numberfield.hpp"

#include <utility>

#include "mdcf/errors.hpp"

namespace mdcf {

namespace {

// Fraction-free determinant (Bareiss).  Exact over Int; the interior
// divisions are guaranteed exact by the algorithm.
Int bareiss_det(std::vector<std::vector<Int>> a) {
    size_t n = a.size();
    if (n == 0) return Int(1);
    int sign = 1;
    Int prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return Int(0);
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Int d = std::move(a[n - 1][n - 1]);
    if (sign < 0) d = -d;
    return d;
}

// det of a rational matrix via a common-denominator integer scaling.
Rat rational_det(const std::vector<std::vector<Rat>>& m) {
    size_t n = m.size();
    Int den(1);
    for (const auto& row : m)
        for (const auto& e : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (den / m[i][j].get_den());
    Rat det(bareiss_det(std::move(a)));
    return det / rat_pow(Rat(den), static_cast<unsigned long>(n));
}

void put_leb128(std::string& out, size_t v) {
    do {
        unsigned char b = v & 0x7f;
        v >>= 7;
        if (v) b |= 0x80;
        out.push_back(static_cast<char>(b));
    } while (v);
}

size_t read_leb128(const std::string& s, size_t& pos) {
    size_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= s.size() || shift > 56) throw InputError("malformed canonical key");
        unsigned char b = static_cast<unsigned char>(s[pos++]);
        v |= static_cast<size_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

// Big-endian magnitude bytes of |z| (empty for 0).
std::string mag_bytes(const Int& z) {
    if (z == 0) return {};
    size_t bytes = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
    std::string buf(bytes, '\0');
    size_t count = 0;
    mpz_export(buf.data(), &count, 1, 1, 1, 0, z.get_mpz_t());
    buf.resize(count);
    return buf;
}

Int mag_from_bytes(const std::string& s, size_t pos, size_t len) {
    Int z(0);
    if (len > 0) mpz_import(z.get_mpz_t(), len, 1, 1, 1, 0, s.data() + pos);
    return z;
}

}  // namespace

NumberField::NumberField(const RatPoly& minpoly) {
    if (minpoly.degree() < 2) throw InputError("defining polynomial must have degree >= 2");
    if (squarefree_part(minpoly).degree() != minpoly.degree())
        throw InputError("defining polynomial has repeated factors");
    minpoly_ = minpoly.monic();
}

FieldPtr make_field(const RatPoly& minpoly) {
    return std::make_shared<NumberField>(minpoly);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b) return false;
    return a == b || a->minpoly() == b->minpoly();
}

FieldElement::FieldElement(FieldPtr field, RatPoly rep) : field_(std::move(field)) {
    if (!field_) throw InputError("element without a field");
    rep_ = rep.degree() < field_->degree() ? std::move(rep)
                                           : poly_divmod(rep, field_->minpoly()).second;
}

std::vector<Rat> FieldElement::coords() const {
    std::vector<Rat> v(static_cast<size_t>(field_->degree()), Rat(0));
    for (size_t i = 0; i < rep_.coeffs().size(); ++i) v[i] = rep_.coeffs()[i];
    return v;
}

Rat FieldElement::rational_value() const {
    if (!is_rational()) throw InputError("element is not rational");
    return rep_.coeff(0);
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_, -rep_);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (!same_field(field_, o.field_)) throw FieldMismatchError("adding elements of different fields");
    return FieldElement(field_, rep_ + o.rep_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    if (!same_field(field_, o.field_)) throw FieldMismatchError("subtracting elements of different fields");
    return FieldElement(field_, rep_ - o.rep_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (!same_field(field_, o.field_)) throw FieldMismatchError("multiplying elements of different fields");
    return FieldElement(field_, rep_ * o.rep_);
}

FieldElement FieldElement::operator*(const Rat& c) const {
    return FieldElement(field_, rep_ * c);
}

FieldElement FieldElement::operator+(const Rat& c) const {
    return FieldElement(field_, rep_ + RatPoly::constant(c));
}

FieldElement FieldElement::operator-(const Rat& c) const {
    return FieldElement(field_, rep_ - RatPoly::constant(c));
}

FieldElement FieldElement::inverse() const {
    if (rep_.is_zero()) throw NonInvertibleError("inverse of the zero element");
    auto [d, s, t] = poly_ext_gcd(rep_, field_->minpoly());
    if (d.degree() > 0)
        throw NonInvertibleError("element shares a factor with the defining polynomial (reducible field)");
    // d == 1 (monic, degree 0): s * rep == 1 (mod minpoly)
    return FieldElement(field_, std::move(s));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return same_field(field_, o.field_) && rep_ == o.rep_;
}

FieldElement make_element(const FieldPtr& field, RatPoly rep) {
    return FieldElement(field, std::move(rep));
}

FieldElement make_element(const FieldPtr& field, const Rat& value) {
    return FieldElement(field, RatPoly::constant(value));
}

FieldElement gen_element(const FieldPtr& field) {
    return FieldElement(field, RatPoly::monomial(1, Rat(1)));
}

FieldElement elem_pow(const FieldElement& a, unsigned long e) {
    FieldElement r = make_element(a.field(), Rat(1));
    FieldElement base = a;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Rat elem_norm(const FieldElement& a) {
    if (a.is_zero()) return Rat(0);
    size_t l = static_cast<size_t>(a.field()->degree());
    // column j = power-basis coordinates of a * theta^j
    std::vector<std::vector<Rat>> m(l, std::vector<Rat>(l, Rat(0)));
    FieldElement b = a;
    FieldElement theta = gen_element(a.field());
    for (size_t j = 0; j < l; ++j) {
        std::vector<Rat> col = b.coords();
        for (size_t i = 0; i < l; ++i) m[i][j] = std::move(col[i]);
        if (j + 1 < l) b = b * theta;
    }
    return rational_det(m);
}

std::string canonical_key(const FieldElement& a) {
    std::string out;
    for (const Rat& c : a.coords()) {
        int sg = sgn(c);
        out.push_back(static_cast<char>(sg + 1));  // 0 neg, 1 zero, 2 pos
        if (sg == 0) {
            put_leb128(out, 0);
            put_leb128(out, 0);
            continue;
        }
        std::string num = mag_bytes(c.get_num());
        std::string den = mag_bytes(c.get_den());
        put_leb128(out, num.size());
        out += num;
        put_leb128(out, den.size());
        out += den;
    }
    return out;
}

FieldElement canonical_key_decode(const FieldPtr& field, const std::string& key) {
    if (!field) throw InputError("element without a field");
    size_t l = static_cast<size_t>(field->degree());
    std::vector<Rat> coords(l);
    size_t pos = 0;
    for (size_t i = 0; i < l; ++i) {
        if (pos >= key.size()) throw InputError("malformed canonical key");
        int sg = static_cast<unsigned char>(key[pos++]) - 1;
        if (sg < -1 || sg > 1) throw InputError("malformed canonical key");
        size_t nlen = read_leb128(key, pos);
        if (pos + nlen > key.size()) throw InputError("malformed canonical key");
        Int num = mag_from_bytes(key, pos, nlen);
        pos += nlen;
        size_t dlen = read_leb128(key, pos);
        if (pos + dlen > key.size()) throw InputError("malformed canonical key");
        Int den = mag_from_bytes(key, pos, dlen);
        pos += dlen;
        if (sg == 0) {
            if (num != 0 || den != 0) throw InputError("malformed canonical key");
            coords[i] = Rat(0);
        } else {
            if (num == 0 || den == 0) throw InputError("malformed canonical key");
            coords[i] = make_rat(sg < 0 ? Int(-num) : num, den);
        }
    }
    if (pos != key.size()) throw InputError("malformed canonical key");
    return FieldElement(field, RatPoly(std::move(coords)));
}

bool independent_with_one(const std::vector<FieldElement>& elems) {
    if (elems.empty()) throw InputError("independence test needs at least one element");
    const FieldPtr& field = elems.front().field();
    size_t l = static_cast<size_t>(field->degree());
    if (elems.size() != l - 1)
        throw InputError("independence test expects exactly degree-1 elements");
    std::vector<std::vector<Rat>> m(l, std::vector<Rat>(l, Rat(0)));
    m[0][0] = 1;  // coordinates of 1
    for (size_t i = 0; i < elems.size(); ++i) {
        if (!same_field(field, elems[i].field()))
            throw FieldMismatchError("independence test across different fields");
        std::vector<Rat> row = elems[i].coords();
        for (size_t j = 0; j < l; ++j) m[i + 1][j] = std::move(row[j]);
    }
    return rational_det(m) != 0;
}

}  // namespace mdcf
