#pragma once

#include <cstdint>
#include <ostream>

#include "umatch/errors.hpp"

namespace umatch {

using Coeff = std::uint32_t;

// Arithmetic in Z/pZ. Values are kept canonical, in [0, p).
class Field {
public:
    explicit Field(std::uint32_t p = 2);

    std::uint32_t modulus() const { return p_; }
    bool is_binary() const { return p_ == 2; }

    Coeff add(Coeff a, Coeff b) const {
        if (p_ == 2) return a ^ b;
        std::uint64_t s = std::uint64_t(a) + b;
        return Coeff(s >= p_ ? s - p_ : s);
    }
    Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
    Coeff sub(Coeff a, Coeff b) const { return add(a, neg(b)); }
    Coeff mul(Coeff a, Coeff b) const {
        if (p_ == 2) return a & b;
        return Coeff((std::uint64_t(a) * b) % p_);
    }
    Coeff inv(Coeff a) const;
    Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }

    // Reduce an arbitrary integer into the field.
    Coeff from_int(std::int64_t v) const;
    // Signed representative in (-p/2, p/2], handy for printing.
    std::int64_t to_signed(Coeff a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

// A value that remembers its field. Mixing moduli is a usage error.
class FieldElement {
public:
    FieldElement(const Field& f, std::int64_t v) : field_(f), value_(f.from_int(v)) {}

    Coeff value() const { return value_; }
    const Field& field() const { return field_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }

private:
    FieldElement(const Field& f, Coeff v, int) : field_(f), value_(v) {}
    void check(const FieldElement& o) const;

    Field field_;
    Coeff value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

}  // namespace umatch
