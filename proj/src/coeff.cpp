#include "umatch/coeff.hpp"

#include <string>

namespace umatch {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p > (1u << 31))
        throw UsageError("field modulus must be a prime below 2^31, got " + std::to_string(p));
}

Coeff Field::inv(Coeff a) const {
    if (a == 0) throw DivisionByZero();
    if (p_ == 2) return 1;
    // extended Euclid on (a, p)
    std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    return from_int(t0);
}

Coeff Field::from_int(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    return Coeff(r);
}

std::int64_t Field::to_signed(Coeff a) const {
    return a > p_ / 2 ? std::int64_t(a) - p_ : std::int64_t(a);
}

void FieldElement::check(const FieldElement& o) const {
    if (!(field_ == o.field_))
        throw UsageError("field elements from Z/" + std::to_string(field_.modulus()) + " and Z/" +
                         std::to_string(o.field_.modulus()) + " cannot be combined");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check(o);
    return {field_, field_.add(value_, o.value_), 0};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    check(o);
    return {field_, field_.sub(value_, o.value_), 0};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    check(o);
    return {field_, field_.mul(value_, o.value_), 0};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    check(o);
    return {field_, field_.div(value_, o.value_), 0};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_), 0}; }
FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_), 0}; }

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    return os << x.value() << " (mod " << x.field().modulus() << ")";
}

}  // namespace umatch
