#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace s8inv {

// Q, F2, Q(zeta3) and F4 = F2(zeta3). Elements with a zeta3 part are stored
// in the basis {1, zeta3}.
enum class FieldTag { Q, F2, Qz3, F4 };

std::string_view field_name(FieldTag tag);
std::optional<FieldTag> parse_field_tag(std::string_view text);
int characteristic(FieldTag tag);
bool has_zeta3(FieldTag tag);

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Scalar {
public:
    Scalar() : tag_(FieldTag::Q), value_(mpq_class(0)) {}

    static Scalar zero(FieldTag tag);
    static Scalar one(FieldTag tag);
    static Scalar from_int(FieldTag tag, long v);
    static Scalar from_integer(FieldTag tag, const mpz_class& v);
    static Scalar from_rational(FieldTag tag, const mpq_class& v);
    static Scalar zeta3(FieldTag tag);
    // a + b*zeta3; a and b must be representable in the field's prime field
    static Scalar from_pair(FieldTag tag, const mpq_class& a, const mpq_class& b);

    FieldTag tag() const { return tag_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;
    Scalar pow(long e) const;
    // zeta3 -> zeta3^2; the identity on Q and F2.
    Scalar conjugate() const;

    // components in the basis {1, zeta3} (b is 0 for Q and F2)
    mpq_class real_part() const;
    mpq_class zeta_part() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Printed so that the expression parser reads it back.
    std::string to_string() const;
    // true when to_string() needs parentheses as a factor
    bool is_compound() const;
    // true for a negative rational (Q, or Qz3 with no zeta part)
    bool is_negative_rational() const;

    std::size_t hash() const;

private:
    struct Bit {
        bool v;
    };
    struct Pair {
        mpq_class a, b;
    };
    struct Bits {
        std::uint8_t a, b;
    };
    using Payload = std::variant<mpq_class, Bit, Pair, Bits>;

    Scalar(FieldTag tag, Payload p) : tag_(tag), value_(std::move(p)) {}
    void require_same(const Scalar& o) const;

    FieldTag tag_;
    Payload value_;
};

}  // namespace s8inv
