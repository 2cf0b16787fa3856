#include "s8inv/scalar.hpp"

#include <functional>
#include <sstream>

namespace s8inv {

std::string_view field_name(FieldTag tag) {
    switch (tag) {
    case FieldTag::Q: return "Q";
    case FieldTag::F2: return "F2";
    case FieldTag::Qz3: return "Qz3";
    case FieldTag::F4: return "F4";
    }
    return "?";
}

std::optional<FieldTag> parse_field_tag(std::string_view text) {
    if (text == "Q") return FieldTag::Q;
    if (text == "F2") return FieldTag::F2;
    if (text == "Qz3") return FieldTag::Qz3;
    if (text == "F4") return FieldTag::F4;
    return std::nullopt;
}

int characteristic(FieldTag tag) {
    return (tag == FieldTag::F2 || tag == FieldTag::F4) ? 2 : 0;
}

bool has_zeta3(FieldTag tag) { return tag == FieldTag::Qz3 || tag == FieldTag::F4; }

namespace {

// Reduction of a rational into F2; throws on an even denominator.
std::uint8_t mod2(const mpq_class& q) {
    if (mpz_even_p(q.get_den_mpz_t())) throw FieldError("rational with even denominator has no image in characteristic 2");
    return mpz_odd_p(q.get_num_mpz_t()) ? 1 : 0;
}

}  // namespace

Scalar Scalar::zero(FieldTag tag) { return from_int(tag, 0); }
Scalar Scalar::one(FieldTag tag) { return from_int(tag, 1); }

Scalar Scalar::from_int(FieldTag tag, long v) { return from_rational(tag, mpq_class(v)); }

Scalar Scalar::from_integer(FieldTag tag, const mpz_class& v) { return from_rational(tag, mpq_class(v)); }

Scalar Scalar::from_rational(FieldTag tag, const mpq_class& v) { return from_pair(tag, v, 0); }

Scalar Scalar::zeta3(FieldTag tag) {
    if (!has_zeta3(tag)) throw FieldError("zeta3 is not an element of " + std::string(field_name(tag)));
    return from_pair(tag, 0, 1);
}

Scalar Scalar::from_pair(FieldTag tag, const mpq_class& a_in, const mpq_class& b_in) {
    mpq_class a = a_in, b = b_in;
    a.canonicalize();
    b.canonicalize();
    switch (tag) {
    case FieldTag::Q:
        if (b != 0) throw FieldError("zeta3 is not an element of Q");
        return Scalar(tag, a);
    case FieldTag::F2:
        if (mod2(b) != 0) throw FieldError("zeta3 is not an element of F2");
        return Scalar(tag, Bit{mod2(a) != 0});
    case FieldTag::Qz3: return Scalar(tag, Pair{a, b});
    case FieldTag::F4: return Scalar(tag, Bits{mod2(a), mod2(b)});
    }
    throw FieldError("unknown field");
}

void Scalar::require_same(const Scalar& o) const {
    if (tag_ != o.tag_)
        throw FieldError("field mismatch: " + std::string(field_name(tag_)) + " vs " + std::string(field_name(o.tag_)));
}

bool Scalar::is_zero() const {
    switch (tag_) {
    case FieldTag::Q: return std::get<mpq_class>(value_) == 0;
    case FieldTag::F2: return !std::get<Bit>(value_).v;
    case FieldTag::Qz3: {
        const auto& p = std::get<Pair>(value_);
        return p.a == 0 && p.b == 0;
    }
    case FieldTag::F4: {
        const auto& p = std::get<Bits>(value_);
        return p.a == 0 && p.b == 0;
    }
    }
    return false;
}

bool Scalar::is_one() const {
    switch (tag_) {
    case FieldTag::Q: return std::get<mpq_class>(value_) == 1;
    case FieldTag::F2: return std::get<Bit>(value_).v;
    case FieldTag::Qz3: {
        const auto& p = std::get<Pair>(value_);
        return p.a == 1 && p.b == 0;
    }
    case FieldTag::F4: {
        const auto& p = std::get<Bits>(value_);
        return p.a == 1 && p.b == 0;
    }
    }
    return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same(o);
    switch (tag_) {
    case FieldTag::Q: return Scalar(tag_, mpq_class(std::get<mpq_class>(value_) + std::get<mpq_class>(o.value_)));
    case FieldTag::F2: return Scalar(tag_, Bit{std::get<Bit>(value_).v != std::get<Bit>(o.value_).v});
    case FieldTag::Qz3: {
        const auto& x = std::get<Pair>(value_);
        const auto& y = std::get<Pair>(o.value_);
        return Scalar(tag_, Pair{x.a + y.a, x.b + y.b});
    }
    case FieldTag::F4: {
        const auto& x = std::get<Bits>(value_);
        const auto& y = std::get<Bits>(o.value_);
        return Scalar(tag_, Bits{std::uint8_t(x.a ^ y.a), std::uint8_t(x.b ^ y.b)});
    }
    }
    throw FieldError("unknown field");
}

Scalar Scalar::operator-() const {
    switch (tag_) {
    case FieldTag::Q: return Scalar(tag_, mpq_class(-std::get<mpq_class>(value_)));
    case FieldTag::Qz3: {
        const auto& x = std::get<Pair>(value_);
        return Scalar(tag_, Pair{-x.a, -x.b});
    }
    default: return *this;
    }
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same(o);
    switch (tag_) {
    case FieldTag::Q: return Scalar(tag_, mpq_class(std::get<mpq_class>(value_) * std::get<mpq_class>(o.value_)));
    case FieldTag::F2: return Scalar(tag_, Bit{std::get<Bit>(value_).v && std::get<Bit>(o.value_).v});
    case FieldTag::Qz3: {
        // zeta^2 = -1 - zeta
        const auto& x = std::get<Pair>(value_);
        const auto& y = std::get<Pair>(o.value_);
        mpq_class bd = x.b * y.b;
        return Scalar(tag_, Pair{x.a * y.a - bd, x.a * y.b + x.b * y.a - bd});
    }
    case FieldTag::F4: {
        // zeta^2 = 1 + zeta
        const auto& x = std::get<Bits>(value_);
        const auto& y = std::get<Bits>(o.value_);
        std::uint8_t bd = x.b & y.b;
        return Scalar(tag_, Bits{std::uint8_t((x.a & y.a) ^ bd), std::uint8_t((x.a & y.b) ^ (x.b & y.a) ^ bd)});
    }
    }
    throw FieldError("unknown field");
}

Scalar Scalar::conjugate() const {
    switch (tag_) {
    case FieldTag::Qz3: {
        // a + b*zeta^2 = (a - b) - b*zeta
        const auto& x = std::get<Pair>(value_);
        return Scalar(tag_, Pair{x.a - x.b, -x.b});
    }
    case FieldTag::F4: {
        const auto& x = std::get<Bits>(value_);
        return Scalar(tag_, Bits{std::uint8_t(x.a ^ x.b), x.b});
    }
    default: return *this;
    }
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    switch (tag_) {
    case FieldTag::Q: return Scalar(tag_, mpq_class(1 / std::get<mpq_class>(value_)));
    case FieldTag::F2: return *this;
    case FieldTag::Qz3: {
        const auto& x = std::get<Pair>(value_);
        mpq_class norm = x.a * x.a - x.a * x.b + x.b * x.b;
        Scalar c = conjugate();
        const auto& y = std::get<Pair>(c.value_);
        return Scalar(tag_, Pair{y.a / norm, y.b / norm});
    }
    case FieldTag::F4: return conjugate();  // x^3 = 1 for x != 0
    }
    throw FieldError("unknown field");
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same(o);
    return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one(tag_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

mpq_class Scalar::real_part() const {
    switch (tag_) {
    case FieldTag::Q: return std::get<mpq_class>(value_);
    case FieldTag::F2: return std::get<Bit>(value_).v ? 1 : 0;
    case FieldTag::Qz3: return std::get<Pair>(value_).a;
    case FieldTag::F4: return std::get<Bits>(value_).a;
    }
    return 0;
}

mpq_class Scalar::zeta_part() const {
    switch (tag_) {
    case FieldTag::Qz3: return std::get<Pair>(value_).b;
    case FieldTag::F4: return std::get<Bits>(value_).b;
    default: return 0;
    }
}

bool Scalar::operator==(const Scalar& o) const {
    if (tag_ != o.tag_) return false;
    switch (tag_) {
    case FieldTag::Q: return std::get<mpq_class>(value_) == std::get<mpq_class>(o.value_);
    case FieldTag::F2: return std::get<Bit>(value_).v == std::get<Bit>(o.value_).v;
    case FieldTag::Qz3: {
        const auto& x = std::get<Pair>(value_);
        const auto& y = std::get<Pair>(o.value_);
        return x.a == y.a && x.b == y.b;
    }
    case FieldTag::F4: {
        const auto& x = std::get<Bits>(value_);
        const auto& y = std::get<Bits>(o.value_);
        return x.a == y.a && x.b == y.b;
    }
    }
    return false;
}

bool Scalar::is_compound() const { return zeta_part() != 0 && real_part() != 0; }

bool Scalar::is_negative_rational() const { return zeta_part() == 0 && real_part() < 0; }

std::string Scalar::to_string() const {
    mpq_class a = real_part(), b = zeta_part();
    if (b == 0) return a.get_str();
    std::string z = (b == 1) ? "zeta3" : (b == -1 ? "-zeta3" : b.get_str() + "*zeta3");
    if (a == 0) return z;
    std::ostringstream os;
    os << a.get_str();
    if (b < 0) {
        mpq_class nb = -b;
        os << " - " << (nb == 1 ? std::string("zeta3") : nb.get_str() + "*zeta3");
    } else {
        os << " + " << z;
    }
    return os.str();
}

std::size_t Scalar::hash() const {
    std::size_t h = std::hash<int>()(static_cast<int>(tag_));
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    switch (tag_) {
    case FieldTag::F2: mix(std::get<Bit>(value_).v); break;
    case FieldTag::F4: {
        const auto& x = std::get<Bits>(value_);
        mix(x.a * 2u + x.b);
        break;
    }
    default: {
        mpq_class a = real_part(), b = zeta_part();
        mix(mpz_get_ui(a.get_num_mpz_t()));
        mix(mpz_get_ui(a.get_den_mpz_t()));
        mix(mpz_get_ui(b.get_num_mpz_t()));
        mix(static_cast<std::size_t>(mpz_sgn(a.get_num_mpz_t()) + 2));
    }
    }
    return h;
}

}  // namespace s8inv
