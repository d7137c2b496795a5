#pragma once

// Exact coefficient rings: the integers, the rationals and prime fields.
//
// Every ring exposes the same member interface so the linear algebra can be
// written once as templates. Values are plain value types; the ring object
// carries any runtime parameter (the modulus of a prime field).

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "coarse/error.hpp"

namespace coarse {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

template <class V>
struct GcdResult {
    V g;
    V s;
    V t;
};

class Integers {
public:
    using value_type = BigInt;
    static constexpr bool is_field = false;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const { return v; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

    /// a | b
    bool divides(const value_type& a, const value_type& b) const {
        if (a.is_zero()) return b.is_zero();
        return (b % a).is_zero();
    }
    value_type exact_div(const value_type& b, const value_type& a) const { return b / a; }
    /// Truncating quotient; |b - q*a| < |a|.
    value_type quotient(const value_type& b, const value_type& a) const { return b / a; }

    /// g = s*a + t*b with g >= 0 the gcd.
    GcdResult<value_type> gcdex(const value_type& a, const value_type& b) const {
        value_type old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (!r.is_zero()) {
            value_type q = old_r / r;
            value_type tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
            tmp = old_t - q * t;
            old_t = t;
            t = tmp;
        }
        if (old_r < 0) {
            old_r = -old_r;
            old_s = -old_s;
            old_t = -old_t;
        }
        return {old_r, old_s, old_t};
    }

    /// Unit u such that u*a is the canonical associate (non-negative).
    value_type normalizing_unit(const value_type& a) const { return a < 0 ? -1 : 1; }
    value_type unit_inverse(const value_type& u) const { return u; }

    /// Residue of a modulo d in [0, |d|); identity when d is zero.
    value_type reduce(const value_type& a, const value_type& d) const {
        if (d.is_zero()) return a;
        value_type m = abs(d);
        value_type r = a % m;
        if (r < 0) r += m;
        return r;
    }

    std::uint64_t magnitude(const value_type& a) const {
        value_type m = abs(a);
        if (m <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::uint64_t>(m);
        return (std::uint64_t{1} << 63) + msb(m);
    }

    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "Z"; }
    bool operator==(const Integers&) const = default;
};

class Rationals {
public:
    using value_type = BigRational;
    static constexpr bool is_field = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const { return v; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool is_unit(const value_type& a) const { return !a.is_zero(); }
    bool divides(const value_type& a, const value_type& b) const { return !a.is_zero() || b.is_zero(); }
    value_type exact_div(const value_type& b, const value_type& a) const { return b / a; }
    value_type quotient(const value_type& b, const value_type& a) const { return b / a; }

    GcdResult<value_type> gcdex(const value_type& a, const value_type& b) const {
        if (!a.is_zero()) return {1, 1 / a, 0};
        if (!b.is_zero()) return {1, 0, 1 / b};
        return {0, 1, 0};
    }

    value_type normalizing_unit(const value_type& a) const { return a.is_zero() ? value_type(1) : 1 / a; }
    value_type unit_inverse(const value_type& u) const { return 1 / u; }
    value_type reduce(const value_type& a, const value_type&) const { return a; }

    std::uint64_t magnitude(const value_type& a) const {
        if (a.is_zero()) return 0;
        BigInt n = abs(numerator(a));
        BigInt d = denominator(a);
        return 1 + msb(n) + msb(d);
    }

    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "Q"; }
    bool operator==(const Rationals&) const = default;
};

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Z/p for a prime p < 2^31, values kept in [0, p).
class PrimeField {
public:
    using value_type = std::int64_t;
    static constexpr bool is_field = true;

    explicit PrimeField(std::int64_t p) : p_(p) {
        if (p >= (std::int64_t{1} << 31) || !is_prime(p))
            fail(ErrorKind::ConfigError, "prime field modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::int64_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    value_type from_int(std::int64_t v) const {
        std::int64_t r = v % p_;
        return r < 0 ? r + p_ : r;
    }
    value_type from_big(const BigInt& v) const {
        BigInt r = v % p_;
        if (r < 0) r += p_;
        return static_cast<std::int64_t>(r);
    }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const {
        value_type s = a - b;
        return s < 0 ? s + p_ : s;
    }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    bool is_zero(value_type a) const { return a == 0; }
    bool is_unit(value_type a) const { return a != 0; }
    bool divides(value_type a, value_type b) const { return a != 0 || b == 0; }

    value_type inverse(value_type a) const {
        if (a == 0) fail(ErrorKind::DimensionMismatch, "inverse of zero in Z/" + std::to_string(p_));
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return t < 0 ? t + p_ : t;
    }
    value_type exact_div(value_type b, value_type a) const { return mul(b, inverse(a)); }
    value_type quotient(value_type b, value_type a) const { return exact_div(b, a); }

    GcdResult<value_type> gcdex(value_type a, value_type b) const {
        if (a != 0) return {1, inverse(a), 0};
        if (b != 0) return {1, 0, inverse(b)};
        return {0, 1, 0};
    }

    value_type normalizing_unit(value_type a) const { return a == 0 ? 1 : inverse(a); }
    value_type unit_inverse(value_type u) const { return inverse(u); }
    value_type reduce(value_type a, value_type) const { return a; }
    std::uint64_t magnitude(value_type a) const { return a == 0 ? 0 : 1; }

    std::string to_string(value_type a) const { return std::to_string(a); }
    std::string name() const { return "F" + std::to_string(p_); }
    bool operator==(const PrimeField&) const = default;

private:
    std::int64_t p_;
};

template <class R>
concept CoefficientRing = requires(const R& ring, const typename R::value_type& a) {
    { ring.zero() } -> std::convertible_to<typename R::value_type>;
    { ring.add(a, a) } -> std::convertible_to<typename R::value_type>;
    { ring.mul(a, a) } -> std::convertible_to<typename R::value_type>;
    { ring.is_zero(a) } -> std::convertible_to<bool>;
    { ring.gcdex(a, a) };
    { R::is_field } -> std::convertible_to<bool>;
};

/// Image of a machine integer in any of the rings.
template <class R>
typename R::value_type embed(const R& ring, std::int64_t v) {
    return ring.from_int(v);
}

/// Image of an arbitrary integer in any of the rings.
template <class R>
typename R::value_type embed_big(const R& ring, const BigInt& v) {
    if constexpr (std::is_same_v<R, PrimeField>) {
        return ring.from_big(v);
    } else {
        return typename R::value_type(v);
    }
}

/// Runtime ring selector, parsed from "Z", "Q" or "Fp:<p>" (also "F<p>", "Z/<p>").
using AnyRing = std::variant<Integers, Rationals, PrimeField>;

inline AnyRing parse_ring(const std::string& tag) {
    if (tag == "Z") return Integers{};
    if (tag == "Q") return Rationals{};
    std::string digits;
    if (tag.rfind("Fp:", 0) == 0)
        digits = tag.substr(3);
    else if (tag.rfind("Z/", 0) == 0)
        digits = tag.substr(2);
    else if (tag.size() > 1 && tag[0] == 'F')
        digits = tag.substr(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        fail(ErrorKind::ConfigError, "unknown ring '" + tag + "' (expected Z, Q or Fp:<prime>)");
    return PrimeField(std::stoll(digits));
}

inline std::string ring_name(const AnyRing& ring) {
    return std::visit([](const auto& r) { return r.name(); }, ring);
}

}  // namespace coarse
