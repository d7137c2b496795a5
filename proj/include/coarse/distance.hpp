#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "coarse/error.hpp"

namespace coarse {

/// Exact non-negative rational distance num/den in lowest terms.
class Dist {
public:
    constexpr Dist() = default;
    constexpr Dist(std::int64_t whole) : num_(whole), den_(1) {}  // NOLINT: integers are distances
    Dist(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den <= 0) fail(ErrorKind::InvalidMetric, "distance denominator must be positive");
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend std::strong_ordering operator<=>(const Dist& a, const Dist& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Dist& a, const Dist& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    friend Dist operator+(const Dist& a, const Dist& b) { return combine(a, b, +1); }
    friend Dist operator-(const Dist& a, const Dist& b) { return combine(a, b, -1); }
    friend Dist operator*(std::int64_t k, const Dist& a) { return Dist(checked(static_cast<__int128>(k) * a.num_), a.den_); }

    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

    /// Parses "p/q" or an integer; negative text is rejected.
    static Dist parse(const std::string& text) {
        if (!text.empty() && text[0] == '-') fail(ErrorKind::ParseError, "negative distance '" + text + "'");
        auto slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                std::int64_t v = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return Dist(v);
            }
            std::int64_t n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            std::string rest = text.substr(slash + 1);
            std::int64_t d = std::stoll(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(text);
            return Dist(n, d);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "bad distance '" + text + "' (expected integer or p/q)");
        }
    }

private:
    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) fail(ErrorKind::SizeExceeded, "distance arithmetic overflows 64 bits");
        return static_cast<std::int64_t>(v);
    }
    static Dist combine(const Dist& a, const Dist& b, int sign) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        __int128 den = static_cast<__int128>(a.den_ / g) * b.den_;
        __int128 num = static_cast<__int128>(a.num_) * (b.den_ / g) + sign * static_cast<__int128>(b.num_) * (a.den_ / g);
        return Dist(checked(num), checked(den));
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace coarse
