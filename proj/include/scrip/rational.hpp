#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace scrip {

// Exact rational number. The average-money parameter is kept rational so the
// m*h integrality check and the 1/(h*n) mean repairs are never subject to
// floating-point rounding.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;

    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // k * (num/den) if it is an exact integer, nothing otherwise.
    std::optional<std::int64_t> times_integer(std::int64_t k) const {
        const std::int64_t p = k * num;
        if (p % den != 0) return std::nullopt;
        return p / den;
    }

    bool positive() const { return num > 0; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace scrip
