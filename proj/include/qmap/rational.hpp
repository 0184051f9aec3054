#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmap {

/// Non-negative-denominator rational on 64-bit integers, always in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d == 0) {
            throw std::invalid_argument("rational: zero denominator");
        }
        normalize();
    }

    /// Accepts "3", "0.25", "3/4".
    static Rational parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("not a number: \"" + std::string(text) + "\""); };
        auto digits = [&](std::string_view s) {
            if (s.empty() || s.size() > 15) {
                throw bad();
            }
            std::int64_t v = 0;
            for (char c : s) {
                if (c < '0' || c > '9') {
                    throw bad();
                }
                v = v * 10 + (c - '0');
            }
            return v;
        };
        bool negative = !text.empty() && text.front() == '-';
        std::string_view body = negative ? text.substr(1) : text;
        Rational r;
        if (auto slash = body.find('/'); slash != std::string_view::npos) {
            r = Rational(digits(body.substr(0, slash)), digits(body.substr(slash + 1)));
        } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
            auto whole = body.substr(0, dot);
            auto frac = body.substr(dot + 1);
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) {
                scale *= 10;
            }
            r = Rational((whole.empty() ? 0 : digits(whole)) * scale + (frac.empty() ? 0 : digits(frac)), scale);
        } else {
            r = Rational(digits(body));
        }
        if (negative) {
            r.num = -r.num;
        }
        return r;
    }

    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    [[nodiscard]] std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num * b.den <=> b.num * a.den;
    }

private:
    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
};

}  // namespace qmap
