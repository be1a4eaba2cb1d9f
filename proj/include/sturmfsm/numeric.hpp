#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sturmfsm {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A digit stream ended before the requested index/window was reachable.
struct InsufficientDigits : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

// A runtime self-check failed (e.g. subword count != L+1).
struct ConsistencyError : Error {
    using Error::Error;
};

inline BigInt floor_int(const BigRat& x) {
    BigInt n = numerator(x), d = denominator(x);  // d > 0 canonical
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline BigRat mod1(const BigRat& x) { return x - BigRat(floor_int(x)); }

// Nearest dyadic rational with 2^bits denominator.
inline BigRat round_dyadic(const BigRat& x, int bits) {
    BigInt scale = BigInt(1) << bits;
    BigInt n = floor_int(BigRat(x * scale * 2 + 1) / 2);
    return BigRat(n, scale);
}

inline double to_double(const BigRat& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

inline BigRat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    return BigRat(x);  // exact dyadic conversion
}

inline std::size_t bit_length(BigInt x) {
    if (x < 0) x = -x;
    return x == 0 ? 0 : msb(x) + 1;
}

// Accepts "p/q", integers, and plain decimals ("-2.75", "1e-3").
inline BigRat parse_rational(std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(s) + "'"); };
    if (s.empty()) fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt p(std::string(s.substr(0, slash)));
        BigInt q(std::string(s.substr(slash + 1)));
        if (q == 0) fail();
        return BigRat(p, q);
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    std::int64_t exp10 = 0;
    bool any = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) digits += s[i], any = true;
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) digits += s[i], --exp10, any = true;
    }
    if (!any) fail();
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::int64_t e = 0;
        auto rest = s.substr(i + 1);
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
        if (ec != std::errc() || p != rest.data() + rest.size()) fail();
        exp10 += e;
        i = s.size();
    }
    if (i != s.size()) fail();
    BigInt mantissa(digits.empty() ? "0" : digits);
    if (neg) mantissa = -mantissa;
    BigRat r(mantissa);
    if (exp10 > 0) r *= BigRat(pow(BigInt(10), static_cast<unsigned>(exp10)));
    if (exp10 < 0) r /= BigRat(pow(BigInt(10), static_cast<unsigned>(-exp10)));
    return r;
}

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

inline std::string format_rational(const BigRat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace sturmfsm
