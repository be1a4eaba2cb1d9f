#pragma once

#include "sturmfsm/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace sturmfsm {

// Finite truncation a_1, a_2, ..., a_N of a continued fraction expansion.
// All digits are >= 1; running out of digits is reported explicitly instead
// of padding, so callers always know which prefix their result depends on.
class CfDigits {
public:
    explicit CfDigits(std::vector<std::int64_t> digits) : a_(std::move(digits)) {
        if (a_.empty()) throw std::invalid_argument("CfDigits: at least one digit required");
        for (auto d : a_)
            if (d < 1) throw std::invalid_argument("CfDigits: digits must be >= 1");
    }

    static CfDigits golden(int n) { return CfDigits(std::vector<std::int64_t>(n, 1)); }
    static CfDigits silver(int n) { return CfDigits(std::vector<std::int64_t>(n, 2)); }

    int size() const { return static_cast<int>(a_.size()); }

    // 1-based, matching the usual a_1, a_2, ... indexing.
    std::int64_t digit(int i) const {
        if (i < 1 || i > size()) throw InsufficientDigits("digit index " + std::to_string(i) + " exceeds " + std::to_string(size()) + " digits");
        return a_[static_cast<std::size_t>(i - 1)];
    }

    const std::vector<std::int64_t>& digits() const { return a_; }

private:
    std::vector<std::int64_t> a_;
};

struct Approximant {
    BigInt p;
    BigInt q;
    int m = 0;

    BigRat value() const { return BigRat(p, q); }
};

// Approximants p_m/q_m for m = 0..m_max via the standard recursion
// p_m = a_m p_{m-1} + p_{m-2}, q_m = a_m q_{m-1} + q_{m-2}.
inline std::vector<Approximant> approximants(const CfDigits& digits, int m_max) {
    if (m_max < 0) throw std::invalid_argument("approximants: m_max must be >= 0");
    if (m_max > digits.size())
        throw InsufficientDigits("approximants: m_max=" + std::to_string(m_max) + " needs " + std::to_string(m_max) + " digits, have " + std::to_string(digits.size()));
    std::vector<Approximant> out;
    out.reserve(static_cast<std::size_t>(m_max) + 1);
    BigInt p_prev = 1, p = 0;  // p_{-1}, p_0
    BigInt q_prev = 0, q = 1;  // q_{-1}, q_0
    out.push_back({p, q, 0});
    for (int m = 1; m <= m_max; ++m) {
        BigInt a = digits.digit(m);
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = std::exchange(p, pn);
        q_prev = std::exchange(q, qn);
        out.push_back({p, q, m});
    }
    return out;
}

// Exact enclosure of |alpha - p_m/q_m|:
//   1/(q_m (q_{m+1}+q_m)) < |alpha - p_m/q_m| < 1/(q_m q_{m+1}).
inline std::pair<BigRat, BigRat> approximation_gap(const CfDigits& digits, int m) {
    auto apx = approximants(digits, m + 1);
    const BigInt& qm = apx[static_cast<std::size_t>(m)].q;
    const BigInt& qm1 = apx[static_cast<std::size_t>(m) + 1].q;
    return {BigRat(1, qm * (qm1 + qm)), BigRat(1, qm * qm1)};
}

struct AlphaValue {
    BigRat value;  // dyadic approximation of the truncated expansion
    int bits = 0;  // correct bits actually delivered (>= requested)
};

// Dyadic evaluation of the truncated continued fraction. The value is
// p_N/q_N rounded to 2^-bits, with bits bumped high enough that the result
// stays within 1/(q_N q'_{N+1}) of p_N/q_N, q'_{N+1} = q_N + q_{N-1}.
inline AlphaValue alpha_value(const CfDigits& digits, int bits) {
    if (bits < 16) throw std::invalid_argument("alpha_value: bits must be >= 16");
    auto apx = approximants(digits, digits.size());
    const Approximant& last = apx.back();
    const BigInt& q_prev = apx[apx.size() - 2].q;
    BigInt gap_denom = last.q * (last.q + q_prev);
    int needed = static_cast<int>(bit_length(gap_denom)) + 2;
    int eff = std::max(bits, needed);
    return {round_dyadic(last.value(), eff), eff};
}

}  // namespace sturmfsm
