#pragma once

#include "sturmfsm/cf.hpp"
#include "sturmfsm/numeric.hpp"
#include "sturmfsm/words.hpp"

#include <cstdint>
#include <vector>

namespace sturmfsm {

// 2x2 matrix over any scalar with +,-,*. Covers double, exact rationals and
// polynomial entries alike; Eigen's fixed matrices reject non-arithmetic
// scalars on this toolchain, hence the local type.
template <class S>
struct Mat2 {
    S a{}, b{}, c{}, d{};  // [[a, b], [c, d]]

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    S trace() const { return a + d; }
    S det() const { return a * d - b * c; }
    static Mat2 identity() { return {S(1), S(0), S(0), S(1)}; }
};

template <class S>
Mat2<S> mat2_pow(Mat2<S> base, std::uint64_t e) {
    Mat2<S> acc = Mat2<S>::identity();
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// T = [[E - value, -1], [1, 0]] for one lattice site of potential `value`.
template <class S>
Mat2<S> site_transfer(const S& value, const S& energy) {
    return {energy - value, S(-1), S(1), S(0)};
}

template <class S>
Mat2<S> transfer_matrix(int v, const S& lambda, const S& energy) {
    return site_transfer<S>(v ? lambda : S(0), energy);
}

// Ordered product over the potential values, newest (last site) leftmost.
template <class S>
Mat2<S> monodromy_direct(const std::vector<S>& potential, const S& energy) {
    if (potential.empty()) throw std::invalid_argument("monodromy_direct: empty potential");
    Mat2<S> m = site_transfer(potential.front(), energy);
    for (std::size_t i = 1; i < potential.size(); ++i)
        m = site_transfer(potential[i], energy) * m;
    return m;
}

template <class S>
Mat2<S> monodromy_direct(const Word& word, const S& lambda, const S& energy) {
    if (word.empty()) throw std::invalid_argument("monodromy_direct: empty word");
    Mat2<S> m = transfer_matrix(word[0], lambda, energy);
    for (std::size_t i = 1; i < word.size(); ++i)
        m = transfer_matrix(word[i], lambda, energy) * m;
    return m;
}

// Which lattice positions a length-n product covers: the periodic sections
// multiply T(K-1)...T(0), the aperiodic ones T(q_m)...T(1). Traces agree,
// entries do not.
enum class IndexConvention { periodic_from_zero, aperiodic_from_one };

template <class S>
std::vector<S> potential_window(const CfDigits& digits, const S& lambda, std::int64_t count,
                                IndexConvention convention, Variant variant = Variant::plain) {
    std::int64_t lo = convention == IndexConvention::periodic_from_zero ? 0 : 1;
    Word w = sturmian_window(digits, lo, lo + count - 1, variant);
    std::vector<S> pot;
    pot.reserve(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < w.size(); ++i) pot.push_back(w[i] ? lambda : S(0));
    return pot;
}

// M(q_m, E) over v(1..q_m) for m = 0..m_max, via the word recursion: the
// product over s_m = s_{m-1}^{a_m} s_{m-2} is M(s_{m-2}) M(s_{m-1})^{a_m},
// seeded by the single-letter products over s_{-1} = "1" and s_0 = "0".
// For m >= 1 the product over s_m is exactly M(q_m, E); the m = 0 entry is
// the direct product over site 1 (v(1) differs from s_0 when a_1 = 1).
template <class S>
std::vector<Mat2<S>> monodromy_sequence(const CfDigits& digits, const S& lambda, const S& energy, int m_max) {
    if (m_max < 0) throw std::invalid_argument("monodromy_sequence: m_max must be >= 0");
    if (m_max > digits.size())
        throw InsufficientDigits("monodromy_sequence: m_max=" + std::to_string(m_max) + " exceeds " + std::to_string(digits.size()) + " digits");
    std::vector<Mat2<S>> out;
    out.reserve(static_cast<std::size_t>(m_max) + 1);
    out.push_back(transfer_matrix(sturmian_value(digits, 1), lambda, energy));
    Mat2<S> prev2 = transfer_matrix(1, lambda, energy);  // over s_{-1}
    Mat2<S> prev = transfer_matrix(0, lambda, energy);   // over s_0
    for (int k = 1; k <= m_max; ++k) {
        std::uint64_t e = static_cast<std::uint64_t>(digits.digit(k) - (k == 1 ? 1 : 0));
        Mat2<S> cur = prev2 * mat2_pow(prev, e);
        prev2 = std::exchange(prev, cur);
        out.push_back(prev);
    }
    return out;
}

template <class S>
Mat2<S> monodromy_recursive(const CfDigits& digits, const S& lambda, const S& energy, int m) {
    return monodromy_sequence(digits, lambda, energy, m).back();
}

// Dense polynomial in one variable, ascending coefficients. Only the small
// degrees that appear as trace polynomials are ever used.
template <class S>
struct Polynomial {
    std::vector<S> c;

    Polynomial() : c{S(0)} {}
    explicit Polynomial(std::vector<S> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(S(0));
    }
    explicit Polynomial(int constant) : c{S(constant)} {}

    static Polynomial x() { return Polynomial(std::vector<S>{S(0), S(1)}); }

    int degree() const {
        for (std::size_t i = c.size(); i-- > 0;)
            if (!(c[i] == S(0))) return static_cast<int>(i);
        return 0;
    }

    S eval(const S& at) const {
        S acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * at + c[i];
        return acc;
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<S> r(std::max(p.c.size(), q.c.size()), S(0));
        for (std::size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
        for (std::size_t i = 0; i < q.c.size(); ++i) r[i] += q.c[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
        std::vector<S> r(std::max(p.c.size(), q.c.size()), S(0));
        for (std::size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
        for (std::size_t i = 0; i < q.c.size(); ++i) r[i] -= q.c[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        std::vector<S> r(p.c.size() + q.c.size() - 1, S(0));
        for (std::size_t i = 0; i < p.c.size(); ++i)
            for (std::size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
        return Polynomial(std::move(r));
    }
};

// tr(M(E)) as a monic polynomial of degree K, built by carrying polynomial
// entries through the transfer product.
template <class S>
Polynomial<S> trace_polynomial(const std::vector<S>& potential) {
    if (potential.empty()) throw std::invalid_argument("trace_polynomial: empty potential");
    using P = Polynomial<S>;
    auto site = [](const S& v) {
        return Mat2<P>{P::x() - P(std::vector<S>{v}), P(-1), P(1), P(0)};
    };
    Mat2<P> m = site(potential.front());
    for (std::size_t i = 1; i < potential.size(); ++i) m = site(potential[i]) * m;
    P tr = m.trace();
    if (tr.degree() != static_cast<int>(potential.size()) || !(tr.c.back() == S(1)))
        throw ConsistencyError("trace_polynomial: expected monic polynomial of degree K");
    return tr;
}

template <class S>
Polynomial<S> trace_polynomial(const Word& word, const S& lambda) {
    std::vector<S> pot;
    pot.reserve(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) pot.push_back(word[i] ? lambda : S(0));
    return trace_polynomial(pot);
}

}  // namespace sturmfsm
