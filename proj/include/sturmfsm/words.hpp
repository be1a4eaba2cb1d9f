#pragma once

#include "sturmfsm/cf.hpp"
#include "sturmfsm/numeric.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sturmfsm {

// Finite {0,1} word, bit-packed. `origin` records the lattice index of the
// first symbol when the word is a window of a two-sided sequence; it is
// metadata and takes no part in comparisons.
class Word {
public:
    Word() = default;

    explicit Word(std::string_view symbols, std::int64_t origin = 0) : origin_(origin) {
        for (char c : symbols) {
            if (c != '0' && c != '1') throw std::invalid_argument("Word: symbols must be 0/1");
            push_back(c - '0');
        }
    }

    void push_back(int bit) {
        std::size_t slot = size_ / 64, off = size_ % 64;
        if (off == 0) bits_.push_back(0);
        if (bit) bits_[slot] |= (std::uint64_t{1} << off);
        ++size_;
    }

    void append(const Word& other) {
        for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
    }

    int operator[](std::size_t i) const { return static_cast<int>((bits_[i / 64] >> (i % 64)) & 1u); }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::int64_t origin() const { return origin_; }
    void set_origin(std::int64_t o) { origin_ = o; }

    std::string str() const {
        std::string s;
        s.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) s += static_cast<char>('0' + (*this)[i]);
        return s;
    }

    Word reversed() const {
        Word r;
        r.origin_ = origin_;
        for (std::size_t i = size_; i-- > 0;) r.push_back((*this)[i]);
        return r;
    }

    Word subword(std::size_t pos, std::size_t len) const {
        Word r;
        r.origin_ = origin_ + static_cast<std::int64_t>(pos);
        for (std::size_t i = 0; i < len; ++i) r.push_back((*this)[pos + i]);
        return r;
    }

    bool is_palindrome() const {
        for (std::size_t i = 0; i < size_ / 2; ++i)
            if ((*this)[i] != (*this)[size_ - 1 - i]) return false;
        return true;
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.size_ == b.size_ && a.bits_ == b.bits_;
    }

    // Length, then lexicographic by symbols; gives the canonical output order.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.size_ != b.size_) return a.size_ <=> b.size_;
        for (std::size_t i = 0; i < a.size_; ++i)
            if (int d = a[i] - b[i]; d != 0) return d <=> 0;
        return std::strong_ordering::equal;
    }

private:
    std::vector<std::uint64_t> bits_;
    std::size_t size_ = 0;
    std::int64_t origin_ = 0;
};

enum class Variant { plain, tilde };

// s_n from the recursion s_{-1}=1, s_0=0, s_1=s_0^{a_1-1}s_{-1},
// s_n=s_{n-1}^{a_n}s_{n-2}; |s_n| = q_n.
inline Word recursive_word(const CfDigits& digits, int n) {
    if (n < 1) throw std::invalid_argument("recursive_word: n must be >= 1");
    if (n > digits.size())
        throw InsufficientDigits("recursive_word: n=" + std::to_string(n) + " exceeds " + std::to_string(digits.size()) + " digits");
    Word prev("1", 1);  // s_{-1}
    Word cur("0", 1);   // s_0
    for (int k = 1; k <= n; ++k) {
        std::int64_t reps = digits.digit(k) - (k == 1 ? 1 : 0);
        Word next;
        next.set_origin(1);
        for (std::int64_t r = 0; r < reps; ++r) next.append(cur);
        next.append(prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace detail {

// Shortest s_m with q_m >= len; this is the right half v(1..q_m) of the
// two-sided word at theta = 0.
inline Word sturmian_prefix(const CfDigits& digits, std::int64_t len) {
    if (len < 1) len = 1;
    Word prev("1", 1), cur("0", 1);
    for (int k = 1; k <= digits.size(); ++k) {
        std::int64_t reps = digits.digit(k) - (k == 1 ? 1 : 0);
        Word next;
        next.set_origin(1);
        for (std::int64_t r = 0; r < reps; ++r) next.append(cur);
        next.append(prev);
        prev = std::move(cur);
        cur = std::move(next);
        if (static_cast<std::int64_t>(cur.size()) >= len) return cur;
    }
    throw InsufficientDigits("sturmian prefix of length " + std::to_string(len) + " unreachable with " + std::to_string(digits.size()) + " digits (q_N=" + std::to_string(cur.size()) + ")");
}

}  // namespace detail

// v_{alpha,0}(n) resp. tilde; the tilde word differs from the plain one
// exactly at n in {-1,0}. Negative indices via v(-k) = v(k-1), k >= 2.
inline int sturmian_value(const CfDigits& digits, std::int64_t n, Variant variant = Variant::plain) {
    if (n == 0) return variant == Variant::plain ? 0 : 1;
    if (n == -1) return variant == Variant::plain ? 1 : 0;
    std::int64_t pos = n >= 1 ? n : -n - 1;  // mirror rule for n <= -2
    Word s = detail::sturmian_prefix(digits, pos);
    return s[static_cast<std::size_t>(pos - 1)];
}

// Window v(lo..hi) of the two-sided word, one prefix build for the whole range.
inline Word sturmian_window(const CfDigits& digits, std::int64_t lo, std::int64_t hi, Variant variant = Variant::plain) {
    if (lo > hi) throw std::invalid_argument("sturmian_window: lo > hi");
    std::int64_t need = std::max<std::int64_t>({1, hi, -lo - 1});
    Word s = detail::sturmian_prefix(digits, need);
    Word w;
    w.set_origin(lo);
    for (std::int64_t n = lo; n <= hi; ++n) {
        int v;
        if (n == 0) v = variant == Variant::plain ? 0 : 1;
        else if (n == -1) v = variant == Variant::plain ? 1 : 0;
        else {
            std::int64_t pos = n >= 1 ? n : -n - 1;
            v = s[static_cast<std::size_t>(pos - 1)];
        }
        w.push_back(v);
    }
    return w;
}

// Periodic word v_{p/q, theta} with theta = k0*(p/q) + theta_rat, evaluated
// in integer arithmetic only.
struct PeriodicWordSpec {
    BigInt p;
    BigInt q;
    std::int64_t k0 = 0;   // orbit offset realized as an index shift
    BigRat theta = 0;      // exact rational offset
    Variant variant = Variant::plain;

    PeriodicWordSpec(BigInt p_, BigInt q_) : p(std::move(p_)), q(std::move(q_)) {
        if (q < 1 || p < 0 || p > q) throw std::invalid_argument("PeriodicWordSpec: need 0 <= p <= q, q >= 1");
        BigInt g = gcd(p, q);
        if (g > 1) { p /= g; q /= g; }
    }
};

inline int periodic_word_value(const PeriodicWordSpec& spec, std::int64_t n) {
    const BigInt& r = numerator(spec.theta);
    const BigInt& s = denominator(spec.theta);
    BigInt m = BigInt(n) + spec.k0;
    BigInt den = spec.q * s;
    BigInt x = (m * spec.p * s + r * spec.q) % den;
    if (x < 0) x += den;
    BigInt edge = (spec.q - spec.p) * s;  // 1 - p/q as a fraction of den
    if (spec.variant == Variant::plain) return x >= edge ? 1 : 0;
    return (x == 0 || x > edge) ? 1 : 0;
}

// All distinct length-L factors of v_{alpha,0}, canonical order. By the
// subword lemma this set equals the factor list of the tilde word and of
// every offset theta; Sturmian complexity forces exactly L+1 factors,
// which is asserted.
inline std::vector<Word> enumerate_subwords(const CfDigits& digits, std::int64_t L) {
    if (L < 1) throw std::invalid_argument("enumerate_subwords: L must be >= 1");
    auto apx = approximants(digits, digits.size());
    std::int64_t q_top = 0;
    if (apx.back().q > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
        throw std::invalid_argument("enumerate_subwords: q_N too large");
    q_top = apx.back().q.convert_to<std::int64_t>();

    std::int64_t qm = -1;
    for (const auto& a : apx) {
        if (a.q >= 2 * L + 4) { qm = a.q.convert_to<std::int64_t>(); break; }
    }
    if (qm < 0 || q_top < qm + L)
        throw InsufficientDigits("enumerate_subwords: need q_m >= " + std::to_string(2 * L + 4) + " and q_N >= q_m+L; have q_N=" + std::to_string(q_top));

    Word big = sturmian_window(digits, -qm, qm + L - 1);
    std::set<Word> seen;
    for (std::int64_t i = -qm; i <= qm; ++i) {
        Word w = big.subword(static_cast<std::size_t>(i + qm), static_cast<std::size_t>(L));
        seen.insert(w);  // first occurrence wins; origin kept from there
    }
    if (static_cast<std::int64_t>(seen.size()) != L + 1)
        throw ConsistencyError("enumerate_subwords: found " + std::to_string(seen.size()) + " factors of length " + std::to_string(L) + ", expected " + std::to_string(L + 1));
    return {seen.begin(), seen.end()};
}

struct PalindromeSplit {
    Word palindrome;  // pi_n
    Word suffix;      // "10" (n even) or "01" (n odd)
};

inline PalindromeSplit palindromic_decomposition(const CfDigits& digits, int n) {
    if (n < 2) throw std::invalid_argument("palindromic_decomposition: n must be >= 2");
    Word s = recursive_word(digits, n);
    Word pi = s.subword(0, s.size() - 2);
    Word suffix = s.subword(s.size() - 2, 2);
    if (!pi.is_palindrome())
        throw ConsistencyError("palindromic_decomposition: pi_" + std::to_string(n) + " is not a palindrome");
    const char* want = (n % 2 == 0) ? "10" : "01";
    if (suffix.str() != want)
        throw ConsistencyError("palindromic_decomposition: suffix of s_" + std::to_string(n) + " is " + suffix.str() + ", expected " + want);
    return {pi, suffix};
}

// v_{alpha_n, k0*alpha}(k) on the validity range of the orbit-offset lemma:
// n >= 2, |k0| <= q_{n-1}, -q_n+1 <= k <= q_n-2. Outside that range the
// lemma makes no statement and we refuse rather than extrapolate.
inline int periodic_value_orbit_theta(const CfDigits& digits, int n, std::int64_t k0, std::int64_t k) {
    if (n < 2) throw std::domain_error("periodic_value_orbit_theta: n must be >= 2");
    auto apx = approximants(digits, n);
    const BigInt& qn = apx[static_cast<std::size_t>(n)].q;
    const BigInt& qn1 = apx[static_cast<std::size_t>(n) - 1].q;
    if (BigInt(k0 < 0 ? -k0 : k0) > qn1)
        throw std::domain_error("periodic_value_orbit_theta: |k0| must be <= q_{n-1}");
    if (BigInt(k) < -qn + 1 || BigInt(k) > qn - 2)
        throw std::domain_error("periodic_value_orbit_theta: k outside [-q_n+1, q_n-2]");
    if (k0 == 0) return periodic_word_value(PeriodicWordSpec(apx[static_cast<std::size_t>(n)].p, qn), k);
    bool even = n % 2 == 0;
    Variant variant = ((k0 > 0) == even) ? Variant::plain : Variant::tilde;
    return sturmian_value(digits, k + k0, variant);
}

}  // namespace sturmfsm
