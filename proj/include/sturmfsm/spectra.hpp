#pragma once

#include "sturmfsm/cf.hpp"
#include "sturmfsm/transfer.hpp"
#include "sturmfsm/words.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace sturmfsm {

// Symmetric tridiagonal matrix of Schroedinger type: given diagonal, all
// off-diagonal entries 1, optional equal corner entries (Floquet boundary).
// For n < 3 the corners collide with the band and are summed in.
struct Tridiagonal {
    Eigen::VectorXd diag;
    double corner = 0.0;

    Eigen::Index size() const { return diag.size(); }
};

inline Eigen::MatrixXd to_dense(const Tridiagonal& t) {
    Eigen::Index n = t.size();
    if (n < 1) throw std::invalid_argument("to_dense: empty matrix");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = t.diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
    if (t.corner != 0.0) {
        if (n == 1) {
            a(0, 0) += 2.0 * t.corner;
        } else if (n == 2) {
            a(0, 1) += t.corner;
            a(1, 0) += t.corner;
        } else {
            a(0, n - 1) += t.corner;
            a(n - 1, 0) += t.corner;
        }
    }
    return a;
}

// det(tridiag(diag) - E) by the continuant recurrence
// D_j = (d_j - E) D_{j-1} - D_{j-2}, empty product = 1.
template <class S>
S continuant_det(std::span<const S> diag, const S& energy) {
    S prev2(1);  // D_{empty}
    if (diag.empty()) return prev2;
    S prev = diag[0] - energy;
    for (std::size_t j = 1; j < diag.size(); ++j) {
        S cur = (diag[j] - energy) * prev - prev2;
        prev2 = std::exchange(prev, cur);
    }
    return prev;
}

template <class S>
S continuant_det(const std::vector<S>& diag, const S& energy) {
    return continuant_det(std::span<const S>(diag.data(), diag.size()), energy);
}

inline double continuant_det(const Eigen::VectorXd& diag, double energy) {
    return continuant_det(std::span<const double>(diag.data(), static_cast<std::size_t>(diag.size())), energy);
}

namespace detail {

// Sturm count: number of eigenvalues of tridiag(diag) strictly below x,
// via the LDL^T pivot recurrence q_j = (d_j - x) - 1/q_{j-1}.
inline int sturm_count_below(const Eigen::VectorXd& diag, double x) {
    const double pivmin = 1e-300;
    int count = 0;
    double q = 1.0;
    for (Eigen::Index j = 0; j < diag.size(); ++j) {
        q = (j == 0) ? diag[0] - x : (diag[j] - x) - 1.0 / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

// All eigenvalues, ascending, by Sturm-sequence bisection. Absolute
// tolerance 1e-10 * max(1, ||diag||_inf + 2).
inline std::vector<double> symtridiag_eigenvalues(const Eigen::VectorXd& diag) {
    Eigen::Index n = diag.size();
    if (n < 1) throw std::invalid_argument("symtridiag_eigenvalues: empty matrix");
    double bound = diag.cwiseAbs().maxCoeff() + 2.0;
    double tol = 1e-10 * std::max(1.0, bound);
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        double lo = -bound - tol, hi = bound + tol;
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            if (detail::sturm_count_below(diag, mid) <= k) lo = mid;
            else hi = mid;
        }
        eig[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    }
    return eig;
}

enum class FloquetPhase { zero, pi };

// Eigenvalues of H_{K,phi} (corners +1 for phi=0, -1 for phi=pi).
inline std::vector<double> floquet_eigenvalues(const Eigen::VectorXd& potential, FloquetPhase phase) {
    if (potential.size() < 1) throw std::invalid_argument("floquet_eigenvalues: empty potential");
    Tridiagonal t{potential, phase == FloquetPhase::zero ? 1.0 : -1.0};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(t), Eigen::EigenvaluesOnly);
    const auto& v = solver.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

struct BandSpectrum {
    std::vector<std::pair<double, double>> bands;  // ordered, non-crossing

    bool contains(double e, double tol = 0.0) const {
        for (auto [lo, hi] : bands)
            if (e >= lo - tol && e <= hi + tol) return true;
        return false;
    }
};

// Bands [E_{2j-1}, E_{2j}] from the merged Floquet eigenvalues at phases 0
// and pi. Each edge is cross-checked against the trace condition.
inline BandSpectrum band_spectrum(const Eigen::VectorXd& potential) {
    auto e0 = floquet_eigenvalues(potential, FloquetPhase::zero);
    auto epi = floquet_eigenvalues(potential, FloquetPhase::pi);
    std::vector<double> all;
    all.reserve(e0.size() + epi.size());
    all.insert(all.end(), e0.begin(), e0.end());
    all.insert(all.end(), epi.begin(), epi.end());
    std::sort(all.begin(), all.end());

    std::vector<double> pot(potential.data(), potential.data() + potential.size());
    for (double e : all) {
        double tr = monodromy_direct(pot, e).trace();
        if (std::abs(tr) > 2.0 + 1e-8)
            throw ConsistencyError("band_spectrum: band edge violates trace condition, |tr|=" + format_double(std::abs(tr)));
    }

    BandSpectrum s;
    for (std::size_t j = 0; j + 1 < all.size(); j += 2) s.bands.emplace_back(all[j], all[j + 1]);
    return s;
}

inline BandSpectrum band_spectrum(const Word& word, double lambda) {
    Eigen::VectorXd pot(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) pot[static_cast<Eigen::Index>(i)] = lambda * word[i];
    return band_spectrum(pot);
}

struct OneSidedSpectrum {
    std::vector<double> points;            // filter value clearly below 1
    std::vector<bool> inside_gap;          // diagnostic: point sits in a spectral gap
    std::vector<double> boundary_points;   // |det| within 1e-9 of 1: not decidable,
                                           // reported but excluded from points
};

namespace detail {

// Filter determinant det(A_K - E) evaluated at an eigenvalue E of the
// leading (K-1) block. At the exact eigenvalue D_{K-1}(E) = 0, so
// D_K(E) = -D_{K-2}(E); using that identity keeps boundary cases (the
// exact -1 of 2-periodic potentials) stable under eigenvalue rounding.
inline double one_sided_filter_det(const Eigen::VectorXd& window, double e) {
    Eigen::Index k = window.size();
    Eigen::VectorXd head = window.head(k - 2);
    return -continuant_det(head, e);
}

// strict filter |det| < 1, with the 1e-9 band around 1 treated as boundary
enum class FilterClass { in, out, boundary };

inline FilterClass classify_filter(double det) {
    if (std::abs(std::abs(det) - 1.0) <= 1e-9) return FilterClass::boundary;
    return std::abs(det) < 1.0 ? FilterClass::in : FilterClass::out;
}

}  // namespace detail

// sigma_d(H_+) candidates: eigenvalues E of the leading (K-1) block with
// |det(full K block - E)| < 1. The paper's filter is strict, so values on
// the 1e-9 boundary around 1 never enter the point set; they are reported
// separately so rounding cannot flip a verdict.
inline OneSidedSpectrum one_sided_point_spectrum(const Eigen::VectorXd& potential) {
    Eigen::Index k = potential.size();
    if (k < 2) throw std::invalid_argument("one_sided_point_spectrum: period must be >= 2");
    Eigen::VectorXd inner = potential.head(k - 1);
    auto bands = band_spectrum(potential);
    OneSidedSpectrum out;
    for (double e : symtridiag_eigenvalues(inner)) {
        switch (detail::classify_filter(detail::one_sided_filter_det(potential, e))) {
            case detail::FilterClass::in:
                out.points.push_back(e);
                out.inside_gap.push_back(!bands.contains(e, 1e-9));
                break;
            case detail::FilterClass::boundary:
                out.boundary_points.push_back(e);
                break;
            case detail::FilterClass::out:
                break;
        }
    }
    return out;
}

inline OneSidedSpectrum one_sided_point_spectrum(const Word& word, double lambda) {
    Eigen::VectorXd pot(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) pot[static_cast<Eigen::Index>(i)] = lambda * word[i];
    return one_sided_point_spectrum(pot);
}

struct GmSet {
    std::vector<double> points;           // sorted, merged within 1e-9
    std::vector<double> boundary_points;  // filter value within 1e-9 of 1, excluded
    bool degenerate_period = false;       // q_m < 2, no inner matrix exists
};

inline double dist_to_zero(const std::vector<double>& points) {
    double d = std::numeric_limits<double>::infinity();
    for (double p : points) d = std::min(d, std::abs(p));
    return d;
}

// G_m from the applicability theorem: over every cyclic shift k = 1..q_m of
// the diagonal of H_{lambda, alpha_m, 0}, the filtered eigenvalues of the
// (q_m - 1)-window starting at k.
inline GmSet g_m_set(const CfDigits& digits, double lambda, int m) {
    auto apx = approximants(digits, m);
    const BigInt& qb = apx[static_cast<std::size_t>(m)].q;
    GmSet out;
    if (qb < 2) {
        out.degenerate_period = true;
        return out;
    }
    std::int64_t q = qb.convert_to<std::int64_t>();
    PeriodicWordSpec spec(apx[static_cast<std::size_t>(m)].p, qb);

    std::vector<double> in, boundary;
    Eigen::VectorXd window(q);  // diagonal at shift k, positions k..k+q-1
    for (std::int64_t k = 1; k <= q; ++k) {
        for (std::int64_t i = 0; i < q; ++i)
            window[i] = lambda * periodic_word_value(spec, k + i);
        auto eig = symtridiag_eigenvalues(window.head(q - 1));
        for (double e : eig) {
            switch (detail::classify_filter(detail::one_sided_filter_det(window, e))) {
                case detail::FilterClass::in: in.push_back(e); break;
                case detail::FilterClass::boundary: boundary.push_back(e); break;
                case detail::FilterClass::out: break;
            }
        }
    }
    auto merge = [](std::vector<double>& xs) {
        std::sort(xs.begin(), xs.end());
        std::vector<double> out;
        for (double e : xs)
            if (out.empty() || e - out.back() > 1e-9) out.push_back(e);
        return out;
    };
    out.points = merge(in);
    out.boundary_points = merge(boundary);
    return out;
}

namespace detail {

// log2|theta_i| for the leading-minor continuants of tridiag(diag), i = 0..n
// (theta_0 = 1). Linear-domain recurrence with power-of-two renormalization;
// exact zeros stay -inf.
inline std::vector<double> continuant_log_magnitudes(const Eigen::VectorXd& diag, bool reverse) {
    const double lim = std::ldexp(1.0, 300);
    Eigen::Index n = diag.size();
    std::vector<double> logs(static_cast<std::size_t>(n) + 1);
    double prev2 = 0.0, prev = 1.0;  // theta_{-1}, theta_0
    long exp2 = 0;
    auto log_of = [&](double v) {
        return v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(std::abs(v)) + static_cast<double>(exp2);
    };
    logs[0] = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = reverse ? diag[n - 1 - j] : diag[j];
        double cur = d * prev - prev2;
        prev2 = std::exchange(prev, cur);
        logs[static_cast<std::size_t>(j) + 1] = log_of(cur);
        double m = std::max(std::abs(prev), std::abs(prev2));
        if (m > lim) {
            prev /= lim;
            prev2 /= lim;
            exp2 += 300;
        } else if (m > 0.0 && m < 1.0 / lim) {
            prev *= lim;
            prev2 *= lim;
            exp2 -= 300;
        }
    }
    return logs;
}

inline double log2_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace detail

// ||A^{-1}||_inf for A = tridiag(diag) with unit off-diagonals, in linear
// time via the two continuant sequences: |A^{-1}_{ij}| = |theta_{i-1}
// phi_{j+1}| / |theta_n| for i <= j. All magnitudes are handled in the log
// domain, so growth like rho^n cannot overflow. Singular means the largest
// cofactor exceeds |det| by 1e14, i.e. the inverse norm is beyond that scale.
inline double tridiag_inverse_infnorm(const Eigen::VectorXd& diag) {
    Eigen::Index n = diag.size();
    if (n < 1) throw std::invalid_argument("tridiag_inverse_infnorm: empty matrix");
    auto lth = detail::continuant_log_magnitudes(diag, false);  // lth[i] = log2|theta_i|
    auto lph_rev = detail::continuant_log_magnitudes(diag, true);
    // lph[j] = log2|phi_j|, phi_{n+1} = 1: trailing minors are leading minors
    // of the reversed diagonal.
    auto lphi = [&](Eigen::Index j) { return lph_rev[static_cast<std::size_t>(n + 1 - j)]; };
    double ldet = lth[static_cast<std::size_t>(n)];

    const double ninf = -std::numeric_limits<double>::infinity();
    double max_cof = ninf;
    for (Eigen::Index i = 1; i <= n; ++i)
        max_cof = std::max(max_cof, lth[static_cast<std::size_t>(i - 1)] + lphi(i + 1));
    if (ldet == ninf || ldet < max_cof - 46.5)  // 2^46.5 ~ 1e14
        throw SingularMatrix("tridiag_inverse_infnorm: matrix is singular to working precision");

    // Row i sum: |phi_{i+1}| * sum_{j<i}|theta_{j-1}| + |theta_{i-1}| * sum_{j>=i}|phi_{j+1}|.
    std::vector<double> suffix(static_cast<std::size_t>(n) + 2, ninf);
    for (Eigen::Index j = n; j >= 1; --j)
        suffix[static_cast<std::size_t>(j)] = detail::log2_add(suffix[static_cast<std::size_t>(j) + 1], lphi(j + 1));
    double best = ninf;
    double prefix = ninf;  // log2 sum of |theta_{j-1}| for j < i
    for (Eigen::Index i = 1; i <= n; ++i) {
        double row = detail::log2_add(lphi(i + 1) + prefix, lth[static_cast<std::size_t>(i - 1)] + suffix[static_cast<std::size_t>(i)]);
        best = std::max(best, row);
        prefix = detail::log2_add(prefix, lth[static_cast<std::size_t>(i - 1)]);
    }
    return std::exp2(best - ldet);
}

// nu_inf of the square window, i.e. 1/||A^{-1}||_inf; 0 when singular.
inline double lower_norm_window(const Eigen::VectorXd& diag) {
    try {
        return 1.0 / tridiag_inverse_infnorm(diag);
    } catch (const SingularMatrix&) {
        return 0.0;
    }
}

inline double lower_norm_window(const Word& word, double lambda) {
    Eigen::VectorXd diag(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) diag[static_cast<Eigen::Index>(i)] = lambda * word[i];
    return lower_norm_window(diag);
}

// Diagnostic 2-norm variant: for a symmetric window the smallest singular
// value is the smallest |eigenvalue|.
inline double lower_norm_window_2norm(const Eigen::VectorXd& diag) {
    double best = std::numeric_limits<double>::infinity();
    for (double e : symtridiag_eigenvalues(diag)) best = std::min(best, std::abs(e));
    return best;
}

}  // namespace sturmfsm
