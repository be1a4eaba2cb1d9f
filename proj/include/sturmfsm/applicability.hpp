#pragma once

#include "sturmfsm/cf.hpp"
#include "sturmfsm/spectra.hpp"
#include "sturmfsm/transfer.hpp"
#include "sturmfsm/words.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sturmfsm {

enum class Verdict { applicable, not_applicable, inconclusive };
enum class Method { periodic_trace, aperiodic_trace_gm, certified_lower_norm };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::applicable: return "applicable";
        case Verdict::not_applicable: return "not_applicable";
        default: return "inconclusive";
    }
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::periodic_trace: return "periodic_trace";
        case Method::aperiodic_trace_gm: return "aperiodic_trace_gm";
        default: return "certified_lower_norm";
    }
}

struct ApplicabilityReport {
    Verdict verdict = Verdict::inconclusive;
    Method method = Method::aperiodic_trace_gm;
    std::optional<int> m0;
    std::vector<std::pair<int, double>> trace_values;
    std::vector<std::pair<int, double>> gm_distances;  // +inf for empty G_m
    double epsilon = 0.0;
    int depth = 0;
    double min_window_nu = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> fsm_inverse_bound;  // 1/(min_window_nu - epsilon)
    std::optional<std::string> trace_exact;   // "p/q" when computed rationally
    std::vector<std::string> warnings;
};

enum class ValueClass { integer, rational, real };

namespace detail {

template <class S>
bool continuant_is_zero(const std::vector<S>& diag) {
    if constexpr (std::is_floating_point_v<S>) {
        // scale-tracked continuant; a value 1e-10 below the running
        // magnitude counts as zero
        S prev2(1), prev = diag.empty() ? S(1) : diag[0];
        S scale = std::max(S(1), std::abs(prev));
        for (std::size_t j = 1; j < diag.size(); ++j) {
            S cur = diag[j] * prev - prev2;
            prev2 = std::exchange(prev, cur);
            scale = std::max(scale, std::abs(cur));
        }
        return std::abs(prev) <= 1e-10 * scale;
    } else {
        return continuant_det(diag, S(0)) == 0;
    }
}

// 0 in sigma_d(H_+) for the K-periodic potential: 0 is an eigenvalue of the
// leading (K-1) block and the K-block determinant passes the strict filter.
// At a zero of the inner continuant, D_K(0) = -D_{K-2}(0), which is the
// boundary-stable form of the filter value.
template <class S>
bool zero_in_one_sided(const std::vector<S>& potential) {
    if (potential.size() < 2) return false;  // K=1: no extra points (extrapolated)
    std::vector<S> inner(potential.begin(), potential.end() - 1);
    if (!continuant_is_zero(inner)) return false;
    using std::abs;
    std::vector<S> head(potential.begin(), potential.end() - 2);
    S det = -continuant_det(head, S(0));
    return abs(det) < S(1);
}

template <class S>
std::vector<S> rotated(const std::vector<S>& v, std::size_t r) {
    std::vector<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[(i + r) % v.size()];
    return out;
}

inline void run_chunked(std::size_t n, int jobs, const std::function<void(std::size_t, std::size_t)>& body) {
    if (jobs <= 1 || n < 2) {
        body(0, n);
        return;
    }
    std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Periodic applicability. |tr(M(0))| <= 2 means 0 is in the spectrum and the
// FSM cannot apply. Beyond that, the trace condition is sufficient only
// under one of the hypotheses (a) K <= 2, (b) K <= 8 with a {0,lambda}
// alphabet and rational lambda, (c) integer potential; otherwise every
// cyclic shift of the potential and of its reversal is checked for 0 in the
// one-sided point spectrum.
template <class S>
ApplicabilityReport periodic_fsm_applicable(const std::vector<S>& potential, ValueClass cls) {
    if (potential.empty()) throw std::invalid_argument("periodic_fsm_applicable: empty potential");
    ApplicabilityReport rep;
    rep.method = Method::periodic_trace;

    using std::abs;
    S tr = monodromy_direct(potential, S(0)).trace();
    rep.trace_values.emplace_back(0, static_cast<double>([&] {
                                      if constexpr (std::is_floating_point_v<S>) return tr;
                                      else return to_double(tr);
                                  }()));
    if constexpr (!std::is_floating_point_v<S>) rep.trace_exact = format_rational(tr);

    if (!(abs(tr) > S(2))) {
        rep.verdict = Verdict::not_applicable;
        rep.warnings.push_back("|tr(M(0))| <= 2: 0 lies in the spectrum of H");
        return rep;
    }

    std::size_t K = potential.size();
    bool zero_lambda_alphabet = true;
    std::optional<S> nonzero;
    for (const S& v : potential) {
        if (v == S(0)) continue;
        if (!nonzero) nonzero = v;
        else if (!(*nonzero == v)) zero_lambda_alphabet = false;
    }
    bool hyp_a = K <= 2;
    bool hyp_b = K <= 8 && zero_lambda_alphabet && cls != ValueClass::real;
    bool hyp_c = cls == ValueClass::integer;
    if (hyp_a || hyp_b || hyp_c) {
        rep.verdict = Verdict::applicable;
        return rep;
    }

    std::vector<S> reversed(potential.rbegin(), potential.rend());
    for (std::size_t r = 0; r < K; ++r) {
        for (const auto* base : {&potential, &reversed}) {
            auto rot = detail::rotated(*base, r);
            if (detail::zero_in_one_sided(rot)) {
                rep.verdict = Verdict::not_applicable;
                rep.warnings.push_back("0 in one-sided point spectrum of " + std::string(base == &potential ? "shift " : "reversed shift ") + std::to_string(r));
                return rep;
            }
        }
    }
    rep.verdict = Verdict::applicable;
    rep.warnings.push_back("no sufficient hypothesis applied; injectivity verified by the finite shift/reversal sweep");
    return rep;
}

template <class S>
ApplicabilityReport periodic_fsm_applicable(const Word& word, const S& lambda, ValueClass cls) {
    std::vector<S> pot;
    pot.reserve(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) pot.push_back(word[i] ? lambda : S(0));
    return periodic_fsm_applicable(pot, cls);
}

struct TraceScan {
    std::optional<int> m0;       // first m with |tr(q_m)| > 2 and |tr(q_{m+1})| > 2
    std::vector<BigRat> traces;  // index m = 0..m_max
    std::vector<std::string> warnings;
};

// Scan tr(M(q_m, 0)) for m = 0..m_max in exact rational arithmetic; once
// m0 is found, the persistence claim |tr(q_k)| > 2 for k >= m0 is verified
// and violations recorded (they would indicate a defect, not mathematics).
inline TraceScan aperiodic_trace_check(const CfDigits& digits, const BigRat& lambda, int m_max) {
    if (m_max < 1) throw std::invalid_argument("aperiodic_trace_check: m_max must be >= 1");
    if (m_max > digits.size())
        throw InsufficientDigits("aperiodic_trace_check: m_max=" + std::to_string(m_max) + " exceeds " + std::to_string(digits.size()) + " digits");
    TraceScan scan;
    scan.traces.reserve(static_cast<std::size_t>(m_max) + 1);
    for (const auto& m : monodromy_sequence(digits, lambda, BigRat(0), m_max))
        scan.traces.push_back(m.trace());
    for (int m = 0; m + 1 <= m_max; ++m) {
        if (abs(scan.traces[static_cast<std::size_t>(m)]) > 2 && abs(scan.traces[static_cast<std::size_t>(m) + 1]) > 2) {
            scan.m0 = m;
            break;
        }
    }
    if (scan.m0) {
        for (int k = *scan.m0; k <= m_max; ++k)
            if (!(abs(scan.traces[static_cast<std::size_t>(k)]) > 2))
                scan.warnings.push_back("persistence violated at m=" + std::to_string(k));
    }
    return scan;
}

inline std::vector<std::pair<int, double>> gm_distance_scan(const CfDigits& digits, double lambda, int m_min, int m_max) {
    std::vector<std::pair<int, double>> out;
    for (int m = m_min; m <= m_max; ++m) {
        GmSet gm = g_m_set(digits, lambda, m);
        out.emplace_back(m, dist_to_zero(gm.points));
    }
    return out;
}

// Certified finite check: epsilon = 2(|lambda|+2)/D (p = infinity), all D+2
// subword windows of length D+1, nu per window via the square truncation.
// Success is a proof of applicability; failure at finite D proves nothing.
inline ApplicabilityReport check_applicability_certified(const CfDigits& digits, double lambda, int depth, int jobs = 1) {
    if (depth < 4) throw std::invalid_argument("check_applicability_certified: D must be >= 4");
    ApplicabilityReport rep;
    rep.method = Method::certified_lower_norm;
    rep.depth = depth;
    rep.epsilon = 2.0 * (std::abs(lambda) + 2.0) / depth * (1.0 + 1e-9);

    auto windows = enumerate_subwords(digits, depth + 1);
    if (static_cast<int>(windows.size()) != depth + 2)
        throw ConsistencyError("certified check: window count " + std::to_string(windows.size()) + " != D+2");

    std::vector<double> nus(windows.size());
    detail::run_chunked(windows.size(), jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) nus[i] = lower_norm_window(windows[i], lambda);
    });
    rep.min_window_nu = *std::min_element(nus.begin(), nus.end());

    if (rep.min_window_nu > rep.epsilon) {
        rep.verdict = Verdict::applicable;
        rep.fsm_inverse_bound = 1.0 / (rep.min_window_nu - rep.epsilon);
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.warnings.push_back("min window nu <= epsilon; the square-truncation bound cannot certify at this D, retry with larger D");
    }
    return rep;
}

// Composition of the aperiodic applicability theorem at desk scale: the
// trace scan decides 0 in sigma(H); the certificate decides the one-sided
// part. A finite G_m scan can support but never prove the liminf condition,
// so it is attached as a diagnostic on the inconclusive path.
inline ApplicabilityReport theorem11_verdict(const CfDigits& digits, double lambda, int m_max, int depth, int jobs = 1) {
    TraceScan scan = aperiodic_trace_check(digits, rat_from_double(lambda), m_max);
    ApplicabilityReport rep;
    rep.method = Method::aperiodic_trace_gm;
    rep.m0 = scan.m0;
    for (std::size_t m = 0; m < scan.traces.size(); ++m)
        rep.trace_values.emplace_back(static_cast<int>(m), to_double(scan.traces[m]));
    rep.warnings = scan.warnings;

    if (!scan.m0) {
        rep.verdict = Verdict::not_applicable;
        rep.warnings.push_back("trace condition not met for any m <= " + std::to_string(m_max - 1) + ": 0 in sigma(H) on the scanned range");
        return rep;
    }

    ApplicabilityReport cert = check_applicability_certified(digits, lambda, depth, jobs);
    rep.epsilon = cert.epsilon;
    rep.depth = cert.depth;
    rep.min_window_nu = cert.min_window_nu;
    rep.fsm_inverse_bound = cert.fsm_inverse_bound;
    for (const auto& w : cert.warnings) rep.warnings.push_back(w);

    if (cert.verdict == Verdict::applicable) {
        rep.verdict = Verdict::applicable;
        return rep;
    }
    rep.verdict = Verdict::inconclusive;
    int gm_max = m_max;
    auto apx = approximants(digits, m_max);
    while (gm_max > 2 && apx[static_cast<std::size_t>(gm_max)].q > 500) --gm_max;
    rep.gm_distances = gm_distance_scan(digits, lambda, 2, gm_max);
    return rep;
}

// Smallest lambda in [lo, hi] where |tr(M(q_m))| > 2 and |tr(M(q_{m+1}))| > 2
// both hold, by bisection; lo must fail the predicate and hi satisfy it.
inline double lambda_pair_threshold(const CfDigits& digits, int m, double lo, double hi, double tol = 1e-9) {
    auto pred = [&](double lambda) {
        double t1 = std::abs(monodromy_recursive(digits, lambda, 0.0, m).trace());
        double t2 = std::abs(monodromy_recursive(digits, lambda, 0.0, m + 1).trace());
        return t1 > 2.0 && t2 > 2.0;
    };
    if (pred(lo) || !pred(hi)) throw std::invalid_argument("lambda_pair_threshold: predicate must fail at lo and hold at hi");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace sturmfsm
