#pragma once

#include "sturmfsm/spectra.hpp"
#include "sturmfsm/words.hpp"

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

namespace sturmfsm {

struct PeriodicSource {
    Eigen::VectorXd period;  // v(0..K-1), extended by n mod K
};

struct SturmianSource {
    CfDigits digits;
    double lambda = 1.0;
    std::int64_t k0 = 0;  // orbit offset theta = k0*alpha as an index shift
    Variant variant = Variant::plain;
};

// Solve (H - E) x = b for the operator with the given potential.
struct OperatorSpec {
    std::variant<PeriodicSource, SturmianSource> source;
    double energy = 0.0;
};

inline double potential_at(const OperatorSpec& spec, std::int64_t n) {
    if (const auto* p = std::get_if<PeriodicSource>(&spec.source)) {
        std::int64_t k = p->period.size();
        std::int64_t i = ((n % k) + k) % k;
        return p->period[i];
    }
    const auto& s = std::get<SturmianSource>(spec.source);
    return s.lambda * sturmian_value(s.digits, n + s.k0, s.variant);
}

// A_n = (a_ij - E delta_ij) for i,j = -n..n: diagonal lambda*v(i) - E.
inline Tridiagonal build_truncation(const OperatorSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("build_truncation: n must be >= 0");
    Eigen::VectorXd diag(2 * n + 1);
    if (const auto* s = std::get_if<SturmianSource>(&spec.source)) {
        Word w = sturmian_window(s->digits, -n + s->k0, n + s->k0, s->variant);
        for (std::int64_t i = 0; i < 2 * n + 1; ++i) diag[i] = s->lambda * w[static_cast<std::size_t>(i)] - spec.energy;
    } else {
        for (std::int64_t i = -n; i <= n; ++i) diag[i + n] = potential_at(spec, i) - spec.energy;
    }
    return {diag, 0.0};
}

// Tridiagonal solve with partial pivoting (the dgtsv scheme with one
// fill-in superdiagonal). A pivot below 1e-12 * scale is reported singular.
inline Eigen::VectorXd solve_truncation(const Tridiagonal& matrix, const Eigen::VectorXd& rhs) {
    if (matrix.corner != 0.0) throw std::invalid_argument("solve_truncation: corner entries not supported");
    Eigen::Index n = matrix.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_truncation: rhs length mismatch");
    double scale = std::max(1.0, matrix.diag.cwiseAbs().maxCoeff() + 2.0);
    double tiny = 1e-12 * scale;

    Eigen::VectorXd d = matrix.diag, b = rhs;
    Eigen::VectorXd du = Eigen::VectorXd::Ones(std::max<Eigen::Index>(n - 1, 0));
    Eigen::VectorXd du2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 2, 0));

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= 1.0) {  // sub-diagonal entry is 1
            if (std::abs(d[i]) <= tiny) throw SingularMatrix("solve_truncation: zero pivot");
            double fact = 1.0 / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            double fact = d[i];  // d(i)/dl(i), dl = 1
            d[i] = 1.0;
            double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            du[i] = temp;
            temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - fact * b[i + 1];
        }
    }
    if (std::abs(d[n - 1]) <= tiny) throw SingularMatrix("solve_truncation: zero pivot");

    Eigen::VectorXd x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (Eigen::Index i = n - 3; i >= 0; --i)
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    return x;
}

struct Rhs {
    std::int64_t origin = 0;
    Eigen::VectorXd values;
};

struct FsmRun {
    std::vector<int> sizes;
    std::vector<bool> solved;            // per size
    std::vector<double> residuals;       // per size, NaN where singular
    std::vector<double> inverse_norms;   // ||A_n^{-1}||_inf, inf/NaN where singular
    std::vector<double> deltas;          // between consecutive solved sizes
    std::vector<int> singular_sizes;
    bool converged = false;
    Rhs solution;                        // final embedded solution window
    std::vector<std::string> warnings;
};

// Run the finite section method along the given schedule of half-widths.
// Singular truncations are skipped and recorded; stability guarantees
// invertibility only eventually, so they are not fatal. Convergence is
// declared on the embedded solution deltas.
inline FsmRun fsm_run(const OperatorSpec& spec, const Rhs& rhs, const std::vector<int>& schedule, double tol) {
    if (schedule.empty()) throw std::invalid_argument("fsm_run: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw std::invalid_argument("fsm_run: schedule must be strictly increasing");
    if (rhs.values.size() == 0) throw std::invalid_argument("fsm_run: empty rhs");
    std::int64_t lo = rhs.origin, hi = rhs.origin + rhs.values.size() - 1;
    if (lo < -schedule.front() || hi > schedule.front())
        throw std::invalid_argument("fsm_run: rhs support must lie inside the smallest window");

    FsmRun run;
    Eigen::VectorXd prev_solution;
    int prev_n = -1;
    int tail_deltas_ok = 0;
    bool tail_broken_by_singular = false;

    for (int n : schedule) {
        run.sizes.push_back(n);
        Tridiagonal a = build_truncation(spec, n);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * n + 1);
        for (std::int64_t i = lo; i <= hi; ++i) b[i + n] = rhs.values[i - lo];

        double inv_norm;
        try {
            inv_norm = tridiag_inverse_infnorm(a.diag);
        } catch (const SingularMatrix&) {
            inv_norm = std::numeric_limits<double>::infinity();
        }

        try {
            Eigen::VectorXd x = solve_truncation(a, b);
            double res = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                double ax = a.diag[i] * x[i];
                if (i > 0) ax += x[i - 1];
                if (i + 1 < x.size()) ax += x[i + 1];
                res = std::max(res, std::abs(ax - b[i]));
            }
            run.solved.push_back(true);
            run.residuals.push_back(res);
            run.inverse_norms.push_back(inv_norm);

            if (prev_n >= 0) {
                double delta = 0.0;  // on the common support [-prev_n, prev_n]
                for (std::int64_t i = -prev_n; i <= prev_n; ++i)
                    delta = std::max(delta, std::abs(x[i + n] - prev_solution[i + prev_n]));
                run.deltas.push_back(delta);
                tail_deltas_ok = (delta <= tol && !tail_broken_by_singular) ? tail_deltas_ok + 1 : (delta <= tol ? 1 : 0);
                tail_broken_by_singular = false;
            }
            prev_solution = std::move(x);
            prev_n = n;
            run.solution = {-static_cast<std::int64_t>(n), prev_solution};
        } catch (const SingularMatrix&) {
            run.solved.push_back(false);
            run.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
            run.inverse_norms.push_back(inv_norm);
            run.singular_sizes.push_back(n);
            tail_broken_by_singular = true;
            tail_deltas_ok = 0;
        }
    }

    if (run.singular_sizes.size() == run.sizes.size()) {
        run.warnings.push_back("all truncations singular; the operator is not invertible or the FSM is not applicable");
        return run;
    }
    if (!run.singular_sizes.empty())
        run.warnings.push_back(std::to_string(run.singular_sizes.size()) + " singular truncation(s) skipped");
    run.converged = tail_deltas_ok >= 2;
    return run;
}

}  // namespace sturmfsm
