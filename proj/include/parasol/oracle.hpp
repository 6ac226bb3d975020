#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "parasol/errors.hpp"
#include "parasol/grid.hpp"
#include "parasol/model.hpp"
#include "parasol/operator.hpp"
#include "parasol/run.hpp"
#include "parasol/step.hpp"

namespace parasol {

struct OracleConfig {
    double newton_tol = 1e-12;        // on the dt-scaled scheme residual
    int max_newton_iterations = 60;
    int max_damping_halvings = 40;
    double damping_factor = 0.5;
};

namespace detail {

/// Dense Gaussian elimination with partial pivoting; solves in place.
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b,
                                       std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double c = std::abs(a[r * n + k]);
            if (c > best) {
                best = c;
                piv = r;
            }
        }
        if (best == 0.0)
            throw ConvergenceError("dense_solve: singular Jacobian", static_cast<int>(k), 0.0);
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
            std::swap(b[k], b[piv]);
        }
        const double d = a[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r * n + k] / d;
            if (f == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
            b[r] -= f * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
        b[i] = s / a[i * n + i];
    }
    return b;
}

}  // namespace detail

/// Independent reference solver for one implicit step: damped Newton with
/// the analytic Jacobian on the residual of the step system, started at the
/// constant supersolution.  Validates the uniqueness of the positive
/// solution against monotone_step; shares no code with the production path
/// beyond the operator action.
inline std::pair<Field, Field> newton_step_oracle(const State& state, double dt,
                                                  const SpatialOperator& op,
                                                  const ModelParams& params,
                                                  const OracleConfig& cfg = {}) {
    if (!check_step_condition(state, params, dt))
        throw StepConditionError("newton_step_oracle: solvability condition fails");
    const double m = params.m, p = params.p, alpha = params.alpha;
    const std::size_t n = state.u.size();
    const double cu = m / ((1.0 - p) * dt);
    const double cv = p / ((1.0 - p) * dt);
    const Field un_m1 = pow_field(state.u, m - 1.0);
    const Field un_mp = pow_field(state.u, m - p);
    const Field vn_p1 = pow_field(state.v, p - 1.0);

    // Residual of the dt-divided system at (u, v), unknowns stacked [u; v].
    const auto residual = [&](const std::vector<double>& x) {
        Field u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        Field v(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
        const Field au = op.apply(u);
        const Field av = op.apply(v);
        std::vector<double> g(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = au[i] + cu * un_m1[i] * u[i] - alpha * v[i] -
                   cu * un_mp[i] * std::pow(u[i], p);
            g[n + i] = av[i] + cv * vn_p1[i] * v[i] - alpha * u[i] - cv * std::pow(v[i], p);
        }
        return g;
    };
    const auto sup = [](const std::vector<double>& g) {
        double s = 0.0;
        for (double v : g) s = std::max(s, std::abs(v));
        return s;
    };

    // Dense image of A_h, built once per call; desk-scale grids only.
    std::vector<double> a_dense(n * n);
    {
        Field e(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            e[c] = 1.0;
            const Field col = op.apply(e);
            for (std::size_t r = 0; r < n; ++r) a_dense[r * n + c] = col[r];
            e[c] = 0.0;
        }
    }

    const Supersolution ss = constant_supersolution(state, params, dt);
    std::vector<double> x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = ss.C1;
        x[n + i] = ss.C2;
    }
    std::vector<double> g = residual(x);
    double gn = sup(g);

    for (int it = 1; it <= cfg.max_newton_iterations; ++it) {
        // Convergence on the dt-scaled residual, matching scheme_residual.
        {
            Field u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
            Field v(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
            const double scaled = dt * gn;
            const double scale = std::max(1.0, std::max(sup_norm(u), sup_norm(v)));
            if (scaled <= cfg.newton_tol * scale) return {std::move(u), std::move(v)};
        }

        std::vector<double> jac(4 * n * n, 0.0);
        const std::size_t dim = 2 * n;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                jac[r * dim + c] = a_dense[r * n + c];
                jac[(n + r) * dim + (n + c)] = a_dense[r * n + c];
            }
            jac[r * dim + r] += cu * un_m1[r] - cu * un_mp[r] * p * std::pow(x[r], p - 1.0);
            jac[r * dim + (n + r)] -= alpha;
            jac[(n + r) * dim + (n + r)] += cv * vn_p1[r] - cv * p * std::pow(x[n + r], p - 1.0);
            jac[(n + r) * dim + r] -= alpha;
        }
        std::vector<double> rhs(dim);
        for (std::size_t i = 0; i < dim; ++i) rhs[i] = -g[i];
        const std::vector<double> delta = detail::dense_solve(std::move(jac), std::move(rhs), dim);

        double s = 1.0;
        bool accepted = false;
        for (int h = 0; h <= cfg.max_damping_halvings; ++h) {
            std::vector<double> cand(dim);
            bool positive = true;
            for (std::size_t i = 0; i < dim; ++i) {
                cand[i] = x[i] + s * delta[i];
                positive = positive && cand[i] > 0.0;
            }
            if (positive) {
                std::vector<double> gc = residual(cand);
                const double gcn = sup(gc);
                if (std::isfinite(gcn) && gcn <= (1.0 - 1e-4 * s) * gn) {
                    x = std::move(cand);
                    g = std::move(gc);
                    gn = gcn;
                    accepted = true;
                    break;
                }
            }
            s *= cfg.damping_factor;
        }
        if (!accepted)
            throw ConvergenceError("newton_step_oracle: line search stalled", it, dt * gn);
    }
    throw ConvergenceError("newton_step_oracle: iteration budget exhausted",
                           cfg.max_newton_iterations, dt * gn);
}

/// Smallest C0 >= 0 with
///   A u0 - alpha v0 + C0 u0^m >= 0  and  A v0 - alpha u0 + C0 v0^m >= 0
/// nodewise, and the induced envelope horizon T2 = m/((1-m) C0)
/// (infinite when C0 = 0, in which case the solution decays monotonically).
struct SlopeCondition {
    double C0 = 0.0;
    double T2 = std::numeric_limits<double>::infinity();
};

inline SlopeCondition check_initial_slope_condition(const Field& u0, const Field& v0,
                                                    double alpha, const SpatialOperator& op,
                                                    const ModelParams& params) {
    if (!strictly_positive(u0) || !strictly_positive(v0))
        throw std::invalid_argument("check_initial_slope_condition: fields must be positive");
    const Field au = op.apply(u0);
    const Field av = op.apply(v0);
    double c0 = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        c0 = std::max(c0, (alpha * v0[i] - au[i]) / std::pow(u0[i], params.m));
        c0 = std::max(c0, (alpha * u0[i] - av[i]) / std::pow(v0[i], params.m));
    }
    SlopeCondition s;
    s.C0 = c0;
    if (c0 > 0.0) s.T2 = params.m / ((1.0 - params.m) * c0);
    return s;
}

struct SelfConvergenceResult {
    std::vector<double> dts;
    std::vector<double> errors;        // sup difference at T between levels
    std::optional<double> order;       // log2 of the finest error ratio
};

/// Self-convergence harness: runs fixed-dt trajectories to a common time T
/// and measures successive sup-norm differences of the final states.  The
/// scheme carries no proven rate, so this is a consistency check only.
inline SelfConvergenceResult self_convergence(const SpatialOperator& op,
                                              const ModelParams& params, const Field& u0,
                                              const Field& v0, double T,
                                              const std::vector<double>& dts,
                                              const StepOptions& opts = {}) {
    if (dts.size() < 2)
        throw std::invalid_argument("self_convergence: need at least two refinement levels");
    if (!(T > 0.0)) throw std::invalid_argument("self_convergence: T must be positive");

    std::vector<std::pair<Field, Field>> finals;
    for (double dt : dts) {
        RunControl ctl;
        ctl.T = T;
        ctl.adaptive = false;
        ctl.fixed_dt = dt;
        ctl.options = opts;
        const RunReport rep = run(op, params, u0, v0, ctl);
        if (rep.outcome != RunOutcome::reached_t)
            throw ConvergenceError("self_convergence: level dt=" + std::to_string(dt) +
                                       " failed to reach T (" + to_string(rep.outcome) + ")",
                                   rep.steps_taken, 0.0);
        finals.emplace_back(rep.u_final, rep.v_final);
    }

    SelfConvergenceResult res;
    res.dts = dts;
    for (std::size_t i = 0; i + 1 < finals.size(); ++i)
        res.errors.push_back(std::max(sup_diff(finals[i].first, finals[i + 1].first),
                                      sup_diff(finals[i].second, finals[i + 1].second)));
    if (res.errors.size() >= 2) {
        const double e1 = res.errors[res.errors.size() - 2];
        const double e2 = res.errors[res.errors.size() - 1];
        if (e1 > 0.0 && e2 > 0.0) res.order = std::log2(e1 / e2);
    }
    return res;
}

}  // namespace parasol
