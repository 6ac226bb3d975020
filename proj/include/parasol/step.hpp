#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "parasol/errors.hpp"
#include "parasol/grid.hpp"
#include "parasol/model.hpp"
#include "parasol/operator.hpp"

namespace parasol {

/// Solution state at time level t_n.  Fields are strictly positive; the
/// cached sup-norms always equal the recomputed maxima.
struct State {
    Field u;
    Field v;
    double t = 0.0;
    int n = 0;
    double sup_u = 0.0;
    double sup_v = 0.0;
};

inline State make_state(Field u, Field v, double t = 0.0, int n = 0) {
    if (u.size() != v.size())
        throw std::invalid_argument("make_state: u and v must have equal length");
    if (!strictly_positive(u) || !strictly_positive(v))
        throw std::invalid_argument("make_state: solution states must be strictly positive");
    State s;
    s.sup_u = sup_norm(u);
    s.sup_v = sup_norm(v);
    s.u = std::move(u);
    s.v = std::move(v);
    s.t = t;
    s.n = n;
    return s;
}

struct StepOptions {
    double tol_abs = 1e-10;        // inner-iteration sup-norm stop, absolute part
    double tol_rel = 1e-12;        // relative part, scaled by max(C1, C2)
    int max_iterations = 500;
    double linear_tol = 1e-12;     // 2D inner linear solves
    double sigma = 0.5;            // dt safety factor against the solvability bound
    double dt_min = 1e-12;         // dt starvation threshold (blow-up signal)
    double dt_max = 0.1;           // cap for the adaptive dt
    double blowup_threshold = 1e8; // on sup_u + sup_v

    void validate() const {
        if (!(tol_abs > 0.0 && tol_rel > 0.0 && linear_tol > 0.0))
            throw std::invalid_argument("StepOptions: tolerances must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("StepOptions: max_iterations must be positive");
        if (!(sigma > 0.0 && sigma < 1.0))
            throw std::invalid_argument("StepOptions: sigma must lie in (0,1)");
        if (!(dt_min > 0.0 && dt_max > 0.0 && blowup_threshold > 0.0))
            throw std::invalid_argument("StepOptions: thresholds must be positive");
    }
};

/// Solvability condition for one implicit step:
///   ||u_n||^{1-m} ||v_n||^{1-p} < m p / (alpha^2 (1-p)^2 dt^2).
/// Vacuously true for alpha = 0.
inline bool check_step_condition(const State& state, const ModelParams& params, double dt) {
    if (params.alpha == 0.0) return true;
    const double lhs =
        std::pow(state.sup_u, 1.0 - params.m) * std::pow(state.sup_v, 1.0 - params.p);
    const double d = params.alpha * (1.0 - params.p) * dt;
    const double rhs = params.m * params.p / (d * d);
    return lhs < rhs;
}

/// Largest dt the solvability condition allows, shrunk by the safety factor
/// sigma and capped at dt_max.  The condition always holds at the returned
/// value.
inline double max_stable_dt(const State& state, const ModelParams& params,
                            const StepOptions& opts) {
    if (params.alpha == 0.0) return opts.dt_max;
    const double lhs =
        std::pow(state.sup_u, 1.0 - params.m) * std::pow(state.sup_v, 1.0 - params.p);
    const double dt = opts.sigma * std::sqrt(params.m * params.p) /
                      (params.alpha * (1.0 - params.p) * std::sqrt(lhs));
    return std::min(dt, opts.dt_max);
}

/// Constant supersolution (C1, C2) of the step system, built from the root
/// x0 of the scalar function f on the bracket
///   a = (1-p)/p dt alpha ||v_n||^{1-p},  b = m/((1-p) alpha dt) ||u_n||^{m-1},
/// so that both step inequalities hold nodewise with x0 = C2/C1.
struct Supersolution {
    double C1 = 0.0;
    double C2 = 0.0;
    double x0 = 0.0;
    double a = 0.0;
    double b = 0.0;
};

inline Supersolution constant_supersolution(const State& state, const ModelParams& params,
                                            double dt) {
    const double m = params.m, p = params.p, alpha = params.alpha;
    const double lu = state.sup_u, lv = state.sup_v;
    if (alpha == 0.0) {
        // Decoupled case: the previous sup-norms already dominate the step.
        Supersolution s;
        s.C1 = lu;
        s.C2 = lv;
        s.x0 = lv / lu;
        s.a = 0.0;
        s.b = std::numeric_limits<double>::infinity();
        return s;
    }
    const double a = (1.0 - p) / p * dt * alpha * std::pow(lv, 1.0 - p);
    const double b = m / ((1.0 - p) * alpha * dt) * std::pow(lu, m - 1.0);
    if (!(a < b))
        throw StepConditionError("constant_supersolution: bracket a >= b (step condition fails)");

    const double c1 = p / ((1.0 - p) * alpha * dt) * a * std::pow(b, (m - p) / (1.0 - m));
    const double c2 = std::pow(m / ((1.0 - p) * alpha * dt), (1.0 - p) / (1.0 - m));
    const auto f = [&](double x) { return c1 * std::pow(x, p) * (x - b) + c2 * (x - a); };

    double lo = a * (1.0 + 1e-12);
    double hi = b * (1.0 - 1e-12);
    if (!(f(lo) < 0.0) || !(f(hi) > 0.0))
        throw std::logic_error("constant_supersolution: f has the wrong sign at the bracket ends");
    // Keep f(hi) >= 0 so the returned root satisfies the second inequality.
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double x0 = hi;

    Supersolution s;
    s.a = a;
    s.b = b;
    s.x0 = x0;
    s.C1 = lu / std::pow(1.0 - alpha * (1.0 - p) / m * dt * x0 * std::pow(lu, 1.0 - m),
                         1.0 / (1.0 - p));
    s.C2 = lv / std::pow(1.0 - alpha * (1.0 - p) / p * (dt / x0) * std::pow(lv, 1.0 - p),
                         1.0 / (1.0 - p));
    return s;
}

struct StepStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Nodewise residual of the step system
///   (m/(1-p)) u+ u_n^{m-p} (u_n^{p-1} - u+^{p-1}) + dt A u+ - alpha dt v+,
///   (p/(1-p)) v+ (v_n^{p-1} - v+^{p-1}) + dt A v+ - alpha dt u+,
/// returned as the sup over both equations.
inline double scheme_residual(const State& state, double dt, const SpatialOperator& op,
                              const ModelParams& params, const Field& u_next,
                              const Field& v_next) {
    const double m = params.m, p = params.p, alpha = params.alpha;
    const Field au = op.apply(u_next);
    const Field av = op.apply(v_next);
    double res = 0.0;
    for (std::size_t i = 0; i < u_next.size(); ++i) {
        const double ru = m / (1.0 - p) * u_next[i] * std::pow(state.u[i], m - p) *
                              (std::pow(state.u[i], p - 1.0) - std::pow(u_next[i], p - 1.0)) +
                          dt * au[i] - alpha * dt * v_next[i];
        const double rv = p / (1.0 - p) * v_next[i] *
                              (std::pow(state.v[i], p - 1.0) - std::pow(v_next[i], p - 1.0)) +
                          dt * av[i] - alpha * dt * u_next[i];
        res = std::max(res, std::max(std::abs(ru), std::abs(rv)));
    }
    return res;
}

/// One implicit step by monotone (Keller) iteration: starting from the
/// constant supersolution, solve at each inner iteration the two decoupled
/// linear systems
///   (A + m/((1-p)dt) diag(u_n^{m-1})) u_{j+1} = alpha v_j + m/((1-p)dt) u_j^p u_n^{m-p},
///   (A + p/((1-p)dt) diag(v_n^{p-1})) v_{j+1} = alpha u_j + p/((1-p)dt) v_j^p.
/// The iterates decrease nodewise to the unique positive solution.  Stops
/// when the sup-norm change drops below tol_abs + tol_rel max(C1,C2) and the
/// scheme residual is below ten times that tolerance.
inline std::pair<State, StepStats> monotone_step(const State& state, double dt,
                                                 const SpatialOperator& op,
                                                 const ModelParams& params,
                                                 const StepOptions& opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("monotone_step: dt must be positive");
    if (!check_step_condition(state, params, dt))
        throw StepConditionError("monotone_step: solvability condition fails at dt=" +
                                 std::to_string(dt));
    const double m = params.m, p = params.p, alpha = params.alpha;
    const std::size_t n = state.u.size();
    const Supersolution ss = constant_supersolution(state, params, dt);

    const double cu = m / ((1.0 - p) * dt);
    const double cv = p / ((1.0 - p) * dt);
    const Field un_m1 = pow_field(state.u, m - 1.0);
    const Field un_mp = pow_field(state.u, m - p);
    const Field vn_p1 = pow_field(state.v, p - 1.0);
    Field shift_u(n), shift_v(n);
    for (std::size_t i = 0; i < n; ++i) {
        shift_u[i] = cu * un_m1[i];
        shift_v[i] = cv * vn_p1[i];
    }

    Field u(n, ss.C1), v(n, ss.C2);
    const double tol = opts.tol_abs + opts.tol_rel * std::max(ss.C1, ss.C2);
    const bool decoupled = alpha == 0.0;
    bool u_frozen = false, v_frozen = false;
    double du = std::numeric_limits<double>::infinity();
    double dv = du;
    Field rhs(n);

    for (int j = 1; j <= opts.max_iterations; ++j) {
        Field u_new = u, v_new = v;
        if (!u_frozen) {
            for (std::size_t i = 0; i < n; ++i)
                rhs[i] = alpha * v[i] + cu * un_mp[i] * std::pow(u[i], p);
            u_new = op.solve_shifted(shift_u, rhs, opts.linear_tol);
            const double mono = 1e-13 * std::max(1.0, sup_norm(u));
            for (std::size_t i = 0; i < n; ++i) {
                if (u_new[i] > u[i] + mono)
                    throw MonotonicityError("monotone_step: u iterate increased");
                if (!(u_new[i] > 0.0))
                    throw MonotonicityError("monotone_step: u iterate lost positivity");
            }
            du = sup_diff(u_new, u);
        }
        if (!v_frozen) {
            for (std::size_t i = 0; i < n; ++i)
                rhs[i] = alpha * u[i] + cv * std::pow(v[i], p);
            v_new = op.solve_shifted(shift_v, rhs, opts.linear_tol);
            const double mono = 1e-13 * std::max(1.0, sup_norm(v));
            for (std::size_t i = 0; i < n; ++i) {
                if (v_new[i] > v[i] + mono)
                    throw MonotonicityError("monotone_step: v iterate increased");
                if (!(v_new[i] > 0.0))
                    throw MonotonicityError("monotone_step: v iterate lost positivity");
            }
            dv = sup_diff(v_new, v);
        }
        u = std::move(u_new);
        v = std::move(v_new);

        if (decoupled) {
            // The two equations never talk to each other; freeze each one as
            // soon as it has converged so the other cannot perturb it.
            if (!u_frozen && du <= tol) u_frozen = true;
            if (!v_frozen && dv <= tol) v_frozen = true;
            if (!(u_frozen && v_frozen)) continue;
        } else if (std::max(du, dv) > tol) {
            continue;
        }
        const double res = scheme_residual(state, dt, op, params, u, v);
        if (res <= 10.0 * tol)
            return {make_state(std::move(u), std::move(v), state.t + dt, state.n + 1),
                    StepStats{j, res}};
        if (decoupled) u_frozen = v_frozen = false;
    }
    throw ConvergenceError("monotone_step: iteration budget exhausted", opts.max_iterations,
                           scheme_residual(state, dt, op, params, u, v));
}

/// Guaranteed existence horizon
///   T1 = min(m/(alpha(1-p)) lambda0^{m-1}, p/(alpha(1-p)) lambda0^{p-1}),
/// lambda0 = max(||u0||, ||v0||), together with the majorant ladder
/// phi(t) = lambda0 / (1 - t phi0)^{1/(1-p)}.
struct ExistenceHorizon {
    double lambda0 = 0.0;
    double phi0 = 0.0;
    double T1 = std::numeric_limits<double>::infinity();

    double majorant(double t) const {
        if (phi0 == 0.0) return lambda0;
        const double g = 1.0 - t * phi0;
        if (!(g > 0.0)) return std::numeric_limits<double>::infinity();
        return lambda0 / std::pow(g, 1.0 / (1.0 - p_));
    }

    double p_ = 0.5;  // exponent used by the ladder
};

inline ExistenceHorizon existence_horizon(const Field& u0, const Field& v0,
                                          const ModelParams& params) {
    if (!strictly_positive(u0) || !strictly_positive(v0))
        throw std::invalid_argument("existence_horizon: fields must be positive");
    ExistenceHorizon h;
    h.p_ = params.p;
    h.lambda0 = std::max(sup_norm(u0), sup_norm(v0));
    if (params.alpha == 0.0) {
        h.phi0 = 0.0;
        h.T1 = std::numeric_limits<double>::infinity();
        return h;
    }
    const double m = params.m, p = params.p, alpha = params.alpha;
    const double lm = std::pow(h.lambda0, m - 1.0);
    const double lp = std::pow(h.lambda0, p - 1.0);
    h.T1 = std::min(m / (alpha * (1.0 - p)) * lm, p / (alpha * (1.0 - p)) * lp);
    h.phi0 = std::max(alpha * (1.0 - p) / m * lm, alpha * (1.0 - p) / p * lp);
    return h;
}

/// Blow-up declaration: the sup-norm sum crossed the threshold, or the
/// solvability constraint has starved the step size below dt_min.
inline bool detect_blowup(const State& state, const StepOptions& opts, double dt_proposed) {
    return state.sup_u + state.sup_v >= opts.blowup_threshold || dt_proposed < opts.dt_min;
}

}  // namespace parasol
