#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "parasol/functionals.hpp"
#include "parasol/report.hpp"
#include "parasol/step.hpp"

namespace parasol {

struct RunControl {
    double T = 1.0;             // time horizon
    bool adaptive = true;       // false: fixed dt
    double fixed_dt = 0.0;
    int snapshot_every = 0;     // 0 = initial and final snapshots only
    double decay_floor = 0.0;   // 0 = decay detection off
    StepOptions options{};

    void validate() const {
        if (!(T >= 0.0)) throw std::invalid_argument("RunControl: T must be nonnegative");
        if (!adaptive && !(fixed_dt > 0.0))
            throw std::invalid_argument("RunControl: fixed mode needs a positive dt");
        if (snapshot_every < 0)
            throw std::invalid_argument("RunControl: snapshot cadence must be nonnegative");
        options.validate();
    }
};

namespace detail {

inline StepReport state_row(const State& s, const ModelParams& params,
                            const SpatialOperator& op) {
    StepReport r;
    r.n = s.n;
    r.t = s.t;
    r.dt = 0.0;
    r.phi = phi(s.u, s.v, params, op);
    r.J = j_energy(s.u, s.v, params.alpha, op);
    r.psi_self = psi_n(s.u, s.u, s.v, params, op);
    r.F_self = r.J / (r.psi_self * r.psi_self);
    r.psi_next = r.psi_self;
    r.F_next = r.F_self;
    r.sup_u = s.sup_u;
    r.sup_v = s.sup_v;
    r.iterations = 0;
    r.mu = mu_weighted(s.u, params, op);
    return r;
}

}  // namespace detail

/// Advances (u0, v0) with dt = max_stable_dt each step (or a fixed dt),
/// recording per-step diagnostics, until the horizon T is reached, blow-up
/// is detected, or the sup-norms fall below the decay floor.  Results are
/// deterministic for a fixed configuration.
inline RunReport run(const SpatialOperator& op, const ModelParams& params, const Field& u0,
                     const Field& v0, const RunControl& ctl) {
    ctl.validate();
    params.validate();

    RunReport report;
    report.domain = op.domain();
    report.params = params;
    report.lambda1 = op.lambda1();
    report.J0 = j_energy(u0, v0, params.alpha, op);
    report.Phi0 = phi(u0, v0, params, op);
    const ExistenceHorizon horizon = existence_horizon(u0, v0, params);
    report.bounds.T1 = horizon.T1;
    report.bounds.discrete = blowup_upper_bound(u0, v0, params, op);
    report.bounds.continuous = continuous_blowup_bound(u0, v0, params, op);
    if (std::abs(params.alpha - op.lambda1()) <= 1e-12 * std::max(1.0, op.lambda1()))
        report.theta = theta_limit(u0, v0, params, op);

    State state = make_state(u0, v0);
    report.snapshots.push_back(Snapshot{state.n, state.t, state.u, state.v});

    while (true) {
        if (ctl.decay_floor > 0.0 && std::max(state.sup_u, state.sup_v) < ctl.decay_floor) {
            report.outcome = RunOutcome::decayed;
            break;
        }
        if (state.t >= ctl.T * (1.0 - 1e-14)) {
            report.outcome = RunOutcome::reached_t;
            break;
        }
        const double dt_proposed =
            ctl.adaptive ? max_stable_dt(state, params, ctl.options) : ctl.fixed_dt;
        if (detect_blowup(state, ctl.options, dt_proposed)) {
            report.outcome = RunOutcome::blew_up;
            report.t_star = state.t;
            report.bounds.observed = state.t;
            break;
        }
        const double dt = std::min(dt_proposed, ctl.T - state.t);
        if (!ctl.adaptive && !check_step_condition(state, params, dt)) {
            report.outcome = RunOutcome::error;
            report.error_message = "fixed dt violates the step condition at step " +
                                   std::to_string(state.n) + ", t=" + std::to_string(state.t);
            break;
        }

        StepReport row = detail::state_row(state, params, op);
        row.dt = dt;
        try {
            auto [next, stats] = monotone_step(state, dt, op, params, ctl.options);
            row.iterations = stats.iterations;
            row.psi_next = psi_n(state.u, next.u, next.v, params, op);
            row.F_next = j_energy(next.u, next.v, params.alpha, op) / (row.psi_next * row.psi_next);
            state = std::move(next);
        } catch (const std::exception& e) {
            report.outcome = RunOutcome::error;
            report.error_message = std::string(e.what()) + " (step " + std::to_string(state.n) +
                                   ", t=" + std::to_string(state.t) + ")";
            break;
        }
        report.steps.push_back(row);
        if (ctl.snapshot_every > 0 && state.n % ctl.snapshot_every == 0)
            report.snapshots.push_back(Snapshot{state.n, state.t, state.u, state.v});
    }

    report.t_end = state.t;
    report.steps_taken = static_cast<int>(report.steps.size());
    report.final_row = detail::state_row(state, params, op);
    report.u_final = state.u;
    report.v_final = state.v;
    if (report.snapshots.back().n != state.n)
        report.snapshots.push_back(Snapshot{state.n, state.t, state.u, state.v});
    return report;
}

}  // namespace parasol
