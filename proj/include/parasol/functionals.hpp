#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include "parasol/grid.hpp"
#include "parasol/model.hpp"
#include "parasol/operator.hpp"
#include "parasol/report.hpp"
#include "parasol/step.hpp"

namespace parasol {

/// Phi(u, v) = integral of m/(m+1) u^{m+1} + p/(p+1) v^{p+1}.
inline double phi(const Field& u, const Field& v, const ModelParams& params,
                  const SpatialOperator& op) {
    const double m = params.m, p = params.p;
    Field g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        g[i] = m / (m + 1.0) * std::pow(u[i], m + 1.0) + p / (p + 1.0) * std::pow(v[i], p + 1.0);
    return op.quadrature(g);
}

/// Z = Phi^{(m-1)/(m+1)}; decreasing in Phi since the exponent is negative.
inline double z_value(const Field& u, const Field& v, const ModelParams& params,
                      const SpatialOperator& op) {
    const double f = phi(u, v, params, op);
    if (!(f > 0.0)) throw std::invalid_argument("z_value: Phi must be positive");
    return std::pow(f, (params.m - 1.0) / (params.m + 1.0));
}

/// J(u, v) = integral of |grad u|^2 + |grad v|^2 - 2 alpha u v.
inline double j_energy(const Field& u, const Field& v, double alpha,
                       const SpatialOperator& op) {
    return op.dirichlet_energy(u) + op.dirichlet_energy(v) - 2.0 * alpha * op.inner(u, v);
}

/// psi_n(u, v) = (integral of m u_ref^{m-p} u^{p+1} + p v^{p+1})^{1/(p+1)},
/// with u_ref = u_n.  For p = m the reference drops out.
inline double psi_n(const Field& u_ref, const Field& u, const Field& v,
                    const ModelParams& params, const SpatialOperator& op) {
    const double m = params.m, p = params.p;
    Field g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        g[i] = m * std::pow(u_ref[i], m - p) * std::pow(u[i], p + 1.0) +
               p * std::pow(v[i], p + 1.0);
    return std::pow(op.quadrature(g), 1.0 / (p + 1.0));
}

/// Rayleigh-type quotient F_n(u, v) = J(u, v) / psi_n(u, v)^2.
inline double f_rayleigh(const Field& u_ref, const Field& u, const Field& v,
                         const ModelParams& params, const SpatialOperator& op) {
    const double psi = psi_n(u_ref, u, v, params, op);
    if (!(psi > 0.0)) throw std::invalid_argument("f_rayleigh: psi must be positive");
    return j_energy(u, v, params.alpha, op) / (psi * psi);
}

/// mu_n = (m/(m+1)) integral of u^{m+1}; satisfies mu_n <= Phi_n.
inline double mu_weighted(const Field& u, const ModelParams& params,
                          const SpatialOperator& op) {
    Field g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        g[i] = params.m / (params.m + 1.0) * std::pow(u[i], params.m + 1.0);
    return op.quadrature(g);
}

/// Blow-up time bound for the scheme when J(u0, v0) < 0:
///   T* < (1+m)/(1-p) Phi_0 / (-J(u0, v0)).
/// Returns nothing when the hypothesis J0 < 0 fails.
inline std::optional<double> blowup_upper_bound(const Field& u0, const Field& v0,
                                                const ModelParams& params,
                                                const SpatialOperator& op) {
    const double j0 = j_energy(u0, v0, params.alpha, op);
    if (!(j0 < 0.0)) return std::nullopt;
    return (1.0 + params.m) / (1.0 - params.p) * phi(u0, v0, params, op) / (-j0);
}

/// Continuous-theory analogue with exponent 1-m in the denominator factor;
/// identical to the discrete bound when p = m.
inline std::optional<double> continuous_blowup_bound(const Field& u0, const Field& v0,
                                                     const ModelParams& params,
                                                     const SpatialOperator& op) {
    const double j0 = j_energy(u0, v0, params.alpha, op);
    if (!(j0 < 0.0)) return std::nullopt;
    return (1.0 + params.m) / (1.0 - params.m) * phi(u0, v0, params, op) / (-j0);
}

/// Growth envelope of a blown-up p = m run:
///   Phi_n^{1/(m+1)} <= (T*/(T* - t_n))^{1/(1-m)} Phi_0^{1/(m+1)}
/// at every recorded step (relative tolerance 1e-8).  Rows at t >= T* are
/// trivially satisfied and skipped.
inline bool growth_envelope_check(const std::vector<StepReport>& rows, double t_star,
                                  const ModelParams& params) {
    if (!params.symmetric())
        throw std::invalid_argument("growth_envelope_check: requires p = m");
    if (rows.empty()) return true;
    const double m = params.m;
    const double phi0_root = std::pow(rows.front().phi, 1.0 / (m + 1.0));
    for (const StepReport& r : rows) {
        if (r.t >= t_star * (1.0 - 1e-14)) continue;
        const double lhs = std::pow(r.phi, 1.0 / (m + 1.0));
        const double rhs = std::pow(t_star / (t_star - r.t), 1.0 / (1.0 - m)) * phi0_root;
        if (lhs > rhs * (1.0 + 1e-8)) return false;
    }
    return true;
}

/// Positive root of
///   integral of theta^m rho1^{m+1} + theta^p rho1^{p+1}
///     = integral of (u0^m + v0^p) rho1,
/// the limit amplitude of the critical regime alpha = lambda1.  The left
/// side is strictly increasing in theta, so bisection applies.
inline ThetaEstimate theta_limit(const Field& u0, const Field& v0, const ModelParams& params,
                                 const SpatialOperator& op) {
    const double m = params.m, p = params.p;
    const Field& rho = op.rho1();
    const double im = op.quadrature(pow_field(rho, m + 1.0));
    const double ip = op.quadrature(pow_field(rho, p + 1.0));
    Field g(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i)
        g[i] = (std::pow(u0[i], m) + std::pow(v0[i], p)) * rho[i];
    const double rhs = op.quadrature(g);
    if (!(rhs > 0.0)) throw std::invalid_argument("theta_limit: right side must be positive");

    const auto lhs = [&](double th) { return std::pow(th, m) * im + std::pow(th, p) * ip; };
    double lo = 0.0, hi = 1.0;
    while (lhs(hi) < rhs) hi *= 2.0;
    // Shrink until both ends meet the residual target, then keep the lower
    // end: for p = m this makes theta^m <= bound hold with equality up to
    // the residual, never above.
    for (int it = 0; it < 500 && lhs(hi) - lhs(lo) > 1e-10 * rhs; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) < rhs)
            lo = mid;
        else
            hi = mid;
    }
    const double theta = lo;

    ThetaEstimate est;
    est.theta = theta;
    est.residual = std::abs(lhs(theta) - rhs);
    if (params.symmetric()) {
        Field gm(u0.size());
        for (std::size_t i = 0; i < u0.size(); ++i)
            gm[i] = (std::pow(u0[i], m) + std::pow(v0[i], m)) * rho[i];
        est.power_m_bound = op.quadrature(gm) / (2.0 * im);
    }
    return est;
}

/// Time interpolant of the p = m convergence section:
///   u(t) = (u_n^m + (t - t_n)/dt (u_{n+1}^m - u_n^m))^{1/m}, same for v.
/// Endpoints reproduce the states exactly.
inline std::pair<Field, Field> interpolant(const State& sn, const State& sn1, double t,
                                           const ModelParams& params) {
    if (!params.symmetric()) throw std::invalid_argument("interpolant: requires p = m");
    if (!(t >= sn.t && t <= sn1.t))
        throw std::invalid_argument("interpolant: t outside [t_n, t_{n+1}]");
    if (t == sn.t) return {sn.u, sn.v};
    if (t == sn1.t) return {sn1.u, sn1.v};
    const double m = params.m;
    const double w = (t - sn.t) / (sn1.t - sn.t);
    Field u(sn.u.size()), v(sn.v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double um = std::pow(sn.u[i], m);
        const double vm = std::pow(sn.v[i], m);
        u[i] = std::pow(um + w * (std::pow(sn1.u[i], m) - um), 1.0 / m);
        v[i] = std::pow(vm + w * (std::pow(sn1.v[i], m) - vm), 1.0 / m);
    }
    return {std::move(u), std::move(v)};
}

}  // namespace parasol
