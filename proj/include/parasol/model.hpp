#pragma once

#include <stdexcept>
#include <utility>

#include "parasol/grid.hpp"

namespace parasol {

/// Exponents of the transformed system
///   m u^{m-1} u_t + A u = alpha v,   p v^{p-1} v_t + A v = alpha u,
/// obtained from the original one via u = u1^{nu+1}, v = v1^{mu+1} with
/// m = 1/(nu+1), p = 1/(mu+1).  Standing assumption: 0 < p <= m < 1.
struct ModelParams {
    double m = 0.5;
    double p = 0.5;
    double alpha = 0.0;

    static ModelParams from_mp(double m, double p, double alpha) {
        ModelParams params{m, p, alpha};
        params.validate();
        return params;
    }

    static ModelParams from_nu_mu(double nu, double mu, double alpha) {
        if (!(nu > 0.0) || !(mu > 0.0))
            throw std::invalid_argument("ModelParams: nu and mu must be positive");
        return from_mp(1.0 / (nu + 1.0), 1.0 / (mu + 1.0), alpha);
    }

    double nu() const { return 1.0 / m - 1.0; }
    double mu() const { return 1.0 / p - 1.0; }

    /// The p = m regime of Section "p = m": psi and F lose their n-dependence.
    bool symmetric() const { return m == p; }

    void validate() const {
        if (!(p > 0.0 && p <= m && m < 1.0))
            throw std::invalid_argument("ModelParams: need 0 < p <= m < 1");
        if (!(alpha >= 0.0))
            throw std::invalid_argument("ModelParams: alpha must be nonnegative");
    }
};

/// Inverse transform back to the original unknowns: u1 = u^m, v1 = v^p.
inline std::pair<Field, Field> to_original_variables(const Field& u, const Field& v,
                                                     const ModelParams& params) {
    for (double x : u)
        if (x < 0.0) throw std::invalid_argument("to_original_variables: negative node in u");
    for (double x : v)
        if (x < 0.0) throw std::invalid_argument("to_original_variables: negative node in v");
    return {pow_field(u, params.m), pow_field(v, params.p)};
}

}  // namespace parasol
