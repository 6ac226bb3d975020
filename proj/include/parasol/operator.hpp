#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "parasol/errors.hpp"
#include "parasol/grid.hpp"

namespace parasol {

struct EigenPair {
    double lambda = 0.0;
    Field rho;
    int iterations = 0;
};

/// Discrete Dirichlet Laplacian A_h on a uniform box grid, second-order
/// centered differences with boundary elimination, plus the mass-lumped
/// quadrature and the cached principal eigenpair (lambda1, rho1) with
/// quadrature(rho1) = 1.
///
/// A_h is a symmetric M-matrix (positive diagonal, nonpositive off-diagonal,
/// weakly diagonally dominant), so the discrete maximum principle holds and
/// the monotone step iteration is well posed.  Instances are immutable after
/// construction and safe to share across threads.
class SpatialOperator {
public:
    explicit SpatialOperator(const DomainSpec& spec, double eigen_tol = 1e-12)
        : spec_(spec) {
        spec_.validate();
        hx_ = spec_.mesh_width(0);
        hy_ = spec_.dimension == 2 ? spec_.mesh_width(1) : 1.0;
        weight_ = spec_.dimension == 2 ? hx_ * hy_ : hx_;
        const EigenPair e = principal_eigenpair(eigen_tol);
        lambda1_ = e.lambda;
        rho1_ = e.rho;
    }

    const DomainSpec& domain() const { return spec_; }
    std::size_t size() const { return spec_.node_count(); }

    /// Mass-lumped quadrature weight per node (h in 1D, hx*hy in 2D).
    double weight() const { return weight_; }

    double lambda1() const { return lambda1_; }
    const Field& rho1() const { return rho1_; }

    /// Matrix action A_h f.  1D stencil (1/h^2)(-f_{i-1} + 2 f_i - f_{i+1}),
    /// 5-point analogue in 2D; boundary values are zero.
    Field apply(const Field& f) const {
        check_size(f);
        Field out(f.size());
        if (spec_.dimension == 1) {
            const std::size_t n = f.size();
            const double ih2 = 1.0 / (hx_ * hx_);
            for (std::size_t i = 0; i < n; ++i) {
                const double left = i > 0 ? f[i - 1] : 0.0;
                const double right = i + 1 < n ? f[i + 1] : 0.0;
                out[i] = ih2 * (2.0 * f[i] - left - right);
            }
        } else {
            const std::size_t nx = static_cast<std::size_t>(spec_.points[0]);
            const std::size_t ny = static_cast<std::size_t>(spec_.points[1]);
            const double ihx2 = 1.0 / (hx_ * hx_);
            const double ihy2 = 1.0 / (hy_ * hy_);
            for (std::size_t j = 0; j < ny; ++j) {
                for (std::size_t i = 0; i < nx; ++i) {
                    const std::size_t k = i + j * nx;
                    const double w = i > 0 ? f[k - 1] : 0.0;
                    const double e = i + 1 < nx ? f[k + 1] : 0.0;
                    const double s = j > 0 ? f[k - nx] : 0.0;
                    const double n = j + 1 < ny ? f[k + nx] : 0.0;
                    out[k] = (2.0 * ihx2 + 2.0 * ihy2) * f[k] - ihx2 * (w + e) - ihy2 * (s + n);
                }
            }
        }
        return out;
    }

    /// Sum_i w_i f_i; realizes every integral over Omega.
    double quadrature(const Field& f) const {
        check_size(f);
        double s = 0.0;
        for (double x : f) s += x;
        return weight_ * s;
    }

    /// Quadrature inner product <f, g>.
    double inner(const Field& f, const Field& g) const {
        check_size(f);
        check_size(g);
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
        return weight_ * s;
    }

    /// <A_h f, f> under the quadrature inner product: the discrete
    /// Dirichlet energy (equals the sum of squared difference quotients).
    double dirichlet_energy(const Field& f) const {
        return inner(apply(f), f);
    }

    /// Solves (A_h + diag(shift)) x = rhs.  Exact tridiagonal elimination in
    /// 1D, conjugate gradients to residual `tol` in 2D.  An empty shift means
    /// zero shift; otherwise all shift entries must be nonnegative.
    Field solve_shifted(const Field& shift, const Field& rhs, double tol) const {
        check_size(rhs);
        if (!shift.empty()) check_size(shift);
        if (spec_.dimension == 1) return solve_tridiagonal(shift, rhs);
        return solve_cg(shift, rhs, tol);
    }

    /// Smallest eigenvalue and positive, L1-normalized eigenvector of A_h by
    /// inverse power iteration from the all-ones start vector.
    EigenPair principal_eigenpair(double tol) const {
        if (!(tol > 0.0)) throw std::invalid_argument("principal_eigenpair: tol must be positive");
        const std::size_t n = size();
        Field x(n, 1.0);
        double lambda = 0.0;
        double lambda_prev = std::numeric_limits<double>::infinity();
        const int max_iterations = 100000;
        const Field no_shift;
        for (int it = 1; it <= max_iterations; ++it) {
            Field y = solve_shifted(no_shift, x, tol * 1e-3);
            // Rayleigh quotient; A y = x holds exactly in 1D, to solver tol in 2D.
            double yy = 0.0, yx = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                yy += y[i] * y[i];
                yx += y[i] * x[i];
            }
            lambda = yx / yy;
            const double yn = std::sqrt(yy);
            for (std::size_t i = 0; i < n; ++i) y[i] /= yn;
            const Field ay = apply(y);
            double res = 0.0, ymax = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                res = std::max(res, std::abs(ay[i] - lambda * y[i]));
                ymax = std::max(ymax, std::abs(y[i]));
            }
            x = std::move(y);
            if (res <= 0.5 * tol * lambda * ymax &&
                std::abs(lambda - lambda_prev) <= 0.1 * tol * lambda) {
                // Positive orientation, then quadrature normalization.
                double sum = 0.0;
                for (double v : x) sum += v;
                if (sum < 0.0)
                    for (double& v : x) v = -v;
                const double q = quadrature(x);
                for (double& v : x) v /= q;
                return EigenPair{lambda, std::move(x), it};
            }
            lambda_prev = lambda;
        }
        throw ConvergenceError("principal_eigenpair: inverse power iteration did not converge",
                               max_iterations, std::abs(lambda - lambda_prev));
    }

private:
    void check_size(const Field& f) const {
        if (f.size() != size())
            throw std::invalid_argument("Field size does not match the operator's grid");
    }

    Field solve_tridiagonal(const Field& shift, const Field& rhs) const {
        const std::size_t n = rhs.size();
        const double ih2 = 1.0 / (hx_ * hx_);
        const double off = -ih2;
        Field c(n, 0.0), x(n, 0.0);
        double diag0 = 2.0 * ih2 + (shift.empty() ? 0.0 : shift[0]);
        c[0] = off / diag0;
        x[0] = rhs[0] / diag0;
        for (std::size_t i = 1; i < n; ++i) {
            const double diag = 2.0 * ih2 + (shift.empty() ? 0.0 : shift[i]);
            const double denom = diag - off * c[i - 1];
            c[i] = off / denom;
            x[i] = (rhs[i] - off * x[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
        return x;
    }

    Field solve_cg(const Field& shift, const Field& rhs, double tol) const {
        const std::size_t n = rhs.size();
        const double btol = tol * (1.0 + sup_norm(rhs));
        Field x(n, 0.0), r = rhs, p = rhs;
        double rr = 0.0;
        for (double v : r) rr += v * v;
        const int max_iterations = static_cast<int>(10 * n) + 100;
        for (int it = 0; it < max_iterations; ++it) {
            if (sup_norm(r) <= btol) return x;
            Field ap = apply(p);
            if (!shift.empty())
                for (std::size_t i = 0; i < n; ++i) ap[i] += shift[i] * p[i];
            double pap = 0.0;
            for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
            const double a = rr / pap;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += a * p[i];
                r[i] -= a * ap[i];
            }
            double rr_new = 0.0;
            for (double v : r) rr_new += v * v;
            const double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        }
        throw ConvergenceError("solve_shifted: conjugate gradients did not converge",
                               max_iterations, sup_norm(r));
    }

    DomainSpec spec_;
    double hx_ = 0.0, hy_ = 0.0, weight_ = 0.0;
    double lambda1_ = 0.0;
    Field rho1_;
};

inline SpatialOperator build_operator(const DomainSpec& spec, double eigen_tol = 1e-12) {
    return SpatialOperator(spec, eigen_tol);
}

}  // namespace parasol
