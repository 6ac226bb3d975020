#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "parasol/model.hpp"
#include "parasol/report.hpp"

namespace parasol {

namespace detail {

/// Fixed shortest-roundtrip formatting; keeps reruns byte-identical.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot write " + path.string());
    return out;
}

}  // namespace detail

/// Writes steps.csv, the snapshot series and summary.txt into out_dir.
/// Output is byte-identical across reruns of the same configuration.
inline void emit(const RunReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
        throw std::runtime_error("emit: cannot create directory " + dir.string());

    {
        std::ofstream out = detail::open_out(dir / "steps.csv");
        out << "n,t,dt,phi,J,psi_n,F_n,sup_u,sup_v,iters\n";
        const auto row = [&](const StepReport& r) {
            out << r.n << ',' << detail::g17(r.t) << ',' << detail::g17(r.dt) << ','
                << detail::g17(r.phi) << ',' << detail::g17(r.J) << ','
                << detail::g17(r.psi_self) << ',' << detail::g17(r.F_self) << ','
                << detail::g17(r.sup_u) << ',' << detail::g17(r.sup_v) << ','
                << r.iterations << '\n';
        };
        for (const StepReport& r : report.steps) row(r);
        row(report.final_row);
    }

    const ModelParams& params = report.params;
    for (const Snapshot& s : report.snapshots) {
        const bool two_d = report.domain.dimension == 2;
        std::ofstream fu = detail::open_out(dir / ("u_" + std::to_string(s.n) + ".csv"));
        std::ofstream fv = detail::open_out(dir / ("v_" + std::to_string(s.n) + ".csv"));
        fu << (two_d ? "x,y,value,u1\n" : "x,value,u1\n");
        fv << (two_d ? "x,y,value,v1\n" : "x,value,v1\n");
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            fu << detail::g17(report.domain.coordinate(i, 0));
            fv << detail::g17(report.domain.coordinate(i, 0));
            if (two_d) {
                fu << ',' << detail::g17(report.domain.coordinate(i, 1));
                fv << ',' << detail::g17(report.domain.coordinate(i, 1));
            }
            fu << ',' << detail::g17(s.u[i]) << ',' << detail::g17(std::pow(s.u[i], params.m))
               << '\n';
            fv << ',' << detail::g17(s.v[i]) << ',' << detail::g17(std::pow(s.v[i], params.p))
               << '\n';
        }
    }

    {
        std::ofstream out = detail::open_out(dir / "summary.txt");
        out << "outcome=" << to_string(report.outcome) << '\n';
        if (report.outcome == RunOutcome::blew_up && report.t_star) {
            if (report.bounds.discrete)
                out << "T_star=" << detail::g17(*report.t_star)
                    << " <= bound=" << detail::g17(*report.bounds.discrete) << '\n';
            else
                out << "T_star=" << detail::g17(*report.t_star) << '\n';
        }
        out << "t_end=" << detail::g17(report.t_end) << '\n';
        out << "steps=" << report.steps_taken << '\n';
        out << "lambda1=" << detail::g17(report.lambda1) << '\n';
        out << "alpha=" << detail::g17(params.alpha) << '\n';
        out << "m=" << detail::g17(params.m) << '\n';
        out << "p=" << detail::g17(params.p) << '\n';
        out << "J0=" << detail::g17(report.J0) << '\n';
        out << "Phi0=" << detail::g17(report.Phi0) << '\n';
        out << "T1=" << detail::g17(report.bounds.T1) << '\n';
        out << "bound_discrete="
            << (report.bounds.discrete ? detail::g17(*report.bounds.discrete) : "none") << '\n';
        out << "bound_continuous="
            << (report.bounds.continuous ? detail::g17(*report.bounds.continuous) : "none")
            << '\n';
        if (report.theta) {
            out << "theta=" << detail::g17(report.theta->theta) << '\n';
            out << "theta_residual=" << detail::g17(report.theta->residual) << '\n';
        }
        out << "final_sup_u=" << detail::g17(report.final_row.sup_u) << '\n';
        out << "final_sup_v=" << detail::g17(report.final_row.sup_v) << '\n';
        if (report.outcome == RunOutcome::error) out << "error=" << report.error_message << '\n';
    }
}

}  // namespace parasol
