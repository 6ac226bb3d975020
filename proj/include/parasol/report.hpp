#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parasol/grid.hpp"
#include "parasol/model.hpp"

namespace parasol {

/// Per-step diagnostics record.  Quantities with the _self suffix are taken
/// at (u_n, v_n), those with _next at (u_{n+1}, v_{n+1}), both with the
/// reference field u_n inside psi_n and F_n.
struct StepReport {
    int n = 0;
    double t = 0.0;
    double dt = 0.0;
    double phi = 0.0;       // Phi_n
    double J = 0.0;         // J(u_n, v_n)
    double psi_self = 0.0;  // psi_n(u_n, v_n)
    double psi_next = 0.0;  // psi_n(u_{n+1}, v_{n+1})
    double F_self = 0.0;    // F_n(u_n, v_n)
    double F_next = 0.0;    // F_n(u_{n+1}, v_{n+1})
    double sup_u = 0.0;
    double sup_v = 0.0;
    int iterations = 0;
    double mu = 0.0;        // (m/(m+1)) integral of u_n^{m+1}; mu <= phi
};

enum class RunOutcome { reached_t, blew_up, decayed, error };

inline std::string to_string(RunOutcome o) {
    switch (o) {
        case RunOutcome::reached_t: return "reached_T";
        case RunOutcome::blew_up: return "blew_up";
        case RunOutcome::decayed: return "decayed";
        case RunOutcome::error: return "error";
    }
    return "error";
}

/// A priori blow-up time bounds attached to a run.
struct BlowupBounds {
    double T1 = 0.0;                          // guaranteed existence horizon
    std::optional<double> discrete;           // (1+m)/(1-p) Phi0 / (-J0), when J0 < 0
    std::optional<double> continuous;         // (1+m)/(1-m) Phi0 / (-J0), when J0 < 0
    std::optional<double> observed;           // T* when the run blew up
};

struct ThetaEstimate {
    double theta = 0.0;
    double residual = 0.0;                    // of the defining scalar equation
    std::optional<double> power_m_bound;      // p=m bound on theta^m
};

struct Snapshot {
    int n = 0;
    double t = 0.0;
    Field u;
    Field v;
};

struct RunReport {
    RunOutcome outcome = RunOutcome::error;
    std::string error_message;
    double t_end = 0.0;
    int steps_taken = 0;
    std::optional<double> t_star;
    BlowupBounds bounds;
    std::optional<ThetaEstimate> theta;
    double lambda1 = 0.0;
    double J0 = 0.0;
    double Phi0 = 0.0;
    DomainSpec domain;
    ModelParams params;
    std::vector<StepReport> steps;
    StepReport final_row;                     // state diagnostics at t_end, dt = 0
    Field u_final;
    Field v_final;
    std::vector<Snapshot> snapshots;

    std::vector<StepReport> rows_with_final() const {
        std::vector<StepReport> rows = steps;
        rows.push_back(final_row);
        return rows;
    }
};

}  // namespace parasol
