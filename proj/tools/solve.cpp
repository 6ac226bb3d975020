// Command-line driver: reads a key=value config, runs the implicit solver
// and writes steps.csv / snapshots / summary.txt.  Exit codes: 0 on
// reached_T or decayed, 2 on blow-up (an expected outcome, not a failure),
// 1 on any error.

#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "parasol/parasol.hpp"

namespace {

void print_usage(const char* prog) {
    std::cout << "Usage: " << prog << " --config <path> [--out <dir>]\n"
              << "       " << prog << " --battery <dir-of-configs> [--out <dir>]\n"
              << "\n"
              << "Runs the implicit solver for the coupled quasilinear parabolic\n"
              << "system described by the config file and writes steps.csv,\n"
              << "snapshot CSVs and summary.txt to the output directory.\n"
              << "Battery mode runs every *.cfg in the directory in parallel,\n"
              << "each into its own subdirectory of the output directory.\n";
}

int run_one(const std::string& config_path, const std::string& out_override) {
    const parasol::RunConfig cfg = parasol::load_config(config_path);
    const parasol::SpatialOperator op(cfg.domain, cfg.eigen_tol);
    const parasol::ModelParams params = parasol::resolve_params(cfg, op);
    const auto [u0, v0] = parasol::make_initial(cfg, op);

    parasol::RunControl ctl;
    ctl.T = cfg.T;
    ctl.adaptive = cfg.adaptive;
    ctl.fixed_dt = cfg.fixed_dt;
    ctl.snapshot_every = cfg.snapshot_every;
    ctl.decay_floor = cfg.decay_floor;
    ctl.options = cfg.options;

    const parasol::RunReport report = parasol::run(op, params, u0, v0, ctl);
    const std::string out_dir = out_override.empty() ? cfg.out_dir : out_override;
    parasol::emit(report, out_dir);

    std::cout << config_path << ": outcome=" << parasol::to_string(report.outcome)
              << " steps=" << report.steps_taken << " t_end=" << report.t_end;
    if (report.t_star) std::cout << " T_star=" << *report.t_star;
    std::cout << " -> " << out_dir << "\n";

    switch (report.outcome) {
        case parasol::RunOutcome::reached_t:
        case parasol::RunOutcome::decayed:
            return 0;
        case parasol::RunOutcome::blew_up:
            return 2;
        case parasol::RunOutcome::error:
            std::cerr << "error: " << report.error_message << "\n";
            return 1;
    }
    return 1;
}

int run_battery(const std::string& dir, const std::string& out_override) {
    namespace fs = std::filesystem;
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cfg")
            configs.push_back(entry.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        std::cerr << "error: no *.cfg files in " << dir << "\n";
        return 1;
    }
    const fs::path out_root = out_override.empty() ? fs::path("battery_out") : fs::path(out_override);

    std::vector<std::future<int>> results;
    results.reserve(configs.size());
    for (const fs::path& cfg : configs) {
        const std::string out_dir = (out_root / cfg.stem()).string();
        results.push_back(std::async(std::launch::async, [cfg, out_dir]() {
            try {
                return run_one(cfg.string(), out_dir);
            } catch (const std::exception& e) {
                std::cerr << cfg.string() << ": error: " << e.what() << "\n";
                return 1;
            }
        }));
    }
    bool any_error = false, any_blowup = false;
    for (auto& r : results) {
        const int code = r.get();
        any_error = any_error || code == 1;
        any_blowup = any_blowup || code == 2;
    }
    if (any_error) return 1;
    return any_blowup ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string config_path, battery_dir, out_dir;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "error: " << arg << " needs a value\n";
                std::exit(1);
            }
            return argv[++i];
        };
        if (arg == "--config")
            config_path = next();
        else if (arg == "--battery")
            battery_dir = next();
        else if (arg == "--out")
            out_dir = next();
        else if (arg == "--help" || arg == "-h") {
            print_usage(argv[0]);
            return 0;
        } else {
            std::cerr << "error: unknown argument " << arg << "\n";
            print_usage(argv[0]);
            return 1;
        }
    }
    if (config_path.empty() == battery_dir.empty()) {
        std::cerr << "error: give exactly one of --config or --battery\n";
        print_usage(argv[0]);
        return 1;
    }
    try {
        return battery_dir.empty() ? run_one(config_path, out_dir)
                                   : run_battery(battery_dir, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
