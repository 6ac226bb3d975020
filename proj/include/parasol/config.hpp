#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "parasol/grid.hpp"
#include "parasol/model.hpp"
#include "parasol/operator.hpp"
#include "parasol/run.hpp"

namespace parasol {

/// A solver run described as plain key=value text (one pair per line,
/// '#' starts a comment).  Exponents may be given either as m/p or as the
/// original nu/mu; the coupling either as alpha or as a multiple of the
/// discrete principal eigenvalue.
struct RunConfig {
    DomainSpec domain = DomainSpec::line(1.0, 64);
    double m = 0.0, p = 0.0;
    std::optional<double> alpha;             // absolute coupling
    std::optional<double> alpha_multiple;    // alpha = multiple * lambda1
    std::string ic_family = "eigen";         // eigen | bump | file
    double ic_amplitude = 1.0;
    std::optional<double> ic_amplitude_v;
    std::string ic_file_u, ic_file_v;
    double T = 0.0;
    bool adaptive = true;
    double sigma = 0.5;
    double fixed_dt = 0.0;
    int snapshot_every = 0;
    double decay_floor = 0.0;
    double eigen_tol = 1e-12;
    StepOptions options{};
    unsigned long seed = 0;                  // reserved for battery drivers
    std::string out_dir = "out";
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for key '" + key + "': " + value);
    }
    if (used != value.size())
        throw std::invalid_argument("config: trailing junk for key '" + key + "': " + value);
    return x;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw std::invalid_argument("config: key '" + key + "' needs an integer");
    return i;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: empty key or value in: " + line);
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument("config: duplicate key: " + key);
    }

    RunConfig cfg;
    std::optional<double> m, p, nu, mu, alpha, alpha_mult, dt, sigma;
    std::optional<int> n, nx, ny, dim;
    std::optional<double> extent, ex, ey;

    const auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    const auto take_num = [&](const char* key) -> std::optional<double> {
        auto v = take(key);
        if (!v) return std::nullopt;
        return detail::parse_number(key, *v);
    };
    const auto take_int = [&](const char* key) -> std::optional<int> {
        auto v = take(key);
        if (!v) return std::nullopt;
        return detail::parse_int(key, *v);
    };

    dim = take_int("dimension");
    extent = take_num("extent");
    ex = take_num("extent_x");
    ey = take_num("extent_y");
    n = take_int("n");
    nx = take_int("n_x");
    ny = take_int("n_y");
    m = take_num("m");
    p = take_num("p");
    nu = take_num("nu");
    mu = take_num("mu");
    alpha = take_num("alpha");
    alpha_mult = take_num("alpha_over_lambda1");
    if (auto v = take("ic")) cfg.ic_family = *v;
    if (auto v = take_num("ic_amplitude")) cfg.ic_amplitude = *v;
    if (auto v = take_num("ic_amplitude_v")) cfg.ic_amplitude_v = *v;
    if (auto v = take("ic_file_u")) cfg.ic_file_u = *v;
    if (auto v = take("ic_file_v")) cfg.ic_file_v = *v;
    if (auto v = take_num("T")) cfg.T = *v; else throw std::invalid_argument("config: missing key T");
    dt = take_num("dt");
    sigma = take_num("sigma");
    if (auto v = take_int("snapshot_every")) cfg.snapshot_every = *v;
    if (auto v = take_num("decay_floor")) cfg.decay_floor = *v;
    if (auto v = take_num("blowup_threshold")) cfg.options.blowup_threshold = *v;
    if (auto v = take_num("dt_min")) cfg.options.dt_min = *v;
    if (auto v = take_num("dt_max")) cfg.options.dt_max = *v;
    if (auto v = take_num("tol_abs")) cfg.options.tol_abs = *v;
    if (auto v = take_num("tol_rel")) cfg.options.tol_rel = *v;
    if (auto v = take_int("max_iterations")) cfg.options.max_iterations = *v;
    if (auto v = take_num("linear_tol")) cfg.options.linear_tol = *v;
    if (auto v = take_num("eig_tol")) cfg.eigen_tol = *v;
    if (auto v = take_num("seed")) cfg.seed = static_cast<unsigned long>(*v);
    if (auto v = take("out")) cfg.out_dir = *v;

    if (!kv.empty())
        throw std::invalid_argument("config: unknown key: " + kv.begin()->first);

    // Exponents: exactly one of the two conventions.
    const bool has_mp = m.has_value() || p.has_value();
    const bool has_numu = nu.has_value() || mu.has_value();
    if (has_mp && has_numu)
        throw std::invalid_argument("config: give either m/p or nu/mu, not both");
    if (has_mp) {
        if (!m || !p) throw std::invalid_argument("config: need both m and p");
        cfg.m = *m;
        cfg.p = *p;
    } else if (has_numu) {
        if (!nu || !mu) throw std::invalid_argument("config: need both nu and mu");
        if (!(*nu > 0.0) || !(*mu > 0.0))
            throw std::invalid_argument("config: nu and mu must be positive");
        cfg.m = 1.0 / (*nu + 1.0);
        cfg.p = 1.0 / (*mu + 1.0);
    } else {
        throw std::invalid_argument("config: missing exponents (m/p or nu/mu)");
    }
    if (!(cfg.p > 0.0 && cfg.p <= cfg.m && cfg.m < 1.0))
        throw std::invalid_argument("config: need 0 < p <= m < 1 (equivalently mu >= nu)");

    if (alpha.has_value() && alpha_mult.has_value())
        throw std::invalid_argument("config: give either alpha or alpha_over_lambda1, not both");
    if (!alpha.has_value() && !alpha_mult.has_value())
        throw std::invalid_argument("config: missing key alpha (or alpha_over_lambda1)");
    cfg.alpha = alpha;
    cfg.alpha_multiple = alpha_mult;
    if ((alpha && *alpha < 0.0) || (alpha_mult && *alpha_mult < 0.0))
        throw std::invalid_argument("config: coupling must be nonnegative");

    // Domain.
    cfg.domain.dimension = dim.value_or(1);
    if (cfg.domain.dimension == 1) {
        if (!n) throw std::invalid_argument("config: missing key n");
        cfg.domain = DomainSpec::line(extent.value_or(1.0), *n);
    } else {
        const int px = nx ? *nx : n.value_or(0);
        const int py = ny ? *ny : n.value_or(0);
        if (px < 1 || py < 1) throw std::invalid_argument("config: missing n (or n_x/n_y)");
        cfg.domain = DomainSpec::box(ex.value_or(extent.value_or(1.0)),
                                     ey.value_or(extent.value_or(1.0)), px, py);
    }

    // Exactly one dt mode.
    if (dt.has_value() && sigma.has_value())
        throw std::invalid_argument("config: give either dt (fixed mode) or sigma (adaptive)");
    if (dt.has_value()) {
        if (!(*dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
        cfg.adaptive = false;
        cfg.fixed_dt = *dt;
    } else {
        cfg.adaptive = true;
        cfg.sigma = sigma.value_or(0.5);
        cfg.options.sigma = cfg.sigma;
    }

    if (cfg.ic_family != "eigen" && cfg.ic_family != "bump" && cfg.ic_family != "file")
        throw std::invalid_argument("config: ic must be eigen, bump or file");
    if (!(cfg.ic_amplitude > 0.0))
        throw std::invalid_argument("config: ic_amplitude must be positive");
    if (cfg.ic_amplitude_v && !(*cfg.ic_amplitude_v > 0.0))
        throw std::invalid_argument("config: ic_amplitude_v must be positive");
    if (cfg.ic_family == "file" && (cfg.ic_file_u.empty() || cfg.ic_file_v.empty()))
        throw std::invalid_argument("config: ic=file needs ic_file_u and ic_file_v");
    if (!(cfg.T >= 0.0)) throw std::invalid_argument("config: T must be nonnegative");
    if (cfg.adaptive && !(cfg.sigma > 0.0 && cfg.sigma < 1.0))
        throw std::invalid_argument("config: sigma must lie in (0,1)");
    if (cfg.decay_floor < 0.0) throw std::invalid_argument("config: decay_floor must be >= 0");
    if (!(cfg.eigen_tol > 0.0)) throw std::invalid_argument("config: eig_tol must be positive");
    cfg.options.validate();
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

/// Canonical key=value serialization; parse_config(write_config(c)) has the
/// same semantics as c.
inline std::string write_config(const RunConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "dimension = " << cfg.domain.dimension << "\n";
    if (cfg.domain.dimension == 1) {
        out << "extent = " << cfg.domain.extent[0] << "\n";
        out << "n = " << cfg.domain.points[0] << "\n";
    } else {
        out << "extent_x = " << cfg.domain.extent[0] << "\n";
        out << "extent_y = " << cfg.domain.extent[1] << "\n";
        out << "n_x = " << cfg.domain.points[0] << "\n";
        out << "n_y = " << cfg.domain.points[1] << "\n";
    }
    out << "m = " << cfg.m << "\n";
    out << "p = " << cfg.p << "\n";
    if (cfg.alpha) out << "alpha = " << *cfg.alpha << "\n";
    if (cfg.alpha_multiple) out << "alpha_over_lambda1 = " << *cfg.alpha_multiple << "\n";
    out << "ic = " << cfg.ic_family << "\n";
    out << "ic_amplitude = " << cfg.ic_amplitude << "\n";
    if (cfg.ic_amplitude_v) out << "ic_amplitude_v = " << *cfg.ic_amplitude_v << "\n";
    if (!cfg.ic_file_u.empty()) out << "ic_file_u = " << cfg.ic_file_u << "\n";
    if (!cfg.ic_file_v.empty()) out << "ic_file_v = " << cfg.ic_file_v << "\n";
    out << "T = " << cfg.T << "\n";
    if (cfg.adaptive)
        out << "sigma = " << cfg.sigma << "\n";
    else
        out << "dt = " << cfg.fixed_dt << "\n";
    out << "snapshot_every = " << cfg.snapshot_every << "\n";
    out << "decay_floor = " << cfg.decay_floor << "\n";
    out << "blowup_threshold = " << cfg.options.blowup_threshold << "\n";
    out << "dt_min = " << cfg.options.dt_min << "\n";
    out << "dt_max = " << cfg.options.dt_max << "\n";
    out << "tol_abs = " << cfg.options.tol_abs << "\n";
    out << "tol_rel = " << cfg.options.tol_rel << "\n";
    out << "max_iterations = " << cfg.options.max_iterations << "\n";
    out << "linear_tol = " << cfg.options.linear_tol << "\n";
    out << "eig_tol = " << cfg.eigen_tol << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "out = " << cfg.out_dir << "\n";
    return out.str();
}

/// Resolves the coupling against the operator's discrete lambda1 when the
/// config gave it as a multiple.
inline ModelParams resolve_params(const RunConfig& cfg, const SpatialOperator& op) {
    const double alpha = cfg.alpha ? *cfg.alpha : *cfg.alpha_multiple * op.lambda1();
    return ModelParams::from_mp(cfg.m, cfg.p, alpha);
}

namespace detail {

inline Field read_field_file(const std::string& path, std::size_t expected) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("initial condition: cannot open " + path);
    Field f;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        f.push_back(parse_number("ic_file", line));
    }
    if (f.size() != expected)
        throw std::invalid_argument("initial condition: " + path + " has " +
                                    std::to_string(f.size()) + " values, expected " +
                                    std::to_string(expected));
    if (!strictly_positive(f))
        throw std::invalid_argument("initial condition: nonpositive node in " + path);
    return f;
}

}  // namespace detail

/// Builds the initial pair: "eigen" is c rho1 (J(u0,v0) < 0 automatically
/// for alpha > lambda1), "bump" the separable parabola with sup c, "file"
/// reads nodal values (one per line).
inline std::pair<Field, Field> make_initial(const RunConfig& cfg, const SpatialOperator& op) {
    const double cu = cfg.ic_amplitude;
    const double cv = cfg.ic_amplitude_v.value_or(cfg.ic_amplitude);
    const DomainSpec& d = op.domain();
    if (cfg.ic_family == "eigen") {
        Field u = op.rho1(), v = op.rho1();
        for (double& x : u) x *= cu;
        for (double& x : v) x *= cv;
        return {std::move(u), std::move(v)};
    }
    if (cfg.ic_family == "bump") {
        Field u(d.node_count()), v(d.node_count());
        for (std::size_t i = 0; i < u.size(); ++i) {
            double g = 1.0;
            for (int a = 0; a < d.dimension; ++a) {
                const double s = d.coordinate(i, a) / d.extent[static_cast<std::size_t>(a)];
                g *= 4.0 * s * (1.0 - s);
            }
            u[i] = cu * g;
            v[i] = cv * g;
        }
        return {std::move(u), std::move(v)};
    }
    return {detail::read_field_file(cfg.ic_file_u, d.node_count()),
            detail::read_field_file(cfg.ic_file_v, d.node_count())};
}

}  // namespace parasol
