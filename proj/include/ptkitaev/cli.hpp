#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptkitaev/analytic.hpp"
#include "ptkitaev/ep.hpp"
#include "ptkitaev/errors.hpp"
#include "ptkitaev/model.hpp"
#include "ptkitaev/params.hpp"
#include "ptkitaev/spectral.hpp"
#include "ptkitaev/sweep.hpp"

namespace ptkitaev {

// Fully resolved invocation state. Every file-producing run serializes this
// next to its outputs so any artifact can be regenerated from its sidecar.
struct RunConfig {
    std::string subcommand;
    int n = 2;
    double j = 1.0;
    double mu = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    int m0 = 1;
    std::string boundary = "open";
    double gamma_max = -1.0;  // negative = derive from j at use site
    double tol = -1.0;
    double eps = -1.0;
    double cutoff = 0.99;
    double floor_log10 = defaults::lambda_floor;
    int grid_x = 101;
    int grid_y = 101;
    double delta_lo = 0.0;
    double delta_hi = -1.0;   // negative = 2 j
    double gamma_lo = 0.0;
    double gamma_hi = -1.0;   // negative = resolved gamma_max
    double mu_lo = 0.0;
    double mu_hi = -1.0;      // negative = 2 j
    int workers = 0;
    std::string out_dir;
    std::string format = "csv";
};

namespace cli_detail {

inline double resolved_gamma_max(const RunConfig& c) {
    return c.gamma_max > 0.0 ? c.gamma_max : defaults::gamma_max_per_j * c.j;
}
inline double resolved_tol(const RunConfig& c) {
    return c.tol > 0.0 ? c.tol : defaults::tol_per_j * c.j;
}
inline double resolved_eps(const RunConfig& c) {
    return c.eps > 0.0 ? c.eps : defaults::eps_per_j * c.j;
}
inline double resolved_delta_hi(const RunConfig& c) {
    return c.delta_hi >= 0.0 ? c.delta_hi : 2.0 * c.j;
}
inline double resolved_gamma_hi(const RunConfig& c) {
    return c.gamma_hi >= 0.0 ? c.gamma_hi : resolved_gamma_max(c);
}
inline double resolved_mu_hi(const RunConfig& c) {
    return c.mu_hi >= 0.0 ? c.mu_hi : 2.0 * c.j;
}

inline ChainParams chain_of(const RunConfig& c) {
    ChainParams p;
    p.n_sites = c.n;
    p.hopping = c.j;
    p.onsite = c.mu;
    p.sc_order = c.delta;
    p.gain_loss = c.gamma;
    p.gain_site = c.m0;
    if (c.boundary == "periodic")
        p.boundary = Boundary::Periodic;
    else if (c.boundary == "open")
        p.boundary = Boundary::Open;
    else
        throw ParameterError("boundary must be open or periodic");
    return p;
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["schema"] = "run-config/1";
    j["subcommand"] = c.subcommand;
    j["n"] = c.n;
    j["j"] = c.j;
    j["mu"] = c.mu;
    j["delta"] = c.delta;
    j["gamma"] = c.gamma;
    j["m0"] = c.m0;
    j["boundary"] = c.boundary;
    j["gamma_max"] = c.gamma_max;
    j["tol"] = c.tol;
    j["eps"] = c.eps;
    j["cutoff"] = c.cutoff;
    j["floor"] = c.floor_log10;
    j["grid_x"] = c.grid_x;
    j["grid_y"] = c.grid_y;
    j["delta_lo"] = c.delta_lo;
    j["delta_hi"] = c.delta_hi;
    j["gamma_lo"] = c.gamma_lo;
    j["gamma_hi"] = c.gamma_hi;
    j["mu_lo"] = c.mu_lo;
    j["mu_hi"] = c.mu_hi;
    j["workers"] = c.workers;
    j["out"] = c.out_dir;
    j["format"] = c.format;
    return j;
}

inline RunConfig config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot open config file '" + path + "'");
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(f);
    } catch (const std::exception& e) {
        throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("schema") || j["schema"] != "run-config/1")
        throw ParameterError("config file '" + path + "' has an unsupported schema");
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.n = j.at("n").get<int>();
    c.j = j.at("j").get<double>();
    c.mu = j.at("mu").get<double>();
    c.delta = j.at("delta").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.m0 = j.at("m0").get<int>();
    c.boundary = j.at("boundary").get<std::string>();
    c.gamma_max = j.at("gamma_max").get<double>();
    c.tol = j.at("tol").get<double>();
    c.eps = j.at("eps").get<double>();
    c.cutoff = j.at("cutoff").get<double>();
    c.floor_log10 = j.at("floor").get<double>();
    c.grid_x = j.at("grid_x").get<int>();
    c.grid_y = j.at("grid_y").get<int>();
    c.delta_lo = j.at("delta_lo").get<double>();
    c.delta_hi = j.at("delta_hi").get<double>();
    c.gamma_lo = j.at("gamma_lo").get<double>();
    c.gamma_hi = j.at("gamma_hi").get<double>();
    c.mu_lo = j.at("mu_lo").get<double>();
    c.mu_hi = j.at("mu_hi").get<double>();
    c.workers = j.at("workers").get<int>();
    c.out_dir = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
}

inline void write_sidecar(const RunConfig& c, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write config sidecar '" + path + "'");
    f << to_json(c).dump(2) << '\n';
}

inline std::string require_out_dir(const RunConfig& c) {
    if (c.out_dir.empty())
        throw ParameterError(c.subcommand + " writes files: --out DIR is required");
    std::filesystem::create_directories(c.out_dir);
    return c.out_dir;
}

inline std::vector<std::string> emit_grid(const PhaseGrid& grid, const RunConfig& c,
                                          const std::string& stem) {
    const std::string dir = require_out_dir(c);
    std::vector<std::string> written;
    auto want = [&](const char* f) { return c.format == f || c.format == "all"; };
    if (want("csv")) {
        const std::string p = dir + "/" + stem + ".csv";
        write_csv(grid, p);
        written.push_back(p);
    }
    if (want("json")) {
        const std::string p = dir + "/" + stem + ".json";
        write_json(grid, p);
        written.push_back(p);
    }
    if (want("ppm")) {
        const std::string p = dir + "/" + stem + ".ppm";
        write_ppm(grid, p);
        written.push_back(p);
    }
    const std::string side = dir + "/" + stem + ".run.json";
    write_sidecar(c, side);
    written.push_back(side);
    return written;
}

// Worst matched distance of a greedy minimum-distance pairing between two
// equal-size spectra; the analytic-vs-numeric comparison metric.
inline double spectrum_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const Complex& va : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(b[i] - va);
            if (d < best) { best = d; best_i = i; }
        }
        used[best_i] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

// ── Subcommand bodies ────────────────────────────────────────────────────────

inline void run_spectrum(const RunConfig& c, std::ostream& out) {
    const ChainParams p = chain_of(c);
    const EigenSystem es = eigendecompose(build_hk(p));
    out << "# spectrum n=" << c.n << " j=" << fmt(c.j) << " mu/j=" << fmt(c.mu / c.j)
        << " delta/j=" << fmt(c.delta / c.j) << " gamma/j=" << fmt(c.gamma / c.j)
        << " m0=" << c.m0 << " boundary=" << c.boundary << '\n';
    out << "# re/j im/j\n";
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
        out << fmt(es.values[k].real() / c.j) << ' ' << fmt(es.values[k].imag() / c.j)
            << '\n';
}

inline void run_threshold(const RunConfig& c, std::ostream& out) {
    ChainParams p = chain_of(c);
    p.gain_loss = 0.0;
    p.validate(true);
    const ThresholdResult r = pt_threshold_first(p, resolved_gamma_max(c),
                                                 resolved_tol(c), resolved_eps(c));
    out << "gamma_th/j = " << fmt(r.gamma_th / c.j) << '\n';
    out << "bracket/j = [" << fmt(r.bracket.first / c.j) << ", "
        << fmt(r.bracket.second / c.j) << "]\n";
    out << "broken_at_zero = " << (r.broken_at_zero ? "true" : "false") << '\n';
    out << "capped = " << (r.capped ? "true" : "false") << '\n';
}

inline void run_map_m0_delta(const RunConfig& c, std::ostream& out) {
    require_out_dir(c);  // fail on a bad destination before the long sweep
    ChainParams p = chain_of(c);
    p.gain_loss = 0.0;
    // the site axis is fixed by the chain length; only the y resolution applies
    const PhaseGrid g = threshold_map_m0_delta(
        p, {c.delta_lo, resolved_delta_hi(c), c.grid_y}, resolved_gamma_max(c),
        resolved_tol(c), resolved_eps(c), c.workers);
    for (const std::string& path : emit_grid(g, c, "m0_delta"))
        out << "wrote " << path << '\n';
}

inline void run_map_mu_delta(const RunConfig& c, std::ostream& out) {
    require_out_dir(c);
    ChainParams p = chain_of(c);
    p.gain_loss = 0.0;
    const PhaseGrid g = threshold_map_mu_delta(
        p, {c.mu_lo, resolved_mu_hi(c), c.grid_y},
        {c.delta_lo, resolved_delta_hi(c), c.grid_x}, resolved_gamma_max(c),
        resolved_tol(c), resolved_eps(c), c.workers);
    for (const std::string& path : emit_grid(g, c, "mu_delta"))
        out << "wrote " << path << '\n';
}

inline void run_reentrant_map(const RunConfig& c, std::ostream& out) {
    require_out_dir(c);
    ChainParams p = chain_of(c);
    const PhaseGrid g = lambda_map(p, {c.delta_lo, resolved_delta_hi(c), c.grid_x},
                                   {c.gamma_lo, resolved_gamma_hi(c), c.grid_y},
                                   c.floor_log10, c.workers);
    for (const std::string& path : emit_grid(g, c, "reentrant"))
        out << "wrote " << path << '\n';
}

inline void run_ep_order(const RunConfig& c, std::ostream& out) {
    const EpReport r = ep_order(chain_of(c), c.cutoff);
    out << "estimated_order = " << r.estimated_order << '\n';
    out << "overlap_max_rowsum = " << fmt(r.overlap_max_rowsum) << '\n';
    out << "coalescing_indices =";
    for (int idx : r.coalescing_indices) out << ' ' << idx;
    out << '\n';
}

inline void run_ep_contours(const RunConfig& c, std::ostream& out) {
    if (c.format == "ppm")
        throw ParameterError("ep-contours emits point lists: use --format csv|json|all");
    const std::string dir = require_out_dir(c);
    ChainParams p = chain_of(c);
    p.gain_loss = 0.0;
    const auto points = ep_contours(p, {c.delta_lo, resolved_delta_hi(c), c.grid_x},
                                    {c.gamma_lo, resolved_gamma_hi(c), c.grid_y},
                                    resolved_eps(c), resolved_tol(c), c.workers);
    std::vector<std::string> written;
    if (c.format == "csv" || c.format == "all") {
        const std::string path = dir + "/contours.csv";
        std::ostringstream body;
        body << "# columns=delta gamma pairs_low pairs_high rowsum axis\n";
        for (const ContourPoint& pt : points) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%.17g %.17g %d %d %.17g %c\n", pt.sc_order,
                          pt.gain_loss, pt.pairs_low, pt.pairs_high, pt.rowsum, pt.axis);
            body << buf;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + path + "'");
        f << body.str();
        written.push_back(path);
    }
    if (c.format == "json" || c.format == "all") {
        const std::string path = dir + "/contours.json";
        nlohmann::ordered_json j;
        j["schema"] = "ep-contours/1";
        auto arr = nlohmann::ordered_json::array();
        for (const ContourPoint& pt : points) {
            nlohmann::ordered_json o;
            o["delta"] = pt.sc_order;
            o["gamma"] = pt.gain_loss;
            o["pairs_low"] = pt.pairs_low;
            o["pairs_high"] = pt.pairs_high;
            o["rowsum"] = pt.rowsum;
            o["axis"] = std::string(1, pt.axis);
            arr.push_back(std::move(o));
        }
        j["points"] = std::move(arr);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + path + "'");
        f << j.dump(2) << '\n';
        written.push_back(path);
    }
    const std::string side = dir + "/contours.run.json";
    write_sidecar(c, side);
    written.push_back(side);
    out << "points = " << points.size() << '\n';
    for (const std::string& path : written) out << "wrote " << path << '\n';
}

inline int run_analytic_check(const RunConfig& c, std::ostream& out) {
    const double j = c.j;
    const double pass_dev = 1e-8 * j;
    const double th_dev = 1e-6 * j;
    bool all_ok = true;

    auto row = [&](const std::string& label, bool ok, const std::string& detail) {
        std::string dots(label.size() < 58 ? 58 - label.size() : 3, '.');
        out << label << ' ' << dots << ' ' << (ok ? "pass" : "FAIL");
        if (!detail.empty()) out << " (" << detail << ')';
        out << '\n';
        all_ok = all_ok && ok;
    };

    const std::vector<double> deltas = {0.0, 0.5 * j, 1.0 * j, 1.5 * j, 2.0 * j};
    const std::vector<double> gammas = {0.0, 0.8 * j, 1.6 * j, 2.4 * j};

    auto numeric_five = [&](double d, double g, int m0) {
        ChainParams p;
        p.n_sites = 5;
        p.hopping = j;
        p.sc_order = d;
        p.gain_loss = g;
        p.gain_site = m0;
        const ComplexVector v = eigendecompose(build_hk(p)).values;
        return std::vector<Complex>(v.data(), v.data() + v.size());
    };
    auto as_vec = [](const std::array<Complex, 10>& a) {
        return std::vector<Complex>(a.begin(), a.end());
    };

    double worst1 = 0.0, worst2 = 0.0, worst_var = 0.0;
    for (double d : deltas)
        for (double g : gammas) {
            worst1 = std::max(worst1, spectrum_mismatch(as_vec(n5_spectrum_m1(j, d, g)),
                                                        numeric_five(d, g, 1)));
            worst2 = std::max(worst2, spectrum_mismatch(as_vec(n5_spectrum_m2(j, d, g)),
                                                        numeric_five(d, g, 2)));
            worst_var = std::max(
                worst_var,
                spectrum_mismatch(as_vec(rejected_variants::n5_spectrum_m2_gamma_cross(
                                      j, d, g)),
                                  numeric_five(d, g, 2)));
        }
    row("five-site spectrum, edge gain, vs diagonalization", worst1 <= pass_dev,
        "max dev " + fmt(worst1));
    row("five-site spectrum, next-to-edge gain, vs diagonalization", worst2 <= pass_dev,
        "max dev " + fmt(worst2));
    row("rejected discriminant with gain-squared cross term", worst_var > 0.1 * j,
        "deviates by " + fmt(worst_var) + " as expected");

    double worst_th1 = 0.0, worst_th2 = 0.0;
    for (double d : {0.0, 0.5 * j, 1.0 * j, 1.5 * j}) {
        ChainParams p;
        p.n_sites = 5;
        p.hopping = j;
        p.sc_order = d;
        p.gain_site = 1;
        const double bis1 =
            pt_threshold_first(p, 4.0 * j, 1e-8 * j, 1e-8 * j).gamma_th;
        worst_th1 = std::max(worst_th1, std::abs(bis1 - n5_threshold_m1(j, d)));
        p.gain_site = 2;
        const double bis2 =
            pt_threshold_first(p, 4.0 * j, 1e-8 * j, 1e-8 * j).gamma_th;
        worst_th2 = std::max(worst_th2, std::abs(bis2 - n5_threshold_m2(j, d).gamma_th));
    }
    row("five-site threshold, edge gain, vs bisection", worst_th1 <= th_dev,
        "max dev " + fmt(worst_th1));
    row("five-site threshold, next-to-edge gain, vs bisection", worst_th2 <= th_dev,
        "max dev " + fmt(worst_th2));

    {
        ChainParams p;
        p.n_sites = 5;
        p.hopping = j;
        p.gain_site = 1;
        const double bis = pt_threshold_first(p, 4.0 * j, 1e-8 * j, 1e-8 * j).gamma_th;
        const double variant = rejected_variants::n5_threshold_m1_no_outer_root(j, 0.0);
        row("rejected threshold without the outer root", std::abs(variant - bis) > 0.2 * j,
            "deviates by " + fmt(std::abs(variant - bis)) + " as expected");
    }

    {
        const double a20 = degeneracy_alpha(2, 20).alpha;
        const double a50 = degeneracy_alpha(2, 50).alpha;
        const double a100 = degeneracy_alpha(2, 100).alpha;
        const bool ok = a20 > a50 && a50 > a100 && std::abs(a100 - 0.5) <= 0.05;
        row("band-edge slope approaches 1/2 with chain length", ok,
            "alpha(100 sites) = " + fmt(a100));
    }

    {
        const auto roots = zero_threshold_line(1.0 * j, j, 0.53);
        const bool ok = roots.size() == 2 &&
                        std::abs(roots[0] - 0.68556546 * j) <= 1e-6 * j &&
                        std::abs(roots[1] - 1.23693169 * j) <= 1e-6 * j;
        row("zero-threshold boundary roots at the fitted slope", ok,
            roots.size() == 2 ? "roots/j = " + fmt(roots[0] / j) + ", " + fmt(roots[1] / j)
                              : "unexpected root count");
    }

    out << (all_ok ? "all checks passed" : "CHECKS FAILED") << '\n';
    return all_ok ? 0 : 2;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
    if (c.subcommand == "spectrum") run_spectrum(c, out);
    else if (c.subcommand == "threshold") run_threshold(c, out);
    else if (c.subcommand == "map-m0-delta") run_map_m0_delta(c, out);
    else if (c.subcommand == "map-mu-delta") run_map_mu_delta(c, out);
    else if (c.subcommand == "reentrant-map") run_reentrant_map(c, out);
    else if (c.subcommand == "ep-order") run_ep_order(c, out);
    else if (c.subcommand == "ep-contours") run_ep_contours(c, out);
    else if (c.subcommand == "analytic-check") return run_analytic_check(c, out);
    else throw ParameterError("unknown subcommand '" + c.subcommand + "'");
    return 0;
}

} // namespace cli_detail

// Parses argv, runs one subcommand, writes human output to `out`.
// Exit codes: 0 success, 1 bad parameters or usage, 2 numerical or I/O
// failure. With --config FILE the stored invocation is replayed (only
// --out may be overridden), reproducing its artifacts byte for byte.
inline int run_cli(int argc, const char* const* argv, std::ostream& out) {
    RunConfig cfg;
    std::string grid_str;
    std::string delta_range_str, gamma_range_str, mu_range_str;
    std::string config_path;

    CLI::App app{"PT-symmetric Kitaev chain toolkit"};
    app.add_option("--config", config_path,
                   "replay a run-config sidecar (only --out can be overridden)");
    auto* out_opt =
        app.add_option("--out", cfg.out_dir, "output directory for file-producing runs");
    app.add_option("--n", cfg.n, "number of lattice sites");
    app.add_option("--j", cfg.j, "hopping energy (sets the unit scale)");
    app.add_option("--mu", cfg.mu, "chemical potential");
    app.add_option("--delta", cfg.delta, "superconducting pairing strength");
    app.add_option("--gamma", cfg.gamma, "gain/loss strength");
    app.add_option("--m0", cfg.m0, "gain site index (loss mirrors it)");
    app.add_option("--boundary", cfg.boundary, "open or periodic")
        ->check(CLI::IsMember({"open", "periodic"}));
    app.add_option("--gamma-max", cfg.gamma_max, "threshold scan ceiling (default 4j)");
    app.add_option("--tol", cfg.tol, "bisection tolerance (default 1e-6 j)");
    app.add_option("--eps", cfg.eps, "reality classification tolerance (default 1e-8 j)");
    app.add_option("--cutoff", cfg.cutoff, "eigenvector coalescence cutoff");
    app.add_option("--floor", cfg.floor_log10, "log10 clamp for instability maps");
    app.add_option("--grid", grid_str, "grid resolution NxM (x-points x y-points)");
    app.add_option("--delta-range", delta_range_str, "pairing axis LO:HI (default 0:2j)");
    app.add_option("--gamma-range", gamma_range_str,
                   "gain axis LO:HI (default 0:gamma-max)");
    app.add_option("--mu-range", mu_range_str, "potential axis LO:HI (default 0:2j)");
    app.add_option("--workers", cfg.workers, "worker threads (0 = automatic)");
    app.add_option("--format", cfg.format, "csv|json|ppm|all")
        ->check(CLI::IsMember({"csv", "json", "ppm", "all"}));

    const std::vector<std::string> names = {"spectrum",      "threshold",
                                            "map-m0-delta",  "map-mu-delta",
                                            "reentrant-map", "ep-order",
                                            "ep-contours",   "analytic-check"};
    const std::vector<std::string> descs = {
        "print the eigenvalues of one parameter point",
        "first symmetry-breaking gain strength",
        "threshold map over gain site and pairing",
        "threshold map over potential and pairing",
        "instability heat map over pairing and gain",
        "exceptional-point order at one parameter point",
        "coalescence contours over pairing and gain",
        "closed-form vs numeric validation table"};
    for (std::size_t i = 0; i < names.size(); ++i)
        app.add_subcommand(names[i], descs[i])->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, out);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            if (!app.get_subcommands().empty())
                throw ParameterError("--config replaces the subcommand and its flags");
            RunConfig replay = cli_detail::config_from_file(config_path);
            if (out_opt->count() > 0) replay.out_dir = cfg.out_dir;
            return cli_detail::dispatch(replay, out);
        }

        const auto subs = app.get_subcommands();
        if (subs.empty()) {
            out << app.help();
            return 1;
        }
        cfg.subcommand = subs.front()->get_name();

        if (!grid_str.empty()) {
            int gx = 0, gy = 0;
            char x = 0;
            std::istringstream gs(grid_str);
            if (!(gs >> gx >> x >> gy) || x != 'x' || gx < 1 || gy < 1 || !gs.eof())
                throw ParameterError("--grid expects NxM with positive integers");
            cfg.grid_x = gx;
            cfg.grid_y = gy;
        }
        auto parse_range = [](const std::string& s, const char* flag, double& lo,
                              double& hi) {
            if (s.empty()) return;
            const auto sep = s.find(':');
            if (sep == std::string::npos)
                throw ParameterError(std::string(flag) + " expects LO:HI");
            try {
                lo = std::stod(s.substr(0, sep));
                hi = std::stod(s.substr(sep + 1));
            } catch (const std::exception&) {
                throw ParameterError(std::string(flag) + " expects numeric LO:HI");
            }
            if (!(lo <= hi))
                throw ParameterError(std::string(flag) + " needs LO <= HI");
        };
        parse_range(delta_range_str, "--delta-range", cfg.delta_lo, cfg.delta_hi);
        parse_range(gamma_range_str, "--gamma-range", cfg.gamma_lo, cfg.gamma_hi);
        parse_range(mu_range_str, "--mu-range", cfg.mu_lo, cfg.mu_hi);
        if (!(cfg.j > 0.0) || !std::isfinite(cfg.j))
            throw ParameterError("--j must be positive and finite");

        return cli_detail::dispatch(cfg, out);
    } catch (const ParameterError& e) {
        out << "parameter error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace ptkitaev
