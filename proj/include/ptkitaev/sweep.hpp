#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptkitaev/eigensolver.hpp"
#include "ptkitaev/errors.hpp"
#include "ptkitaev/model.hpp"
#include "ptkitaev/parallel.hpp"
#include "ptkitaev/params.hpp"
#include "ptkitaev/spectral.hpp"

namespace ptkitaev {

// Per-cell annotation. Error cells carry NaN values; capped cells hold the
// scan ceiling; floored cells hold the clamp value. Everything else is a
// plain finite number.
enum class CellFlag : unsigned char { Ok, Capped, Floored, Error };

inline char to_char(CellFlag f) {
    switch (f) {
        case CellFlag::Ok: return '.';
        case CellFlag::Capped: return 'c';
        case CellFlag::Floored: return 'f';
        case CellFlag::Error: return 'e';
    }
    return '?';
}

inline CellFlag flag_from_char(char c) {
    switch (c) {
        case '.': return CellFlag::Ok;
        case 'c': return CellFlag::Capped;
        case 'f': return CellFlag::Floored;
        case 'e': return CellFlag::Error;
        default: throw ParameterError(std::string("unknown cell flag '") + c + "'");
    }
}

struct GridAxis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;

    double at(int i) const {
        return n <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(n - 1);
    }
};

// A rectangular scan result: y-major cells with per-cell flags and an
// ordered key-value block recording the fixed parameters and what the
// cells mean ("kind" = threshold | lambda | ep_paircount).
struct PhaseGrid {
    GridAxis x_axis;
    GridAxis y_axis;
    std::vector<double> cells;      // cells[iy * x_axis.n + ix]
    std::vector<CellFlag> flags;    // same layout
    std::vector<std::pair<std::string, std::string>> meta;

    double value(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * static_cast<std::size_t>(x_axis.n) +
                     static_cast<std::size_t>(ix)];
    }
    CellFlag flag(int ix, int iy) const {
        return flags[static_cast<std::size_t>(iy) * static_cast<std::size_t>(x_axis.n) +
                     static_cast<std::size_t>(ix)];
    }
    const std::string* meta_value(const std::string& key) const {
        for (const auto& kv : meta)
            if (kv.first == key) return &kv.second;
        return nullptr;
    }

    void validate() const {
        if (x_axis.n < 1 || y_axis.n < 1)
            throw ParameterError("PhaseGrid: axes need at least one point");
        const std::size_t want = static_cast<std::size_t>(x_axis.n) *
                                 static_cast<std::size_t>(y_axis.n);
        if (cells.size() != want || flags.size() != want)
            throw ConsistencyError("PhaseGrid: cell/flag count does not match axes");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const bool is_err = flags[i] == CellFlag::Error;
            if (is_err != std::isnan(cells[i]))
                throw ConsistencyError(
                    "PhaseGrid: cell finiteness must match its error flag");
        }
    }
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::pair<std::string, std::string>> base_meta(
    const ChainParams& base, const std::string& kind) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("kind", kind);
    meta.emplace_back("n", std::to_string(base.n_sites));
    meta.emplace_back("j", fmt_double(base.hopping));
    meta.emplace_back("boundary", to_string(base.boundary));
    return meta;
}

// Evaluates fn over every cell with per-cell error capture; exceptions
// become NaN cells tagged Error so one bad point cannot sink a long scan.
template <typename Fn>
void fill_grid(PhaseGrid& grid, int workers, Fn&& fn) {
    const int nx = grid.x_axis.n;
    const int ny = grid.y_axis.n;
    grid.cells.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0.0);
    grid.flags.assign(grid.cells.size(), CellFlag::Ok);
    parallel_for_indexed(nx * ny, workers, [&](int idx) {
        const int ix = idx % nx;
        const int iy = idx / nx;
        double v;
        CellFlag f;
        try {
            std::tie(v, f) = fn(ix, iy);
        } catch (...) {
            v = std::numeric_limits<double>::quiet_NaN();
            f = CellFlag::Error;
        }
        grid.cells[static_cast<std::size_t>(idx)] = v;
        grid.flags[static_cast<std::size_t>(idx)] = f;
    });
}

} // namespace detail

// First PT-breaking gain strength over (gain site, pairing strength). The
// site axis is every admissible location 1..floor(N/2); zero cells are the
// genuine zero-threshold region, capped cells never broke below gamma_max.
inline PhaseGrid threshold_map_m0_delta(const ChainParams& base,
                                        const ScanRange& delta_range,
                                        double gamma_max = -1.0, double tol = -1.0,
                                        double eps = -1.0, int workers = 0) {
    base.validate();
    delta_range.validate("threshold_map_m0_delta: delta_range");
    if (gamma_max <= 0.0) gamma_max = defaults::gamma_max_per_j * base.hopping;
    if (tol <= 0.0) tol = defaults::tol_per_j * base.hopping;
    if (eps <= 0.0) eps = defaults::eps_per_j * base.hopping;

    const int m_max = base.n_sites / 2;
    if (m_max < 1)
        throw ParameterError("threshold_map_m0_delta: chain too short for a gain site");

    PhaseGrid grid;
    grid.x_axis = {"m0", 1.0, static_cast<double>(m_max), m_max};
    grid.y_axis = {"delta", delta_range.lo, delta_range.hi, delta_range.n};
    grid.meta = detail::base_meta(base, "threshold");
    grid.meta.emplace_back("mu", detail::fmt_double(base.onsite));
    grid.meta.emplace_back("gamma_max", detail::fmt_double(gamma_max));
    grid.meta.emplace_back("tol", detail::fmt_double(tol));
    grid.meta.emplace_back("eps", detail::fmt_double(eps));

    detail::fill_grid(grid, workers, [&](int ix, int iy) {
        ChainParams p = base;
        p.gain_site = ix + 1;
        p.sc_order = grid.y_axis.at(iy);
        const ThresholdResult r = pt_threshold_first(p, gamma_max, tol, eps);
        return std::make_pair(r.gamma_th, r.capped ? CellFlag::Capped : CellFlag::Ok);
    });
    grid.validate();
    return grid;
}

// First PT-breaking gain strength over (pairing strength, chemical
// potential) at the fixed gain site carried by the base parameters.
inline PhaseGrid threshold_map_mu_delta(const ChainParams& base,
                                        const ScanRange& mu_range,
                                        const ScanRange& delta_range,
                                        double gamma_max = -1.0, double tol = -1.0,
                                        double eps = -1.0, int workers = 0) {
    base.validate(true);
    mu_range.validate("threshold_map_mu_delta: mu_range");
    delta_range.validate("threshold_map_mu_delta: delta_range");
    if (gamma_max <= 0.0) gamma_max = defaults::gamma_max_per_j * base.hopping;
    if (tol <= 0.0) tol = defaults::tol_per_j * base.hopping;
    if (eps <= 0.0) eps = defaults::eps_per_j * base.hopping;

    PhaseGrid grid;
    grid.x_axis = {"delta", delta_range.lo, delta_range.hi, delta_range.n};
    grid.y_axis = {"mu", mu_range.lo, mu_range.hi, mu_range.n};
    grid.meta = detail::base_meta(base, "threshold");
    grid.meta.emplace_back("m0", std::to_string(base.gain_site));
    grid.meta.emplace_back("gamma_max", detail::fmt_double(gamma_max));
    grid.meta.emplace_back("tol", detail::fmt_double(tol));
    grid.meta.emplace_back("eps", detail::fmt_double(eps));

    detail::fill_grid(grid, workers, [&](int ix, int iy) {
        ChainParams p = base;
        p.sc_order = grid.x_axis.at(ix);
        p.onsite = grid.y_axis.at(iy);
        const ThresholdResult r = pt_threshold_first(p, gamma_max, tol, eps);
        return std::make_pair(r.gamma_th, r.capped ? CellFlag::Capped : CellFlag::Ok);
    });
    grid.validate();
    return grid;
}

// log10 of the largest imaginary eigenvalue part (in units of the hopping)
// over (pairing strength, gain strength); floor-clamped cells mark the
// symmetric phase.
inline PhaseGrid lambda_map(const ChainParams& base, const ScanRange& delta_range,
                            const ScanRange& gamma_range,
                            double floor_log10 = defaults::lambda_floor,
                            int workers = 0) {
    base.validate(true);
    delta_range.validate("lambda_map: delta_range");
    gamma_range.validate("lambda_map: gamma_range");
    if (!std::isfinite(floor_log10))
        throw ParameterError("lambda_map: floor must be finite");

    PhaseGrid grid;
    grid.x_axis = {"delta", delta_range.lo, delta_range.hi, delta_range.n};
    grid.y_axis = {"gamma", gamma_range.lo, gamma_range.hi, gamma_range.n};
    grid.meta = detail::base_meta(base, "lambda");
    grid.meta.emplace_back("mu", detail::fmt_double(base.onsite));
    grid.meta.emplace_back("m0", std::to_string(base.gain_site));
    grid.meta.emplace_back("floor", detail::fmt_double(floor_log10));

    detail::fill_grid(grid, workers, [&](int ix, int iy) {
        ChainParams p = base;
        p.sc_order = grid.x_axis.at(ix);
        p.gain_loss = grid.y_axis.at(iy);
        const double v = lambda_value(p, floor_log10);
        return std::make_pair(v, v <= floor_log10 ? CellFlag::Floored : CellFlag::Ok);
    });
    grid.validate();
    return grid;
}

// Conjugate-pair count per cell over the same axes as lambda_map; the
// integer-valued cousin used for coalescence cascades.
inline PhaseGrid paircount_map(const ChainParams& base, const ScanRange& delta_range,
                               const ScanRange& gamma_range, double eps = -1.0,
                               int workers = 0) {
    base.validate(true);
    delta_range.validate("paircount_map: delta_range");
    gamma_range.validate("paircount_map: gamma_range");
    if (eps <= 0.0) eps = defaults::eps_per_j * base.hopping;

    PhaseGrid grid;
    grid.x_axis = {"delta", delta_range.lo, delta_range.hi, delta_range.n};
    grid.y_axis = {"gamma", gamma_range.lo, gamma_range.hi, gamma_range.n};
    grid.meta = detail::base_meta(base, "ep_paircount");
    grid.meta.emplace_back("mu", detail::fmt_double(base.onsite));
    grid.meta.emplace_back("m0", std::to_string(base.gain_site));
    grid.meta.emplace_back("eps", detail::fmt_double(eps));

    detail::fill_grid(grid, workers, [&](int ix, int iy) {
        ChainParams p = base;
        p.sc_order = grid.x_axis.at(ix);
        p.gain_loss = grid.y_axis.at(iy);
        const SpectrumClass c = classify_spectrum(eigendecompose(build_hk(p)).values, eps);
        return std::make_pair(static_cast<double>(c.pair_count), CellFlag::Ok);
    });
    grid.validate();
    return grid;
}

// ── Serialization ─────────────────────────────────────────────────────────────

namespace detail {

inline void require_stream(const std::ios& s, const std::string& what,
                           const std::string& path) {
    if (!s) throw std::runtime_error(what + " failed for '" + path + "'");
}

inline std::string flags_string(const PhaseGrid& grid) {
    std::string s;
    s.reserve(grid.flags.size());
    for (CellFlag f : grid.flags) s.push_back(to_char(f));
    return s;
}

} // namespace detail

// Text grid: one comment line naming axes and carrying the meta block, one
// comment line with the per-cell flag string, then y-major rows of x-ordered
// values at full precision (17 significant digits round-trips doubles).
inline void write_csv(const PhaseGrid& grid, const std::string& path) {
    grid.validate();
    std::ostringstream out;
    out << "# x=" << grid.x_axis.name << " y=" << grid.y_axis.name;
    out << " x_lo=" << detail::fmt_double(grid.x_axis.lo)
        << " x_hi=" << detail::fmt_double(grid.x_axis.hi) << " x_n=" << grid.x_axis.n;
    out << " y_lo=" << detail::fmt_double(grid.y_axis.lo)
        << " y_hi=" << detail::fmt_double(grid.y_axis.hi) << " y_n=" << grid.y_axis.n;
    for (const auto& kv : grid.meta) out << ' ' << kv.first << '=' << kv.second;
    out << '\n';
    out << "# flags=" << detail::flags_string(grid) << '\n';
    for (int iy = 0; iy < grid.y_axis.n; ++iy) {
        for (int ix = 0; ix < grid.x_axis.n; ++ix) {
            if (ix) out << ' ';
            const double v = grid.value(ix, iy);
            out << (std::isnan(v) ? std::string("nan") : detail::fmt_double(v));
        }
        out << '\n';
    }
    std::ofstream f(path, std::ios::binary);
    detail::require_stream(f, "write_csv: open", path);
    f << out.str();
    f.flush();
    detail::require_stream(f, "write_csv: write", path);
}

inline PhaseGrid read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    detail::require_stream(f, "read_csv: open", path);
    std::string header;
    std::getline(f, header);
    detail::require_stream(f, "read_csv: header", path);
    if (header.rfind("# ", 0) != 0)
        throw std::runtime_error("read_csv: missing header comment in '" + path + "'");

    PhaseGrid grid;
    std::istringstream hs(header.substr(2));
    std::string token;
    while (hs >> token) {
        const auto sep = token.find('=');
        if (sep == std::string::npos)
            throw std::runtime_error("read_csv: malformed header token '" + token +
                                     "' in '" + path + "'");
        const std::string key = token.substr(0, sep);
        const std::string val = token.substr(sep + 1);
        if (key == "x") grid.x_axis.name = val;
        else if (key == "y") grid.y_axis.name = val;
        else if (key == "x_lo") grid.x_axis.lo = std::stod(val);
        else if (key == "x_hi") grid.x_axis.hi = std::stod(val);
        else if (key == "x_n") grid.x_axis.n = std::stoi(val);
        else if (key == "y_lo") grid.y_axis.lo = std::stod(val);
        else if (key == "y_hi") grid.y_axis.hi = std::stod(val);
        else if (key == "y_n") grid.y_axis.n = std::stoi(val);
        else grid.meta.emplace_back(key, val);
    }
    if (grid.x_axis.n < 1 || grid.y_axis.n < 1)
        throw std::runtime_error("read_csv: missing axis sizes in '" + path + "'");

    std::string flag_line;
    std::getline(f, flag_line);
    detail::require_stream(f, "read_csv: flag line", path);
    const std::string prefix = "# flags=";
    if (flag_line.rfind(prefix, 0) != 0)
        throw std::runtime_error("read_csv: missing flag line in '" + path + "'");
    const std::string flag_chars = flag_line.substr(prefix.size());
    grid.flags.reserve(flag_chars.size());
    for (char c : flag_chars) grid.flags.push_back(flag_from_char(c));

    grid.cells.reserve(grid.flags.size());
    std::string cell;
    while (f >> cell)
        grid.cells.push_back(cell == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                           : std::stod(cell));
    grid.validate();
    return grid;
}

inline void write_json(const PhaseGrid& grid, const std::string& path) {
    grid.validate();
    nlohmann::ordered_json j;
    j["schema"] = "phase-grid/1";
    j["x_axis"] = {{"name", grid.x_axis.name},
                   {"lo", grid.x_axis.lo},
                   {"hi", grid.x_axis.hi},
                   {"n", grid.x_axis.n}};
    j["y_axis"] = {{"name", grid.y_axis.name},
                   {"lo", grid.y_axis.lo},
                   {"hi", grid.y_axis.hi},
                   {"n", grid.y_axis.n}};
    auto cells = nlohmann::ordered_json::array();
    for (double v : grid.cells) {
        if (std::isnan(v))
            cells.push_back(nullptr);
        else
            cells.push_back(v);
    }
    j["cells"] = std::move(cells);
    j["flags"] = detail::flags_string(grid);
    auto meta = nlohmann::ordered_json::object();
    for (const auto& kv : grid.meta) meta[kv.first] = kv.second;
    j["meta"] = std::move(meta);

    std::ofstream f(path, std::ios::binary);
    detail::require_stream(f, "write_json: open", path);
    f << j.dump(2) << '\n';
    f.flush();
    detail::require_stream(f, "write_json: write", path);
}

inline PhaseGrid read_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    detail::require_stream(f, "read_json: open", path);
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(f);
    } catch (const std::exception& e) {
        throw std::runtime_error("read_json: parse failed for '" + path +
                                 "': " + e.what());
    }
    if (!j.contains("schema") || j["schema"] != "phase-grid/1")
        throw std::runtime_error("read_json: unsupported schema in '" + path + "'");

    PhaseGrid grid;
    auto load_axis = [&](const char* key, GridAxis& axis) {
        const auto& a = j.at(key);
        axis.name = a.at("name").get<std::string>();
        axis.lo = a.at("lo").get<double>();
        axis.hi = a.at("hi").get<double>();
        axis.n = a.at("n").get<int>();
    };
    load_axis("x_axis", grid.x_axis);
    load_axis("y_axis", grid.y_axis);
    for (const auto& c : j.at("cells"))
        grid.cells.push_back(c.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                         : c.get<double>());
    for (char c : j.at("flags").get<std::string>())
        grid.flags.push_back(flag_from_char(c));
    for (const auto& kv : j.at("meta").items())
        grid.meta.emplace_back(kv.key(), kv.value().get<std::string>());
    grid.validate();
    return grid;
}

// Binary P6 image, one pixel per cell. Finite cells map linearly onto the
// black-to-white ramp spanned by the finite min/max; error cells are pure
// red. Bytes are a pure function of the grid contents.
inline void write_ppm(const PhaseGrid& grid, const std::string& path) {
    grid.validate();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : grid.cells)
        if (!std::isnan(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }

    std::string body;
    body.reserve(grid.cells.size() * 3);
    for (double v : grid.cells) {
        if (std::isnan(v)) {
            body.push_back(static_cast<char>(255));
            body.push_back(static_cast<char>(0));
            body.push_back(static_cast<char>(0));
            continue;
        }
        double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const auto g = static_cast<unsigned char>(std::lround(255.0 * t));
        body.push_back(static_cast<char>(g));
        body.push_back(static_cast<char>(g));
        body.push_back(static_cast<char>(g));
    }

    std::ofstream f(path, std::ios::binary);
    detail::require_stream(f, "write_ppm: open", path);
    f << "P6\n" << grid.x_axis.n << ' ' << grid.y_axis.n << "\n255\n";
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    f.flush();
    detail::require_stream(f, "write_ppm: write", path);
}

} // namespace ptkitaev
