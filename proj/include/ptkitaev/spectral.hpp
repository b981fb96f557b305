/*
 * spectral.hpp — PT-phase classification along the gain-loss axis.
 *
 * "Broken" means max_k |Im λ_k| > eps with eps = 1e−8·J by default: far above
 * the eigensolver residual, far below any physical scale. γ = 0 is classified
 * unbroken by fiat (the Hamiltonian is Hermitian there), so eps-level noise
 * can never flip the origin.
 *
 * Two related but distinct questions get separate operations:
 *   pt_threshold_first — the smallest γ where the spectrum first turns
 *                        complex (coarse ascending scan, then bisection);
 *   pt_intervals       — the full decomposition of [0, γ_max] into maximal
 *                        real-spectrum intervals, which is what detects
 *                        re-entrant PT phases (count ≥ 2).
 * lambda_value is the heat-map scalar Λ = log10(max_k Im λ_k / J), clamped
 * to `floor_log10` when the spectrum is numerically real.
 */

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ptkitaev/eigensolver.hpp"
#include "ptkitaev/errors.hpp"
#include "ptkitaev/model.hpp"
#include "ptkitaev/params.hpp"

namespace ptkitaev {

namespace defaults {
inline constexpr double eps_per_j = 1e-8;    // imaginary-part cutoff, units of J
inline constexpr double tol_per_j = 1e-6;    // bisection tolerance, units of J
inline constexpr double gamma_max_per_j = 4.0;
inline constexpr int threshold_scan = 400;   // coarse-scan points for thresholds
inline constexpr int interval_scan = 800;    // coarse-scan points for intervals
inline constexpr double lambda_floor = -16.0;
} // namespace defaults

// ── Phase predicate ───────────────────────────────────────────────────────────

inline bool is_pt_broken(const ChainParams& p, double eps) {
    p.validate(/*require_gain_site=*/true);
    if (!(eps > 0.0))
        throw ParameterError("is_pt_broken: eps must be positive");
    if (p.gain_loss == 0.0) return false;  // Hermitian by construction
    const EigenSystem es = eigendecompose(build_hk(p));
    return es.values.imag().cwiseAbs().maxCoeff() > eps;
}

inline bool is_pt_broken(const ChainParams& p) {
    return is_pt_broken(p, defaults::eps_per_j * p.hopping);
}

// ── First-breaking threshold ──────────────────────────────────────────────────

struct ThresholdResult {
    double gamma_th = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};  // unbroken at lo, broken at hi
    bool broken_at_zero = false;
    bool capped = false;
};

// Smallest γ ∈ [0, gamma_max] with a complex spectrum: ascending coarse scan
// (n_scan steps) brackets the first transition, bisection narrows it to tol;
// gamma_th is the final bracket midpoint. capped: no breaking below gamma_max.
// broken_at_zero: broken already at the first scan point and at γ = tol.
inline ThresholdResult pt_threshold_first(const ChainParams& base, double gamma_max,
                                          double tol, double eps,
                                          int n_scan = defaults::threshold_scan) {
    base.validate(/*require_gain_site=*/true);
    if (base.n_sites < 2)
        throw ParameterError("pt_threshold_first: need n_sites >= 2");
    if (!(gamma_max > 0.0) || !(tol > 0.0) || !(eps > 0.0) || n_scan < 2)
        throw ParameterError("pt_threshold_first: gamma_max, tol, eps must be positive; n_scan >= 2");

    auto broken = [&](double gamma) { return is_pt_broken(base.with_gamma(gamma), eps); };

    const double step = gamma_max / static_cast<double>(n_scan);
    double lo = 0.0, hi = -1.0;
    for (int k = 1; k <= n_scan; ++k) {
        const double g = gamma_max * static_cast<double>(k) / static_cast<double>(n_scan);
        if (broken(g)) {
            hi = g;
            lo = gamma_max * static_cast<double>(k - 1) / static_cast<double>(n_scan);
            break;
        }
    }
    ThresholdResult r;
    if (hi < 0.0) {
        r.gamma_th = gamma_max;
        r.bracket = {gamma_max, gamma_max};
        r.capped = true;
        return r;
    }
    if (lo == 0.0 && hi <= step * 1.5 && broken(tol)) {
        r.gamma_th = 0.0;
        r.bracket = {0.0, tol};
        r.broken_at_zero = true;
        return r;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (broken(mid))
            hi = mid;
        else
            lo = mid;
    }
    r.gamma_th = 0.5 * (lo + hi);
    r.bracket = {lo, hi};
    return r;
}

inline ThresholdResult pt_threshold_first(const ChainParams& base) {
    const double j = base.hopping;
    return pt_threshold_first(base, defaults::gamma_max_per_j * j, defaults::tol_per_j * j,
                              defaults::eps_per_j * j);
}

// ── Full PT interval structure ────────────────────────────────────────────────

struct PtIntervals {
    std::vector<std::pair<double, double>> intervals;  // maximal real-spectrum intervals
    std::vector<double> boundary_points;               // refined transition γ values
};

// Scans γ on a uniform (n_scan+1)-point grid over [0, gamma_max], refines each
// phase flip by bisection, and assembles the PT-symmetric intervals. Features
// narrower than gamma_max/n_scan can be missed; n_scan is the caller's knob.
inline PtIntervals pt_intervals(const ChainParams& base, double gamma_max, int n_scan,
                                double tol, double eps) {
    base.validate(/*require_gain_site=*/true);
    if (base.n_sites < 2)
        throw ParameterError("pt_intervals: need n_sites >= 2");
    if (!(gamma_max > 0.0) || !(tol > 0.0) || !(eps > 0.0))
        throw ParameterError("pt_intervals: gamma_max, tol, eps must be positive");
    if (n_scan < 100)
        throw ParameterError("pt_intervals: need n_scan >= 100");

    auto broken = [&](double gamma) { return is_pt_broken(base.with_gamma(gamma), eps); };

    PtIntervals out;
    bool prev = false;  // γ = 0 is unbroken by fiat
    double open_start = 0.0;
    for (int k = 1; k <= n_scan; ++k) {
        const double g_prev = gamma_max * static_cast<double>(k - 1) / static_cast<double>(n_scan);
        const double g = gamma_max * static_cast<double>(k) / static_cast<double>(n_scan);
        const bool cur = broken(g);
        if (cur != prev) {
            double lo = g_prev, hi = g;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                if (broken(mid) == cur)
                    hi = mid;
                else
                    lo = mid;
            }
            const double boundary = 0.5 * (lo + hi);
            out.boundary_points.push_back(boundary);
            if (cur)
                out.intervals.emplace_back(open_start, boundary);  // real interval closes
            else
                open_start = boundary;  // real interval reopens
            prev = cur;
        }
    }
    if (!prev) out.intervals.emplace_back(open_start, gamma_max);
    return out;
}

inline PtIntervals pt_intervals(const ChainParams& base) {
    const double j = base.hopping;
    return pt_intervals(base, defaults::gamma_max_per_j * j, defaults::interval_scan,
                        defaults::tol_per_j * j, defaults::eps_per_j * j);
}

// ── Heat-map scalar ───────────────────────────────────────────────────────────

// Λ = log10(max_k Im λ_k / J); values at or below 10^floor_log10·J (including
// any non-positive max Im) report the floor. γ = 0 is Hermitian and reports
// the floor by fiat; at γ > 0 a real-spectrum cell lands within solver noise
// (~1e−15·J) of the floor rather than exactly on it.
inline double lambda_value(const ChainParams& p, double floor_log10 = defaults::lambda_floor) {
    p.validate(/*require_gain_site=*/true);
    if (!(floor_log10 < 0.0))
        throw ParameterError("lambda_value: floor must be negative");
    if (p.gain_loss == 0.0) return floor_log10;
    const EigenSystem es = eigendecompose(build_hk(p));
    const double max_im = es.values.imag().maxCoeff();
    const double floor_abs = std::pow(10.0, floor_log10) * p.hopping;
    if (max_im <= floor_abs) return floor_log10;
    return std::log10(max_im / p.hopping);
}

} // namespace ptkitaev
