/*
 * analytic.hpp — closed-form results used as independent oracles.
 *
 * Five-site chain, μ = 0, gain at the edge (m0 = 1) or next to it (m0 = 2):
 * the 10 BdG eigenvalues are two zeros plus four doubly degenerate roots
 *
 *   E = ∓ (1/2√2) · sqrt( 4(J²+δ²) − γ² ± sqrt(A) ),
 *     A(m0=1) = 4(J²−δ²)² + γ⁴
 *     A(m0=2) = 4(J²−δ²)² + γ⁴ − 8γ²(J²+δ²)
 *
 * with principal complex square roots (negative radicands give the broken
 * branch). The matching PT thresholds:
 *
 *   γ_th(m0=1) = sqrt( (3δ⁴ + 10δ²J² + 3J⁴) / (2(δ²+J²)) )      (monotone in δ)
 *   γ_th(m0=2) = sqrt( 4(J²+δ²) − 2·sqrt(3δ⁴ + 10δ²J² + 3J⁴) )  (non-monotone;
 *                radicand ≤ 0 means the PT phase is closed, threshold 0)
 *
 * Every form here is cross-validated against direct diagonalization by the
 * test suite and the `analytic-check` CLI table. Algebraic variants that
 * fail that cross-check are kept in `rejected_variants` so the check table
 * can show the rejection margin instead of silently dropping them.
 *
 * degeneracy_alpha covers the Hermitian level-crossing lines of the open
 * chain: with quasimomenta q_k = πk/(N+1),
 *   a1 = cos q_k − cos q_{k−1},  a2 = a1·(cos q_k + cos q_{k−1}),
 *   α = a1/|a2| = 1/|cos q_k + cos q_{k−1}|  →  0.5 for band-edge k, N → ∞,
 * and zero_threshold_line inverts α·μ·J = |J² − δ²| for the boundary δ.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ptkitaev/errors.hpp"
#include "ptkitaev/types.hpp"

namespace ptkitaev {

namespace detail {

inline void require_n5_regime(double j, double delta, double gamma, const char* fn) {
    if (!(j > 0.0) || !std::isfinite(j))
        throw ParameterError(std::string(fn) + ": hopping must be positive and finite");
    if (!std::isfinite(delta) || !std::isfinite(gamma))
        throw ParameterError(std::string(fn) + ": delta and gamma must be finite");
    if (gamma < 0.0)
        throw ParameterError(std::string(fn) + ": gamma must be non-negative");
}

// 2 zeros + the four ∓/± roots, each doubly degenerate; sorted by (Re, Im).
inline std::array<Complex, 10> n5_spectrum_from_discriminant(double j, double delta,
                                                             double gamma, Complex a) {
    const Complex sqrt_a = std::sqrt(a);
    const Complex base(4.0 * (j * j + delta * delta) - gamma * gamma, 0.0);
    const double inv = 1.0 / (2.0 * std::sqrt(2.0));

    std::array<Complex, 10> out{};
    int idx = 0;
    for (int s_in : {+1, -1}) {
        const Complex root = inv * std::sqrt(base + static_cast<double>(s_in) * sqrt_a);
        for (int s_out : {+1, -1}) {
            out[idx++] = static_cast<double>(s_out) * root;
            out[idx++] = static_cast<double>(s_out) * root;
        }
    }
    out[8] = Complex(0.0, 0.0);
    out[9] = Complex(0.0, 0.0);
    std::sort(out.begin(), out.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

inline double n5_threshold_radicand(double j, double delta) {
    const double d2 = delta * delta, j2 = j * j;
    return 3.0 * d2 * d2 + 10.0 * d2 * j2 + 3.0 * j2 * j2;
}

} // namespace detail

// ── Five-site closed forms ────────────────────────────────────────────────────

inline std::array<Complex, 10> n5_spectrum_m1(double j, double delta, double gamma) {
    detail::require_n5_regime(j, delta, gamma, "n5_spectrum_m1");
    const double d = j * j - delta * delta;
    const Complex a(4.0 * d * d + gamma * gamma * gamma * gamma, 0.0);
    return detail::n5_spectrum_from_discriminant(j, delta, gamma, a);
}

inline std::array<Complex, 10> n5_spectrum_m2(double j, double delta, double gamma) {
    detail::require_n5_regime(j, delta, gamma, "n5_spectrum_m2");
    const double d = j * j - delta * delta;
    const double g2 = gamma * gamma;
    const Complex a(4.0 * d * d + g2 * g2 - 8.0 * g2 * (j * j + delta * delta), 0.0);
    return detail::n5_spectrum_from_discriminant(j, delta, gamma, a);
}

inline double n5_threshold_m1(double j, double delta) {
    detail::require_n5_regime(j, delta, 0.0, "n5_threshold_m1");
    return std::sqrt(detail::n5_threshold_radicand(j, delta) /
                     (2.0 * (delta * delta + j * j)));
}

struct N5Threshold {
    double gamma_th = 0.0;
    bool closed = false;  // radicand ≤ 0: PT phase closed, threshold pinned at 0
};

inline N5Threshold n5_threshold_m2(double j, double delta) {
    detail::require_n5_regime(j, delta, 0.0, "n5_threshold_m2");
    const double r =
        4.0 * (j * j + delta * delta) - 2.0 * std::sqrt(detail::n5_threshold_radicand(j, delta));
    if (r <= 0.0) return {0.0, true};
    return {std::sqrt(r), false};
}

// ── Rejected algebraic variants ───────────────────────────────────────────────

// These variants fail the diagonalization cross-check by O(1); they exist so
// `analytic-check` can report the rejection margin next to the adopted forms.
namespace rejected_variants {

// m0=1 threshold without the outer square root (dimensionally a γ²/J).
inline double n5_threshold_m1_no_outer_root(double j, double delta) {
    detail::require_n5_regime(j, delta, 0.0, "n5_threshold_m1_no_outer_root");
    return detail::n5_threshold_radicand(j, delta) / (2.0 * j * (delta * delta + j * j));
}

// m0=2 discriminant with a γ² cross term in place of the δ² one.
inline std::array<Complex, 10> n5_spectrum_m2_gamma_cross(double j, double delta, double gamma) {
    detail::require_n5_regime(j, delta, gamma, "n5_spectrum_m2_gamma_cross");
    const double d = j * j - delta * delta;
    const double g2 = gamma * gamma;
    const Complex a(4.0 * d * d + g2 * g2 - 8.0 * g2 * (j * j + g2), 0.0);
    return detail::n5_spectrum_from_discriminant(j, delta, gamma, a);
}

} // namespace rejected_variants

// ── Hermitian degeneracy lines ────────────────────────────────────────────────

struct DegeneracyLine {
    int k = 0;
    double a1 = 0.0;
    double a2 = 0.0;
    double alpha = 0.0;  // 1/|cos q_k + cos q_{k−1}|; +inf when the sum vanishes
};

inline DegeneracyLine degeneracy_alpha(int k, int n_sites) {
    if (n_sites < 2 || k < 2 || k > n_sites)
        throw ParameterError("degeneracy_alpha: need 2 <= k <= n_sites");
    constexpr double pi = 3.14159265358979323846;
    const double qk = pi * static_cast<double>(k) / static_cast<double>(n_sites + 1);
    const double qm = pi * static_cast<double>(k - 1) / static_cast<double>(n_sites + 1);
    DegeneracyLine line;
    line.k = k;
    line.a1 = std::cos(qk) - std::cos(qm);
    // q_k and q_{k-1} mirror about π/2 exactly when 2k-1 = n+1; the cosine sum
    // vanishes there and rounding must not turn that into a huge finite slope.
    const double s = (2 * k - 1 == n_sites + 1) ? 0.0 : std::cos(qk) + std::cos(qm);
    line.a2 = line.a1 * s;
    line.alpha = s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(s);
    return line;
}

// δ values solving α·μ·J = |J² − δ²|, i.e. δ² = J² ± α·μ·J where that is
// non-negative. Sorted, deduplicated (μ = 0 collapses both branches onto δ=J).
inline std::vector<double> zero_threshold_line(double mu, double j, double alpha) {
    if (!(j > 0.0) || !std::isfinite(j) || !std::isfinite(mu))
        throw ParameterError("zero_threshold_line: need finite mu and positive j");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("zero_threshold_line: alpha must be positive and finite");
    std::vector<double> out;
    for (double d2 : {j * j - alpha * mu * j, j * j + alpha * mu * j})
        if (d2 >= 0.0) out.push_back(std::sqrt(d2));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ptkitaev
