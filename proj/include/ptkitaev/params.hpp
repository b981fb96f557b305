/*
 * params.hpp — chain parameters and scan ranges.
 *
 * ChainParams bundles every knob of the PT-symmetric Kitaev chain:
 *   n_sites (N), hopping (J > 0, the global energy scale), onsite (μ),
 *   sc_order (δ, p-wave pairing), gain_loss (γ ≥ 0), gain_site (m0),
 *   boundary. The balanced loss site is always the mirror N+1−m0.
 *
 * Energies are stored in absolute units; J only defines the reporting scale.
 */

#pragma once

#include <cmath>
#include <string>

#include "ptkitaev/errors.hpp"

namespace ptkitaev {

enum class Boundary { Open, Periodic };

inline std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

struct ChainParams {
    int n_sites = 2;          // N ≥ 1
    double hopping = 1.0;     // J > 0
    double onsite = 0.0;      // μ (any sign; plots usually use μ ≥ 0)
    double sc_order = 0.0;    // δ (any sign; δ ↦ −δ is a unitary symmetry)
    double gain_loss = 0.0;   // γ ≥ 0
    int gain_site = 1;        // m0; loss mirrored at N+1−m0
    Boundary boundary = Boundary::Open;

    int loss_site() const { return n_sites + 1 - gain_site; }
    int dim() const { return 2 * n_sites; }

    ChainParams with_gamma(double gamma) const {
        ChainParams q = *this;
        q.gain_loss = gamma;
        return q;
    }

    // m0 ∈ [1, floor(N/2)] is required whenever a gain/loss pair is actually
    // placed (γ ≠ 0, or the caller scans γ); a zero-strength pair has no
    // location, so pure matrix construction at γ = 0 accepts any m0.
    void validate(bool require_gain_site = false) const {
        if (n_sites < 1)
            throw ParameterError("ChainParams: n_sites must be >= 1, got " + std::to_string(n_sites));
        if (!(hopping > 0.0) || !std::isfinite(hopping))
            throw ParameterError("ChainParams: hopping must be positive and finite");
        if (!std::isfinite(onsite) || !std::isfinite(sc_order) || !std::isfinite(gain_loss))
            throw ParameterError("ChainParams: onsite/sc_order/gain_loss must be finite");
        if (gain_loss < 0.0)
            throw ParameterError("ChainParams: gain_loss must be non-negative");
        if (gain_loss != 0.0 || require_gain_site) {
            const int m_max = n_sites / 2;
            if (gain_site < 1 || gain_site > m_max)
                throw ParameterError("ChainParams: gain_site must lie in [1, " +
                                     std::to_string(m_max) + "], got " + std::to_string(gain_site));
        }
    }
};

// ── Scan ranges ───────────────────────────────────────────────────────────────

// Closed interval [lo, hi] sampled at n uniformly spaced points (n == 1 → lo).
struct ScanRange {
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;

    void validate(const char* name) const {
        if (n < 1)
            throw ParameterError(std::string(name) + ": need n >= 1, got " + std::to_string(n));
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
            throw ParameterError(std::string(name) + ": need finite lo <= hi");
    }

    double at(int i) const {
        if (n == 1) return lo;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
};

} // namespace ptkitaev
