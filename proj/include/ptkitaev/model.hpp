/*
 * model.hpp — Hamiltonian builders for the PT-symmetric Kitaev chain.
 *
 * Single-particle BdG representation on N sites, basis site-major with
 * (particle, hole) inner ordering: index 2(n−1)+s, s ∈ {0, 1}.
 *
 * Hermitian part (open chain; the periodic variant adds the N→1 bond):
 *   on-site     −(μ/2) σ_z            at every site
 *   hopping     −(J/2) σ_z            on bonds (n, n+1), both directions
 *   pairing     +(iδ/2) σ_x on |n⟩⟨n+1|,  −(iδ/2) σ_x on |n+1⟩⟨n|
 *
 * Non-Hermitian part: balanced gain/loss
 *   +(iγ/2) σ_z at site m0,  −(iγ/2) σ_z at the mirror site N+1−m0.
 *
 * The full chain H = H_bdg + iΓ commutes with PT, where P is the site
 * mirror (⊗ identity on the particle-hole factor) and T is complex
 * conjugation. Bulk dispersion: E±(p) = ±√((J cos p + μ/2)² + δ² sin² p).
 */

#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "ptkitaev/errors.hpp"
#include "ptkitaev/params.hpp"
#include "ptkitaev/types.hpp"

namespace ptkitaev {

// ── Hamiltonian builders ──────────────────────────────────────────────────────

// Hermitian BdG matrix (gain_loss field ignored). Exactly Hermitian by
// construction: every entry is placed together with its conjugate partner.
inline ComplexMatrix build_hbdg(const ChainParams& p) {
    p.validate();
    const int n = p.n_sites;
    const double j2 = p.hopping / 2.0;
    const double mu2 = p.onsite / 2.0;
    const Complex d2(0.0, p.sc_order / 2.0);

    ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
    for (int s = 0; s < n; ++s) {
        const int i = 2 * s;
        h(i, i) = -mu2;
        h(i + 1, i + 1) = mu2;
    }
    const int n_bonds = (p.boundary == Boundary::Periodic && n > 1) ? n : n - 1;
    for (int b = 0; b < n_bonds; ++b) {
        const int i = 2 * b;              // site n = b+1
        const int j = 2 * ((b + 1) % n);  // site n+1 (wraps on the last periodic bond)
        // hopping −(J/2) σ_z, same block on both bond directions
        h(i, j) += -j2;
        h(j, i) += -j2;
        h(i + 1, j + 1) += j2;
        h(j + 1, i + 1) += j2;
        // pairing ±(iδ/2) σ_x, sign tied to the bond direction
        h(i, j + 1) += d2;
        h(i + 1, j) += d2;
        h(j, i + 1) += -d2;
        h(j + 1, i) += -d2;
    }
    return h;
}

// Anti-Hermitian gain/loss matrix iΓ: +(iγ/2) σ_z at m0, −(iγ/2) σ_z at the
// mirror. Zero matrix for γ = 0 (a zero-strength pair has no location).
inline ComplexMatrix build_gain_loss(const ChainParams& p) {
    p.validate();
    ComplexMatrix g = ComplexMatrix::Zero(2 * p.n_sites, 2 * p.n_sites);
    if (p.gain_loss == 0.0) return g;
    const Complex ig2(0.0, p.gain_loss / 2.0);
    const int i = 2 * (p.gain_site - 1);
    const int k = 2 * (p.loss_site() - 1);
    g(i, i) = ig2;
    g(i + 1, i + 1) = -ig2;
    g(k, k) = -ig2;
    g(k + 1, k + 1) = ig2;
    return g;
}

// Full PT-symmetric chain H = H_bdg + iΓ.
inline ComplexMatrix build_hk(const ChainParams& p) {
    return build_hbdg(p) + build_gain_loss(p);
}

// ── Bulk dispersion ───────────────────────────────────────────────────────────

// E±(p) = ±√((J cos p + μ/2)² + δ² sin² p), the Hermitian bulk bands.
// Trig is evaluated centered at p = π (cos p = −cos(p−π), sin p = −sin(p−π))
// so the gap closing at p = π, μ = 2J is exact in floating point; accuracy
// elsewhere is unchanged. Periodic in p; γ plays no role.
inline std::pair<double, double> bulk_dispersion(double p, const ChainParams& params) {
    params.validate();
    if (!std::isfinite(p))
        throw ParameterError("bulk_dispersion: momentum must be finite");
    static constexpr double pi = 3.14159265358979323846;
    const double c = -std::cos(p - pi);
    const double s = -std::sin(p - pi);
    const double a = params.hopping * c + params.onsite / 2.0;
    const double b = params.sc_order * s;
    const double e = std::hypot(a, b);
    return {-e, e};
}

// ── Symmetry operators ────────────────────────────────────────────────────────

// parity: site mirror n ↔ N+1−n, identity on the particle-hole factor.
// chiral_s: 1_N ⊗ σ_z; satisfies H_bdg(−δ) = S H_bdg(δ) S†.
// Both are real, involutory (P² = S² = 1).
struct SymmetryOps {
    ComplexMatrix parity;
    ComplexMatrix chiral_s;
};

inline SymmetryOps make_symmetry_ops(int n_sites) {
    if (n_sites < 1)
        throw ParameterError("make_symmetry_ops: n_sites must be >= 1");
    const int dim = 2 * n_sites;
    SymmetryOps ops{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
    for (int n = 0; n < n_sites; ++n) {
        const int m = n_sites - 1 - n;
        ops.parity(2 * n, 2 * m) = 1.0;
        ops.parity(2 * n + 1, 2 * m + 1) = 1.0;
        ops.chiral_s(2 * n, 2 * n) = 1.0;
        ops.chiral_s(2 * n + 1, 2 * n + 1) = -1.0;
    }
    return ops;
}

// Max-absolute-entry norm of P·conj(H)·P − H; ≲ 1e−12·J certifies PT symmetry.
inline double check_pt_symmetry(const ComplexMatrix& h, const SymmetryOps& ops) {
    if (h.rows() != h.cols())
        throw ParameterError("check_pt_symmetry: matrix must be square");
    if (ops.parity.rows() != h.rows())
        throw ParameterError("check_pt_symmetry: operator/matrix dimension mismatch");
    return (ops.parity * h.conjugate() * ops.parity - h).cwiseAbs().maxCoeff();
}

} // namespace ptkitaev
