#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ptkitaev/eigensolver.hpp"
#include "ptkitaev/errors.hpp"
#include "ptkitaev/model.hpp"
#include "ptkitaev/parallel.hpp"
#include "ptkitaev/params.hpp"
#include "ptkitaev/spectral.hpp"
#include "ptkitaev/types.hpp"

namespace ptkitaev {

// |<psi_p|psi_q>| for unit-normalized right eigenvectors. Symmetric with
// unit diagonal; entries in [0, 1] up to round-off.
inline RealMatrix overlap_matrix(const EigenSystem& es) {
    const ComplexMatrix& v = es.vectors;
    const int n = static_cast<int>(v.cols());
    for (int q = 0; q < n; ++q)
        if (!(v.col(q).norm() > 0.0))
            throw ConsistencyError("overlap_matrix: zero-norm eigenvector column");
    RealMatrix m = (v.adjoint() * v).cwiseAbs();
    // symmetrize and pin the diagonal so round-off cannot leak through
    m = ((m + m.transpose()) / 2.0).eval();
    for (int q = 0; q < n; ++q) m(q, q) = 1.0;
    return m;
}

struct EpReport {
    double overlap_max_rowsum = 0.0;        // max_p sum_{q != p} M_pq
    int estimated_order = 1;                // 1 means no coalescence found
    std::vector<int> coalescing_indices;    // dominant cluster, row index first
};

namespace detail {

// Eigen pipelines report arbitrary mixtures inside a degenerate eigenspace,
// which would mimic coalescence. Re-orthogonalize clusters of real,
// near-equal eigenvalues in place; genuinely defective (exceptional) points
// evaluated a finite distance away split much faster than deg_tol and are
// left alone.
inline void orthogonalize_real_clusters(EigenSystem& es, double deg_tol) {
    const int n = static_cast<int>(es.values.size());
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (std::abs(es.values[i].imag()) <= deg_tol) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return es.values[a].real() < es.values[b].real();
    });

    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t stop = start;
        while (stop + 1 < order.size() &&
               es.values[order[stop + 1]].real() - es.values[order[stop]].real() <= deg_tol)
            ++stop;
        const std::size_t size = stop - start + 1;
        if (size >= 2) {
            ComplexMatrix block(es.vectors.rows(), static_cast<Eigen::Index>(size));
            for (std::size_t c = 0; c < size; ++c)
                block.col(static_cast<Eigen::Index>(c)) = es.vectors.col(order[start + c]);
            Eigen::HouseholderQR<ComplexMatrix> qr(block);
            ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(
                                                      block.rows(), block.cols());
            for (std::size_t c = 0; c < size; ++c)
                es.vectors.col(order[start + c]) = q.col(static_cast<Eigen::Index>(c));
        }
        start = stop + 1;
    }
}

} // namespace detail

// Estimates the order of an exceptional point at (or numerically adjacent
// to) the given parameters from right-eigenvector overlaps: order is one
// plus the count of near-unit off-diagonal overlaps in the strongest row.
// The raw rowsum is reported as well since it degrades smoothly off the
// exact coalescence point.
inline EpReport ep_order(const ChainParams& params, double cutoff = 0.99,
                         double deg_tol = -1.0) {
    params.validate();
    if (!(cutoff > 0.0) || !(cutoff < 1.0))
        throw ParameterError("ep_order: cutoff must lie in (0, 1)");
    if (deg_tol < 0.0) deg_tol = defaults::eps_per_j * params.hopping;

    EigenSystem es = eigendecompose(build_hk(params));
    detail::orthogonalize_real_clusters(es, deg_tol);
    const RealMatrix m = overlap_matrix(es);

    const int n = static_cast<int>(m.rows());
    EpReport report;
    int best_row = 0;
    double best_sum = -1.0;
    for (int p = 0; p < n; ++p) {
        double s = 0.0;
        for (int q = 0; q < n; ++q)
            if (q != p) s += m(p, q);
        if (s > best_sum) {
            best_sum = s;
            best_row = p;
        }
    }
    report.overlap_max_rowsum = best_sum;
    report.coalescing_indices.push_back(best_row);
    for (int q = 0; q < n; ++q)
        if (q != best_row && m(best_row, q) > cutoff)
            report.coalescing_indices.push_back(q);
    report.estimated_order = static_cast<int>(report.coalescing_indices.size());
    return report;
}

// One refined crossing of the conjugate-pair count along a single grid
// edge. axis names the coordinate that was bisected; pairs_low/pairs_high
// are the counts just below and above the crossing along that axis.
struct ContourPoint {
    double sc_order = 0.0;
    double gain_loss = 0.0;
    int pairs_low = 0;
    int pairs_high = 0;
    double rowsum = 0.0;
    char axis = 'g';  // 'd' = crossed along delta, 'g' = along gamma
};

namespace detail {

inline int pair_count_at(const ChainParams& base, double delta, double gamma,
                         double eps) {
    ChainParams p = base;
    p.sc_order = delta;
    p.gain_loss = gamma;
    return classify_spectrum(eigendecompose(build_hk(p)).values, eps).pair_count;
}

} // namespace detail

// Scans the (delta, gamma) grid for changes in the conjugate-pair count and
// refines each changing edge by bisection to pos_tol. Points are annotated
// with the overlap rowsum evaluated at the refined location. Output order
// is a fixed function of the grid (delta-direction edges first, row-major),
// independent of the worker count.
inline std::vector<ContourPoint> ep_contours(const ChainParams& base,
                                             const ScanRange& delta_range,
                                             const ScanRange& gamma_range,
                                             double eps = -1.0,
                                             double pos_tol = -1.0,
                                             int workers = 0) {
    base.validate(true);
    delta_range.validate("ep_contours: delta_range");
    gamma_range.validate("ep_contours: gamma_range");
    if (eps < 0.0) eps = defaults::eps_per_j * base.hopping;
    if (pos_tol <= 0.0) pos_tol = 1e-6 * base.hopping;

    const int nd = delta_range.n;
    const int ng = gamma_range.n;

    // pass 1: pair counts on the full grid, cells independent
    std::vector<int> counts(static_cast<std::size_t>(nd) * static_cast<std::size_t>(ng));
    parallel_for_indexed(nd * ng, workers, [&](int idx) {
        const int i = idx % nd;
        const int j = idx / nd;
        counts[static_cast<std::size_t>(idx)] =
            detail::pair_count_at(base, delta_range.at(i), gamma_range.at(j), eps);
    });
    auto count_at = [&](int i, int j) {
        return counts[static_cast<std::size_t>(j) * static_cast<std::size_t>(nd) +
                      static_cast<std::size_t>(i)];
    };

    // pass 2: collect changing edges in canonical order
    struct Edge {
        double fixed;  // the coordinate held constant
        double lo, hi;
        int c_lo, c_hi;
        char axis;
    };
    std::vector<Edge> edges;
    for (int j = 0; j < ng; ++j)
        for (int i = 0; i + 1 < nd; ++i)
            if (count_at(i, j) != count_at(i + 1, j))
                edges.push_back({gamma_range.at(j), delta_range.at(i), delta_range.at(i + 1),
                                 count_at(i, j), count_at(i + 1, j), 'd'});
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j + 1 < ng; ++j)
            if (count_at(i, j) != count_at(i, j + 1))
                edges.push_back({delta_range.at(i), gamma_range.at(j), gamma_range.at(j + 1),
                                 count_at(i, j), count_at(i, j + 1), 'g'});

    // pass 3: refine each edge independently
    std::vector<ContourPoint> points(edges.size());
    parallel_for_indexed(static_cast<int>(edges.size()), workers, [&](int idx) {
        const Edge& e = edges[static_cast<std::size_t>(idx)];
        double lo = e.lo, hi = e.hi;
        int c_lo = e.c_lo, c_hi = e.c_hi;
        auto eval = [&](double x) {
            return e.axis == 'd' ? detail::pair_count_at(base, x, e.fixed, eps)
                                 : detail::pair_count_at(base, e.fixed, x, eps);
        };
        while (hi - lo > pos_tol) {
            const double mid = (lo + hi) / 2.0;
            const int c_mid = eval(mid);
            if (c_mid == c_lo) {
                lo = mid;
            } else {
                hi = mid;
                c_hi = c_mid;
            }
        }
        ContourPoint pt;
        const double cross = (lo + hi) / 2.0;
        pt.sc_order = e.axis == 'd' ? cross : e.fixed;
        pt.gain_loss = e.axis == 'd' ? e.fixed : cross;
        pt.pairs_low = c_lo;
        pt.pairs_high = c_hi;
        pt.axis = e.axis;
        ChainParams at = base;
        at.sc_order = pt.sc_order;
        at.gain_loss = pt.gain_loss;
        pt.rowsum = ep_order(at).overlap_max_rowsum;
        points[static_cast<std::size_t>(idx)] = pt;
    });
    return points;
}

} // namespace ptkitaev
