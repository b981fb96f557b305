#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ptkitaev/eigensolver.hpp"
#include "ptkitaev/model.hpp"

#include "test_util.hpp"

using namespace ptkitaev;
using ptk_test::multiset_mismatch;
using ptk_test::to_std;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;

ChainParams make_params(int n, double j, double mu, double delta, double gamma, int m0,
                        Boundary b = Boundary::Open) {
    ChainParams p;
    p.n_sites = n;
    p.hopping = j;
    p.onsite = mu;
    p.sc_order = delta;
    p.gain_loss = gamma;
    p.gain_site = m0;
    p.boundary = b;
    return p;
}
} // namespace

TEST_CASE("single site keeps only the on-site blocks") {
    const ComplexMatrix h = build_hbdg(make_params(1, 1.0, 2.0, 0.0, 0.0, 1));
    REQUIRE(h.rows() == 2);
    CHECK(h(0, 0) == Complex(-1.0, 0.0));
    CHECK(h(1, 1) == Complex(1.0, 0.0));
    CHECK(h(0, 1) == Complex(0.0, 0.0));
    CHECK(h(1, 0) == Complex(0.0, 0.0));
}

TEST_CASE("two-site hopping structure, site-major particle/hole ordering") {
    const ComplexMatrix h = build_hbdg(make_params(2, 1.0, 0.0, 0.0, 0.0, 1));
    REQUIRE(h.rows() == 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const Complex v = h(r, c);
            if ((r == 0 && c == 2) || (r == 2 && c == 0))
                CHECK(v == Complex(-0.5, 0.0));
            else if ((r == 1 && c == 3) || (r == 3 && c == 1))
                CHECK(v == Complex(0.5, 0.0));
            else
                CHECK(v == Complex(0.0, 0.0));
        }
}

TEST_CASE("pairing blocks carry ±iδ/2 off the particle/hole diagonal") {
    const ComplexMatrix h = build_hbdg(make_params(2, 1.0, 0.0, 2.0, 0.0, 1));
    CHECK(h(0, 3) == Complex(0.0, 1.0));
    CHECK(h(1, 2) == Complex(0.0, 1.0));
    CHECK(h(2, 1) == Complex(0.0, -1.0));
    CHECK(h(3, 0) == Complex(0.0, -1.0));
}

TEST_CASE("builders are exactly (anti-)Hermitian and PT-symmetric") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        const ChainParams p = ptk_test::random_params(rng);
        const ComplexMatrix h = build_hbdg(p);
        const ComplexMatrix g = build_gain_loss(p);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((g + g.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        const SymmetryOps ops = make_symmetry_ops(p.n_sites);
        CHECK(check_pt_symmetry(build_hk(p), ops) <= 1e-12 * p.hopping);
    }
}

TEST_CASE("gain/loss matrix matches its closed-form examples") {
    SECTION("N=2, m0=1, gamma=2: diag(+i,-i,-i,+i)") {
        const ComplexMatrix g = build_gain_loss(make_params(2, 1.0, 0.0, 0.0, 2.0, 1));
        CHECK(g(0, 0) == Complex(0.0, 1.0));
        CHECK(g(1, 1) == Complex(0.0, -1.0));
        CHECK(g(2, 2) == Complex(0.0, -1.0));
        CHECK(g(3, 3) == Complex(0.0, 1.0));
        CHECK(g.cwiseAbs().sum() == Approx(4.0));
    }
    SECTION("zero strength gives the zero matrix for any site index") {
        ChainParams p = make_params(5, 1.0, 0.3, 0.7, 0.0, 9);
        CHECK(build_gain_loss(p).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("N=5, m0=2: only site-2 and site-4 blocks populated") {
        const ComplexMatrix g = build_gain_loss(make_params(5, 1.0, 0.0, 0.0, 1.0, 2));
        CHECK(g(2, 2) == Complex(0.0, 0.5));
        CHECK(g(3, 3) == Complex(0.0, -0.5));
        CHECK(g(6, 6) == Complex(0.0, -0.5));
        CHECK(g(7, 7) == Complex(0.0, 0.5));
        CHECK(g.cwiseAbs().sum() == Approx(2.0));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_hbdg(make_params(0, 1.0, 0.0, 0.0, 0.0, 1)), ParameterError);
    CHECK_THROWS_AS(build_hbdg(make_params(4, 0.0, 0.0, 0.0, 0.0, 1)), ParameterError);
    CHECK_THROWS_AS(build_hbdg(make_params(4, -1.0, 0.0, 0.0, 0.0, 1)), ParameterError);
    CHECK_THROWS_AS(build_gain_loss(make_params(4, 1.0, 0.0, 0.0, -0.5, 1)), ParameterError);
    // out-of-range gain site only matters once a pair is actually placed
    CHECK_THROWS_AS(build_gain_loss(make_params(4, 1.0, 0.0, 0.0, 1.0, 3)), ParameterError);
    CHECK_THROWS_AS(build_gain_loss(make_params(4, 1.0, 0.0, 0.0, 1.0, 0)), ParameterError);
    CHECK_NOTHROW(build_gain_loss(make_params(4, 1.0, 0.0, 0.0, 0.0, 3)));
}

TEST_CASE("full chain is the sum of its parts; dimer blocks decouple") {
    const ChainParams p0 = make_params(6, 1.3, 0.4, 0.8, 0.0, 2);
    CHECK((build_hk(p0) - build_hbdg(p0)).cwiseAbs().maxCoeff() == 0.0);

    // N=2, μ=δ=0: two decoupled PT dimers with eigenvalues ±sqrt(J²−γ²)/2, each twice.
    const double j = 1.0, gamma = 0.6;
    const EigenSystem es = eigendecompose(build_hk(make_params(2, j, 0.0, 0.0, gamma, 1)));
    const double e = std::sqrt(j * j - gamma * gamma) / 2.0;
    const std::vector<Complex> expect = {{-e, 0.0}, {-e, 0.0}, {e, 0.0}, {e, 0.0}};
    CHECK(multiset_mismatch(to_std(es.values), expect) <= 1e-10);
}

TEST_CASE("mirror-asymmetric gain/loss placement breaks PT") {
    // gain at site 1, loss at site 2 of a 4-site chain (mirror would be site 4)
    ChainParams p = make_params(4, 1.0, 0.0, 0.0, 0.0, 1);
    ComplexMatrix h = build_hbdg(p);
    const double gamma = 0.8;
    h(0, 0) += Complex(0.0, gamma / 2.0);
    h(1, 1) -= Complex(0.0, gamma / 2.0);
    h(2, 2) -= Complex(0.0, gamma / 2.0);
    h(3, 3) += Complex(0.0, gamma / 2.0);
    CHECK(check_pt_symmetry(h, make_symmetry_ops(4)) > gamma / 4.0);
}

TEST_CASE("delta-sign symmetry: S H(δ) S = H(−δ), spectra coincide") {
    const ChainParams plus = make_params(7, 1.0, 0.6, 1.1, 0.0, 3);
    ChainParams minus = plus;
    minus.sc_order = -plus.sc_order;
    const SymmetryOps ops = make_symmetry_ops(7);
    const ComplexMatrix lhs = ops.chiral_s * build_hbdg(plus) * ops.chiral_s;
    CHECK((lhs - build_hbdg(minus)).cwiseAbs().maxCoeff() <= 1e-12);

    const auto ev_plus = to_std(eigendecompose(build_hbdg(plus)).values);
    const auto ev_minus = to_std(eigendecompose(build_hbdg(minus)).values);
    CHECK(multiset_mismatch(ev_plus, ev_minus) <= 1e-10);
}

TEST_CASE("symmetry operators are involutory") {
    const SymmetryOps ops = make_symmetry_ops(5);
    const ComplexMatrix id = ComplexMatrix::Identity(10, 10);
    CHECK((ops.parity * ops.parity - id).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops.chiral_s * ops.chiral_s - id).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(make_symmetry_ops(0), ParameterError);
    CHECK_THROWS_AS(check_pt_symmetry(ComplexMatrix::Zero(4, 4), make_symmetry_ops(3)),
                    ParameterError);
    CHECK_THROWS_AS(check_pt_symmetry(ComplexMatrix::Zero(2, 3), make_symmetry_ops(1)),
                    ParameterError);
}

TEST_CASE("spectral symmetries: particle-hole, conjugation, gain/loss swap") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const ChainParams p = ptk_test::random_params(rng);
        const auto ev = to_std(eigendecompose(build_hk(p)).values);
        const double scale = p.hopping;
        CHECK(multiset_mismatch(ev, ptk_test::negate_all(ev)) <= 1e-8 * scale);
        CHECK(multiset_mismatch(ev, ptk_test::conj_all(ev)) <= 1e-8 * scale);

        // swapping gain and loss flips iΓ's sign; the spectrum is unchanged
        const ComplexMatrix flipped = build_hbdg(p) - build_gain_loss(p);
        const auto ev_flip = to_std(eigendecompose(flipped).values);
        CHECK(multiset_mismatch(ev, ev_flip) <= 1e-8 * scale);
    }
}

TEST_CASE("bulk dispersion closed form") {
    const ChainParams base = make_params(4, 1.0, 0.0, 0.0, 0.0, 1);

    SECTION("gap closes exactly at p=π when μ=2J") {
        for (double delta : {0.0, 0.7, 1.3}) {
            ChainParams p = base;
            p.onsite = 2.0;
            p.sc_order = delta;
            const auto [lo, hi] = bulk_dispersion(pi, p);
            CHECK(hi == 0.0);
            CHECK(lo == 0.0);
        }
    }
    SECTION("flat band at μ=0, δ=J") {
        ChainParams p = base;
        p.sc_order = 1.0;
        for (double q : {0.0, 0.3, 1.1, pi, 4.4}) {
            const auto [lo, hi] = bulk_dispersion(q, p);
            CHECK(hi == Approx(1.0).margin(1e-15));
            CHECK(lo == Approx(-1.0).margin(1e-15));
        }
    }
    SECTION("p=0 is exactly ±J for μ=0, any δ") {
        for (double delta : {0.0, 0.7, 1.5}) {
            ChainParams p = base;
            p.sc_order = delta;
            const auto [lo, hi] = bulk_dispersion(0.0, p);
            CHECK(hi == 1.0);
            CHECK(lo == -1.0);
        }
    }
    SECTION("branches are a symmetric pair") {
        ChainParams p = base;
        p.onsite = 0.9;
        p.sc_order = 0.4;
        for (double q = 0.0; q < 2.0 * pi; q += 0.37) {
            const auto [lo, hi] = bulk_dispersion(q, p);
            CHECK(hi >= 0.0);
            CHECK(lo == -hi);
        }
    }
    CHECK_THROWS_AS(bulk_dispersion(std::nan(""), base), ParameterError);
}

TEST_CASE("periodic spectrum reproduces the bulk dispersion at the lattice momenta") {
    for (auto [mu, delta] : std::vector<std::pair<double, double>>{{0.7, 0.9}, {2.0, 1.3}}) {
        const ChainParams p = make_params(40, 1.0, mu, delta, 0.0, 1, Boundary::Periodic);
        const auto ev = eigendecompose(build_hbdg(p)).values;

        std::vector<double> predicted;
        for (int k = 1; k <= p.n_sites; ++k) {
            const auto [lo, hi] = bulk_dispersion(2.0 * pi * k / p.n_sites, p);
            predicted.push_back(lo);
            predicted.push_back(hi);
        }
        std::sort(predicted.begin(), predicted.end());
        REQUIRE(static_cast<int>(predicted.size()) == ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            CHECK(std::abs(ev[i].imag()) <= 1e-10);
            CHECK(ev[i].real() == Approx(predicted[static_cast<std::size_t>(i)]).margin(1e-8));
        }
    }
}

TEST_CASE("open flat-band point: massively degenerate ±J plus two zero modes") {
    const ChainParams p = make_params(20, 1.0, 0.0, 1.0, 0.0, 1);
    const auto ev = eigendecompose(build_hbdg(p)).values;
    int zeros = 0, plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double re = ev[i].real();
        CHECK(std::abs(ev[i].imag()) <= 1e-10);
        if (std::abs(re) <= 1e-10) ++zeros;
        if (std::abs(re - 1.0) <= 1e-8) ++plus;
        if (std::abs(re + 1.0) <= 1e-8) ++minus;
    }
    CHECK(zeros == 2);
    CHECK(plus == 19);
    CHECK(minus == 19);
}
