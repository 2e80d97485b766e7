#include <doctest.h>

#include "common.hpp"
#include "cmv/spectral.hpp"

using namespace cmv;
using namespace cmv::testing;

TEST_CASE("measure normalization and free-case moments") {
    const VerblunskyData free_d = zero_window(1, 0, 16);
    const CMVOperator op = half_lattice(free_d, 0, Side::plus); // 16 sites
    const SpectralMeasure mu = measure_from_operator(op, 0);
    CHECK((mu.total_weight() - ComplexMatrix::identity(1)).frobenius_norm() < 1e-9);
    const auto mus = moments(mu, 3);
    CHECK((mus[0] - ComplexMatrix::identity(1)).frobenius_norm() < 1e-9);
    for (int k = 1; k <= 3; ++k) CHECK(mus[k].frobenius_norm() < 1e-10);
}

TEST_CASE("constant scalar alpha = 1/2: first moment is -1/2") {
    const VerblunskyData d = constant_scalar_window(0.5, 0, 64);
    const CMVOperator op = half_lattice(d, 0, Side::plus);
    const SpectralMeasure mu = measure_from_operator(op, 0);
    const auto mus = moments(mu, 1);
    CHECK(mus[1](0, 0).real() == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::abs(mus[1](0, 0).imag()) < 1e-10);
}

TEST_CASE("moments of handmade measures") {
    SpectralMeasure point;
    point.m = 1;
    point.atoms.push_back({complex(1.0), ComplexMatrix::identity(1)});
    const auto mus = moments(point, 4);
    for (const auto& mu : mus) CHECK((mu - ComplexMatrix::identity(1)).frobenius_norm() < 1e-14);

    SpectralMeasure two;
    two.m = 1;
    two.atoms.push_back({complex(1.0), ComplexMatrix(1, 1, {0.5})});
    two.atoms.push_back({complex(-1.0), ComplexMatrix(1, 1, {0.5})});
    const auto m2 = moments(two, 2);
    CHECK(std::abs(m2[1](0, 0)) < 1e-15);
    CHECK(m2[2](0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("measure weights are Hermitian PSD") {
    const VerblunskyData d = sample_verblunsky(2, 20, 0, 0.8, 31);
    const SpectralMeasure mu = measure_from_operator(half_lattice(d, 0, Side::plus), 0);
    for (const auto& a : mu.atoms) {
        CHECK(std::abs(std::abs(a.node) - 1.0) < 1e-10);
        CHECK(hermitian_defect(a.weight) < 1e-12);
        const HermitianEigen eg = herm_eigen(a.weight, 1e-8);
        CHECK(eg.values.front() > -1e-12);
    }
    CHECK((mu.total_weight() - ComplexMatrix::identity(2)).frobenius_norm() < 1e-9);
}

TEST_CASE("orthonormality of the recursion families under the measure") {
    // Free scalar case at depth 4.
    {
        const VerblunskyData d = zero_window(1, 0, 64);
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, 0, Side::plus), 0);
        const SolutionFamily p = generate_family(d, 0, Side::plus, Kind::P, 4);
        CHECK(orthonormality_check(mu, p, 4) < 1e-9);
    }
    // Random m = 2 windows, both sides, both first-kind families.
    const VerblunskyData d = sample_verblunsky(2, 65, -32, 0.8, 17);
    {
        const int k0 = 0;
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, Side::plus), k0);
        for (Kind kind : {Kind::P, Kind::R}) {
            const SolutionFamily fam = generate_family(d, k0, Side::plus, kind, 3);
            CHECK(orthonormality_check(mu, fam, 3) < 1e-7);
        }
    }
    {
        const int k0 = 1;
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, Side::minus), k0);
        for (Kind kind : {Kind::P, Kind::R}) {
            const SolutionFamily fam = generate_family(d, k0, Side::minus, kind, 3);
            CHECK(orthonormality_check(mu, fam, 3) < 1e-7);
        }
    }
}

TEST_CASE("gram_schmidt reproduces the recursion families") {
    const VerblunskyData free_d = zero_window(1, 0, 64);
    const SpectralMeasure free_mu =
        measure_from_operator(half_lattice(free_d, 0, Side::plus), 0);
    const SolutionFamily gs_free = gram_schmidt(free_mu, 0, Side::plus, Kind::P, 4);
    for (int k = 0; k <= 4; ++k) {
        const MatrixLaurentPolynomial diff =
            gs_free.at(k) - generate_family(free_d, 0, Side::plus, Kind::P, 4).at(k);
        CHECK(diff.max_coeff_norm() < 1e-9);
    }

    const VerblunskyData d = sample_verblunsky(2, 65, -32, 0.8, 23);
    for (Side side : {Side::plus, Side::minus}) {
        const int k0 = (side == Side::plus) ? 0 : 1;
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, side), k0);
        for (Kind kind : {Kind::P, Kind::R}) {
            const SolutionFamily gs = gram_schmidt(mu, k0, side, kind, 4);
            const SolutionFamily direct = generate_family(d, k0, side, kind, 4);
            const int dir = (side == Side::plus) ? 1 : -1;
            for (int off = 0; off <= 4; ++off) {
                const int k = k0 + dir * off;
                CHECK((gs.at(k) - direct.at(k)).max_coeff_norm() < 1e-6);
            }
        }
    }
}

TEST_CASE("reconstruct_alpha round trips") {
    // Free case recovers zeros.
    const VerblunskyData free_d = zero_window(1, 0, 32);
    const SpectralMeasure free_mu =
        measure_from_operator(half_lattice(free_d, 0, Side::plus), 0);
    for (const auto& [k, v] : reconstruct_alpha(free_mu, 0, Side::plus, 4))
        CHECK(v.frobenius_norm() < 1e-10);

    // Constant scalar 1/2 at n = 64, depth 4.
    const VerblunskyData half = constant_scalar_window(0.5, -4, 64);
    const SpectralMeasure mu_half =
        measure_from_operator(half_lattice(half, 0, Side::plus), 0);
    for (const auto& [k, v] : reconstruct_alpha(mu_half, 0, Side::plus, 4))
        CHECK(std::abs(v(0, 0) - complex(0.5)) < 1e-6);

    // Random m = 2, both sides.
    const VerblunskyData d = sample_verblunsky(2, 66, -33, 0.6, 29);
    {
        const int k0 = 0;
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, Side::plus), k0);
        const auto rec = reconstruct_alpha(mu, k0, Side::plus, 3);
        REQUIRE(rec.size() == 3);
        for (const auto& [k, v] : rec) CHECK(op_norm(v - d.alpha(k)) < 1e-5);
    }
    for (int k0 : {0, 1}) {
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, Side::minus), k0);
        const auto rec = reconstruct_alpha(mu, k0, Side::minus, 3);
        REQUIRE(rec.size() == 3);
        CHECK(rec.count(k0) == 1);
        CHECK(rec.count(k0 - 2) == 1);
        for (const auto& [k, v] : rec) CHECK(op_norm(v - d.alpha(k)) < 1e-5);
    }
}

TEST_CASE("minus-side extraction agrees with the k-1 moment formulas") {
    // After stepping, the published extraction integral evaluated at site
    // k-1 must reproduce the same alpha_k.
    const VerblunskyData d = sample_verblunsky(2, 40, -20, 0.7, 41);
    const int k0 = 1;
    const SpectralMeasure mu = measure_from_operator(half_lattice(d, k0, Side::minus), k0);
    const MomentFunctional fn = MomentFunctional::from_measure(mu, 4);
    const SolutionFamily pm = gram_schmidt(mu, k0, Side::minus, Kind::P, 4);
    const SolutionFamily rm = gram_schmidt(mu, k0, Side::minus, Kind::R, 4);
    for (int k = k0; k >= k0 - 2; --k) {
        ComplexMatrix alpha_ref;
        if (k % 2 != 0)
            alpha_ref = -fn.pair(rm.at(k - 1).shifted(1), pm.at(k - 1));
        else
            alpha_ref = -fn.pair(pm.at(k - 1), rm.at(k - 1));
        CHECK(op_norm(alpha_ref - d.alpha(k)) < 1e-6);
    }
}

TEST_CASE("round-trip error does not grow with window size") {
    std::map<int, double> err;
    for (int n : {16, 32, 64}) {
        const VerblunskyData d = sample_verblunsky(2, n + 2, -1, 0.6, 101);
        const SpectralMeasure mu = measure_from_operator(half_lattice(d, 0, Side::plus), 0);
        double worst = 0.0;
        for (const auto& [k, v] : reconstruct_alpha(mu, 0, Side::plus, 3))
            worst = std::max(worst, op_norm(v - d.alpha(k)));
        err[n] = worst;
    }
    CHECK(err[16] + 1e-9 >= err[32]);
    CHECK(err[32] + 1e-9 >= err[64]);
    CHECK(err[64] < 1e-5);
}

TEST_CASE("degenerate measures are rejected") {
    SpectralMeasure mu; // a single atom cannot support depth-2 data
    mu.m = 1;
    mu.atoms.push_back({complex(1.0), ComplexMatrix::identity(1)});
    CHECK_THROWS_AS(reconstruct_alpha(MomentFunctional::from_measure(mu, 3), 0, Side::plus, 3),
                    error);
}

TEST_CASE("second-kind polynomials from the measure") {
    // At k = k0 the integrand vanishes identically.
    const VerblunskyData half = constant_scalar_window(0.5, -2, 40);
    const SpectralMeasure mu = measure_from_operator(half_lattice(half, 0, Side::plus), 0);
    const SolutionFamily p = generate_family(half, 0, Side::plus, Kind::P, 3);
    CHECK(second_kind_from_measure(mu, p, complex(0.3), 0).frobenius_norm() < 1e-12);

    // Free scalar case: matches S_+ at k0 + 1.
    const VerblunskyData free_d = zero_window(1, -2, 40);
    const SpectralMeasure free_mu =
        measure_from_operator(half_lattice(free_d, 0, Side::plus), 0);
    const SolutionFamily fr = generate_family(free_d, 0, Side::plus, Kind::R, 2);
    const SolutionFamily fs = generate_family(free_d, 0, Side::plus, Kind::S, 2);
    const complex z03(0.3);
    CHECK((second_kind_from_measure(free_mu, fr, z03, 1) - fs.at(1).eval(z03)).frobenius_norm() <
          1e-9);

    // Random m = 2: both identities at k0 + 2, z = 0.5i.
    const VerblunskyData d = sample_verblunsky(2, 66, -1, 0.8, 71);
    const SpectralMeasure dmu = measure_from_operator(half_lattice(d, 0, Side::plus), 0);
    const SolutionFamily dp = generate_family(d, 0, Side::plus, Kind::P, 3);
    const SolutionFamily dq = generate_family(d, 0, Side::plus, Kind::Q, 3);
    const SolutionFamily dr = generate_family(d, 0, Side::plus, Kind::R, 3);
    const SolutionFamily ds = generate_family(d, 0, Side::plus, Kind::S, 3);
    const complex z(0.0, 0.5);
    const ComplexMatrix q_tilde = modified_variant(dq.at(2), 0, Side::plus).eval(z);
    CHECK((second_kind_from_measure(dmu, dp, z, 2) - q_tilde).frobenius_norm() < 1e-7);
    CHECK((second_kind_from_measure(dmu, dr, z, 2) - ds.at(2).eval(z)).frobenius_norm() < 1e-7);

    // Node collision guard.
    CHECK_THROWS_AS(second_kind_from_measure(dmu, dp, dmu.atoms.front().node, 2), error);
}

TEST_CASE("block measure and full-lattice orthonormality") {
    const VerblunskyData free_d = zero_window(1, -16, 16);
    const CMVOperator op = build_cmv(free_d, true, true);
    const BlockSpectralMeasure bmu = block_measure(op, 0);
    ComplexMatrix lower_mass = ComplexMatrix::zero(1, 1);
    for (const auto& a : bmu.atoms) lower_mass += a.weight.block(1, 1, 1, 1);
    CHECK((lower_mass - ComplexMatrix::identity(1)).frobenius_norm() < 1e-9);
    const auto basis = full_lattice_basis(free_d, 0, 4);
    CHECK(block_orthonormality_check(bmu, basis, 0, 4) < 1e-8);

    const VerblunskyData d = sample_verblunsky(2, 49, -24, 0.8, 83);
    const CMVOperator dop = build_cmv(d, true, true);
    const BlockSpectralMeasure dbmu = block_measure(dop, 0);
    ComplexMatrix mass = ComplexMatrix::zero(2, 2);
    for (const auto& a : dbmu.atoms) mass += a.weight.block(2, 2, 2, 2);
    CHECK((mass - ComplexMatrix::identity(2)).frobenius_norm() < 1e-9);
    const auto dbasis = full_lattice_basis(d, 0, 3);
    CHECK(block_orthonormality_check(dbmu, dbasis, 0, 3) < 1e-7);
}
