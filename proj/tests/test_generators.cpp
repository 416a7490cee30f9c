#include <doctest.h>

#include <cmath>

#include <msplit/msplit.hpp>

#include "support/test_support.hpp"

using namespace msplit;
namespace ts = msplit::testsupport;

namespace {

Matrix real2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << Complex(a), Complex(b), Complex(c), Complex(d);
    return m;
}

// Independent dense assembly of the flux-split family, written directly
// against the tridiagonal structure rather than through BlockMatrix.
Matrix dense_euler(const EulerParams& p) {
    const int k = p.k;
    const int rk = p.r_inner * k;
    const Matrix c = p.a_plus + p.a_minus + p.b_plus + p.b_minus;
    Matrix t = Matrix::Zero(rk, rk);
    for (int i = 0; i < p.r_inner; ++i) {
        t.block(i * k, i * k, k, k) = c;
        if (i > 0) {
            t.block(i * k, (i - 1) * k, k, k) = -p.a_plus;
            t.block((i - 1) * k, i * k, k, k) = -p.a_minus;
        }
    }
    Matrix out = Matrix::Zero(p.p * rk, p.p * rk);
    for (int o = 0; o < p.p; ++o) {
        out.block(o * rk, o * rk, rk, rk) = t;
        if (o > 0) {
            for (int i = 0; i < p.r_inner; ++i) {
                out.block(o * rk + i * k, (o - 1) * rk + i * k, k, k) =
                    -p.b_plus;
                out.block((o - 1) * rk + i * k, o * rk + i * k, k, k) =
                    -p.b_minus;
            }
        }
    }
    return out;
}

EulerParams reference_params() {
    EulerParams p;
    p.p = 4;
    p.r_inner = 3;
    p.k = 2;
    p.a_plus = real2(2, -1, -1, 2);
    p.a_minus = p.a_plus;
    p.b_plus = real2(2, 2, 2, 2);
    p.b_minus = real2(2, -2, -2, 2);
    return p;
}

} // namespace

TEST_CASE("flux-split family assembly matches an independent construction") {
    EulerParams p = reference_params();
    BlockMatrix m = euler_matrix(p);
    CHECK(m.block_rows() == 12);
    CHECK(m.block_size() == 2);
    CHECK((m.dense() - dense_euler(p)).norm() == 0.0);

    // diagonal blocks carry the combined matrix with entries 8 and -2
    CHECK((m.block(0, 0) - real2(8, -2, -2, 8)).norm() == 0.0);
}

TEST_CASE("flux-split family with a single outer block is the inner matrix") {
    EulerParams p = reference_params();
    p.p = 1;
    EulerSystem sys = euler_system(p);
    CHECK((sys.m.dense() - sys.t.dense()).norm() == 0.0);
}

TEST_CASE("flux-split family parameter validation") {
    EulerParams p = reference_params();
    p.a_plus = Matrix::Zero(2, 2);
    p.a_minus = Matrix::Zero(2, 2);
    p.b_plus = Matrix::Zero(2, 2);
    p.b_minus = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(euler_system(p), BadParamsError); // common null space

    EulerParams q = reference_params();
    q.b_plus = real2(-1, 0, 0, -1); // not positive semidefinite
    CHECK_THROWS_AS(euler_system(q), BadParamsError);

    EulerParams r = reference_params();
    r.a_plus = real2(0, 1, 0, 0); // not Hermitian
    CHECK_THROWS_AS(euler_system(r), BadParamsError);
}

TEST_CASE("lifting splittings of the inner matrix") {
    Example52 ex = example52();

    SUBCASE("single outer block lifts to the identity operation") {
        EulerParams p = reference_params();
        p.p = 1;
        EulerSystem sys = euler_system(p);
        auto lifted = lift_splitting(sys, ex.t_splittings);
        REQUIRE(lifted.size() == 6);
        for (size_t s = 0; s < 6; ++s) {
            CHECK((lifted[s].m.dense() - ex.t_splittings[s].m.dense()).norm() ==
                  0.0);
            CHECK((lifted[s].n.dense() - ex.t_splittings[s].n.dense()).norm() ==
                  0.0);
        }
    }

    SUBCASE("all six lifted splittings validate and contract individually") {
        for (int s = 0; s < 6; ++s) {
            std::vector<SplitPair> one = {ex.t_splittings[s]};
            Multisplitting ms = Multisplitting::from_parts(
                ex.sys.m, lift_splitting(ex.sys, one), uniform_weights(12, 1));
            CHECK(validate(ms).max_reconstruction_error == 0.0);
            CHECK(spectral_radius(iteration_matrix(ms).t) < 1.0);
        }
    }

    SUBCASE("two-way combination reproduces the published radius") {
        std::vector<SplitPair> two(ex.t_splittings.begin(),
                                   ex.t_splittings.begin() + 2);
        Multisplitting ms = Multisplitting::from_parts(
            ex.sys.m, lift_splitting(ex.sys, two), uniform_weights(12, 2));
        CHECK(std::abs(spectral_radius(iteration_matrix(ms).t) - 0.2901) <=
              1e-3);
    }
}

TEST_CASE("lifting a triangular decomposition") {
    Example52 ex = example52();

    SUBCASE("zero inner L and U leave only the couplings") {
        GaorPart inner{ex.sys.t, BlockMatrix(3, 2), BlockMatrix(3, 2), 1.0, 1.0};
        // d - l - u must equal t, so d carries all of t here
        GaorPart lifted = lift_triangular(ex.sys, inner);
        const Matrix bp = real2(2, 2, 2, 2);
        const Matrix bm = real2(2, -2, -2, 2);
        for (int o = 1; o < 4; ++o) {
            for (int i = 0; i < 3; ++i) {
                CHECK((lifted.l.block(3 * o + i, 3 * (o - 1) + i) - bp).norm() ==
                      0.0);
                CHECK((lifted.u.block(3 * (o - 1) + i, 3 * o + i) - bm).norm() ==
                      0.0);
            }
        }
        CHECK(lifted.l.dense().norm() ==
              doctest::Approx(std::sqrt(9.0 * 16.0))); // 9 couplings of norm 4
        const Matrix recon =
            lifted.d.dense() - lifted.l.dense() - lifted.u.dense();
        CHECK((recon - ex.sys.m.dense()).norm() == 0.0);
    }

    SUBCASE("random inner decompositions reconstruct the full matrix") {
        ts::Rng rng(67);
        for (int trial = 0; trial < 5; ++trial) {
            BlockMatrix l(3, 2), u(3, 2);
            for (auto [i, j] : lower_pairs(3)) {
                l.block(i, j) = ts::random_complex(2, 2, rng);
            }
            for (auto [i, j] : upper_pairs(3)) {
                u.block(i, j) = ts::random_complex(2, 2, rng);
            }
            BlockMatrix d = ex.sys.t + l + u;
            GaorPart lifted = lift_triangular(ex.sys, {d, l, u, 0.5, 0.75});
            const Matrix recon =
                lifted.d.dense() - lifted.l.dense() - lifted.u.dense();
            CHECK((recon - ex.sys.m.dense()).norm() <=
                  1e-12 * ex.sys.m.norm());
        }
    }

    SUBCASE("inconsistent inner decomposition is rejected") {
        GaorPart bad{ex.sys.t, BlockMatrix(3, 2), BlockMatrix(3, 2), 1.0, 1.0};
        bad.l.block(1, 0) = Matrix::Identity(2, 2);
        CHECK_THROWS_AS(lift_triangular(ex.sys, bad), BadParamsError);
    }
}

TEST_CASE("three-way reference system properties") {
    Example51 ex = example51();
    CHECK(ex.a.block_rows() == 3);
    CHECK(ex.a.block_size() == 2);
    CHECK(std::abs(spectral_radius(iteration_matrix(ex.ms).t) - 0.8987) <= 1e-3);
    CHECK(classify(ex.a).h_certificate.has_value());
    CHECK(validate(ex.ms).ok());
}

TEST_CASE("flux-split reference system data") {
    Example52 ex = example52();
    CHECK(ex.b.dim() == 24);
    CHECK(ex.b.flat()(20).real() == doctest::Approx(1.2));
    CHECK(ex.b.flat()(20).imag() == 0.0);
    REQUIRE(ex.t_splittings.size() == 6);
    for (const SplitPair& part : ex.t_splittings) {
        CHECK((part.m.dense() - part.n.dense() - ex.sys.t.dense()).norm() ==
              0.0);
    }
    ClassReport report = classify(ex.sys.m);
    CHECK(report.h_certificate.has_value());
}

TEST_CASE("grid family structure") {
    SUBCASE("2x2 instance expands to the expected dense matrix") {
        Matrix expect(4, 4);
        expect << 4, -1, -1, 0, //
            -1, 4, 0, -1,       //
            -1, 0, 4, -1,       //
            0, -1, -1, 4;
        CHECK((elliptic_matrix({2, 2, 2, 1}).dense() - expect).norm() == 0.0);
    }

    SUBCASE("diagonal blocks are all equal") {
        BlockMatrix a = elliptic_matrix({4, 5, 3, 1});
        for (int i = 1; i < 5; ++i) {
            CHECK((a.block(i, i) - a.block(0, 0)).norm() == 0.0);
        }
    }

    SUBCASE("symmetric positive definite with an H certificate") {
        BlockMatrix a = elliptic_matrix(elliptic_case(5, 5, 1));
        const Matrix dense = a.dense();
        CHECK((dense - dense.transpose()).norm() == 0.0);
        CHECK(is_positive_definite(dense));
        for (int n : {3, 5, 8, 10}) {
            ClassReport report = classify(elliptic_matrix(elliptic_case(n, n, 1)));
            CHECK(report.in_zhat);
            CHECK(report.h_certificate.has_value());
        }
    }
}

TEST_CASE("grid family two-way split") {
    SUBCASE("case indices and clamping") {
        EllipticParams c1 = elliptic_case(8, 8, 1);
        CHECK(c1.m1 == 6);
        CHECK(c1.m2 == 2);
        EllipticParams c2 = elliptic_case(5, 5, 2);
        CHECK(c2.m1 == 4);
        CHECK(c2.m2 == 1); // floor(5/6) clamped up to 1
        CHECK_THROWS_AS(elliptic_case(3, 3, 7), BadParamsError);
    }

    SUBCASE("overlap band weighted one half each") {
        EllipticSplitting split = elliptic_two_splitting(elliptic_case(8, 8, 1));
        const Eigen::VectorXd& e1 = split.weights[0].e;
        const Eigen::VectorXd& e2 = split.weights[1].e;
        for (int i = 0; i < 8; ++i) {
            CHECK(e1(i) + e2(i) == doctest::Approx(1.0));
        }
        CHECK(e1(0) == 1.0);
        CHECK(e1(1) == 1.0);              // rows up to m2 = 2
        for (int i = 2; i <= 4; ++i) {
            CHECK(e1(i) == 0.5);          // overlap rows 3..5
        }
        for (int i = 5; i < 8; ++i) {
            CHECK(e1(i) == 0.0);          // rows from m1 = 6 on
        }
    }

    SUBCASE("empty overlap gives a 0/1 partition") {
        EllipticSplitting split = elliptic_two_splitting({3, 3, 2, 1});
        for (int i = 0; i < 3; ++i) {
            const double w = split.weights[0].e(i);
            CHECK((w == 0.0 || w == 1.0));
        }
    }

    SUBCASE("both parts decompose the matrix exactly") {
        EllipticParams params = elliptic_case(6, 7, 2);
        BlockMatrix a = elliptic_matrix(params);
        EllipticSplitting split = elliptic_two_splitting(params, 0.7, 1.0);
        for (const GaorPart& part : split.parts) {
            const Matrix recon =
                part.d.dense() - part.l.dense() - part.u.dense();
            CHECK((recon - a.dense()).norm() == 0.0);
        }
    }

    SUBCASE("invalid split indices are rejected") {
        CHECK_THROWS_AS(elliptic_two_splitting({3, 4, 2, 2}), BadParamsError);
        CHECK_THROWS_AS(elliptic_two_splitting({3, 4, 5, 1}), BadParamsError);
    }

    SUBCASE("matrix-part and index-set routes agree") {
        EllipticParams params = elliptic_case(4, 6, 1);
        BlockMatrix a = elliptic_matrix(params);
        EllipticSplitting split = elliptic_two_splitting(params, 0.7, 1.0);

        std::vector<TripleSplit> triples(2);
        for (int s = 0; s < 2; ++s) {
            triples[s].gamma = 0.7;
            triples[s].omega = 1.0;
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    if (i == j) {
                        continue;
                    }
                    if (split.parts[s].l.block(i, j).norm() > 0.0) {
                        triples[s].s_pairs.emplace_back(i, j);
                    } else {
                        triples[s].t_pairs.emplace_back(i, j);
                    }
                }
            }
        }
        Multisplitting via_sets = gaor_multisplitting(a, triples, split.weights);
        Multisplitting via_parts = gaor_from_parts(a, split.parts, split.weights);
        for (int s = 0; s < 2; ++s) {
            CHECK((via_sets.part(s).m.dense() - via_parts.part(s).m.dense())
                      .norm() == 0.0);
        }
    }
}
