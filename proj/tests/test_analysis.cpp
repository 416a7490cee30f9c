#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <msplit/msplit.hpp>

#include "support/test_support.hpp"

using namespace msplit;
namespace ts = msplit::testsupport;

namespace {

Multisplitting example52_lifted(int r) {
    Example52 ex = example52();
    std::vector<SplitPair> parts(ex.t_splittings.begin(),
                                 ex.t_splittings.begin() + r);
    return Multisplitting::from_parts(ex.sys.m, lift_splitting(ex.sys, parts),
                                      uniform_weights(12, r));
}

double table53_radius(double gamma, double omega) {
    Example52 ex = example52();
    const BlockMatrix zero6(3, 2);
    std::vector<GaorPart> parts;
    for (int s = 0; s < 4; ++s) {
        parts.push_back(lift_triangular(
            ex.sys,
            {ex.t_splittings[s].m, zero6, ex.t_splittings[s].n, gamma, omega}));
    }
    return spectral_radius(
        iteration_matrix(gaor_from_parts(ex.sys.m, parts, uniform_weights(12, 4)))
            .t);
}

} // namespace

TEST_CASE("iteration matrix of the direct splitting vanishes") {
    ts::Rng rng(51);
    BlockMatrix a = ts::random_block_matrix(3, 2, rng);
    IndexSetSplit q;
    q.pairs = lower_pairs(3);
    auto upper = upper_pairs(3);
    q.pairs.insert(q.pairs.end(), upper.begin(), upper.end());
    Multisplitting ms = multisplit_from_index_sets(a, {q}, uniform_weights(3, 1));
    CHECK(iteration_matrix(ms).t.norm() <= 1e-12);
}

TEST_CASE("published spectral radii of the reference systems") {
    Example51 ex51 = example51();
    CHECK(std::abs(spectral_radius(iteration_matrix(ex51.ms).t) - 0.8987) <=
          1e-3);

    CHECK(std::abs(spectral_radius(iteration_matrix(example52_lifted(2)).t) -
                   0.2901) <= 1e-3);
}

TEST_CASE("spectral radius basics") {
    CHECK(spectral_radius(Matrix::Identity(5, 5)) == doctest::Approx(1.0));

    Matrix nilpotent = Matrix::Zero(3, 3);
    nilpotent(0, 1) = 2.0;
    nilpotent(1, 2) = -1.0;
    CHECK(spectral_radius(nilpotent) <= 1e-8);

    CHECK_THROWS_AS(spectral_radius(Matrix::Zero(2, 3)), DimensionError);

    CHECK(std::abs(table53_radius(0.1, 0.2) - 0.8592) <= 1e-3);
}

TEST_CASE("lifted pair: single splitting case") {
    ts::Rng rng(53);
    BlockMatrix a = ts::random_block_matrix(3, 2, rng);
    Multisplitting ms = multisplit_from_index_sets(
        a, ts::random_index_sets(3, 1, rng), uniform_weights(3, 1));
    auto [m_hat, n_hat] = hat_pair(ms);
    CHECK((m_hat - ms.part(0).m.dense()).norm() == 0.0);
    CHECK((n_hat - ms.part(0).n.dense()).norm() == 0.0); // E_1 = I
}

TEST_CASE("lifted pair shares the spectral radius with the iteration matrix") {
    SUBCASE("three-way reference system") {
        Example51 ex = example51();
        const double rho = spectral_radius(iteration_matrix(ex.ms).t);
        auto [m_hat, n_hat] = hat_pair(ex.ms);
        const double rho_hat =
            spectral_radius(Eigen::PartialPivLU<Matrix>(m_hat).solve(n_hat));
        CHECK(std::abs(rho - rho_hat) <= 1e-6);
    }

    SUBCASE("random multisplittings") {
        ts::Rng rng(59);
        for (int trial = 0; trial < 20; ++trial) {
            const int m = 2 + static_cast<int>(rng() % 3);
            const int k = 1 + static_cast<int>(rng() % 2);
            const int r = 1 + static_cast<int>(rng() % 3);
            BlockMatrix a = ts::random_block_matrix(m, k, rng);
            Multisplitting ms = multisplit_from_index_sets(
                a, ts::random_index_sets(m, r, rng),
                ts::random_weights(m, r, rng));
            const double rho = spectral_radius(iteration_matrix(ms).t);
            auto [m_hat, n_hat] = hat_pair(ms);
            const double rho_hat =
                spectral_radius(Eigen::PartialPivLU<Matrix>(m_hat).solve(n_hat));
            CHECK(std::abs(rho - rho_hat) <= 1e-8 * std::max(1.0, rho));
        }
    }
}

TEST_CASE("damping interval endpoints") {
    CHECK(extrapolation_interval(0.0).hi == doctest::Approx(2.0));
    CHECK(extrapolation_interval(1.0).hi == doctest::Approx(1.0));
    const ExtrapolationInterval i = extrapolation_interval(0.8987);
    CHECK(i.hi == doctest::Approx(2.0 / 1.8987));
    CHECK(i.contains(1.0));
    CHECK_FALSE(i.contains(1.2));
    CHECK_FALSE(i.contains(0.0));
}

TEST_CASE("damped matrix maps the spectrum affinely") {
    ts::Rng rng(61);
    Example51 ex = example51();
    const double tau = 0.7;
    const Vector base = eigenvalues(iteration_matrix(ex.ms).t);
    Vector mapped = eigenvalues(extrapolated_matrix(ex.ms, tau).t);

    std::vector<Complex> expect(base.size()), got(mapped.size());
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        expect[i] = tau * base(i) + (1.0 - tau);
        got[i] = mapped(i);
    }
    auto key = [](const Complex& z) {
        return std::make_pair(z.real(), z.imag());
    };
    std::sort(expect.begin(), expect.end(),
              [&](auto a, auto b) { return key(a) < key(b); });
    std::sort(got.begin(), got.end(),
              [&](auto a, auto b) { return key(a) < key(b); });
    for (size_t i = 0; i < expect.size(); ++i) {
        CHECK(std::abs(expect[i] - got[i]) <= 1e-8);
    }
}

TEST_CASE("asymptotic rate estimation") {
    SUBCASE("exact geometric sequence") {
        SolveReport report;
        double v = 1.0;
        for (int i = 0; i < 16; ++i) {
            report.norms.push_back(v);
            v *= 0.5;
        }
        CHECK(asymptotic_rate(report) == doctest::Approx(0.5));
    }

    SUBCASE("too few entries") {
        SolveReport report;
        report.norms = {1.0, 0.5, 0.25};
        CHECK_THROWS_AS(asymptotic_rate(report), TooFewIterationsError);
        report.norms.resize(9, 0.1);
        CHECK_THROWS_AS(asymptotic_rate(report), TooFewIterationsError);
    }

    SUBCASE("six-way reference solve") {
        Example52 ex = example52();
        SolveReport report =
            solve_multisplitting(example52_lifted(6), ex.b,
                                 BlockVector::ones(12, 2),
                                 StopRule::abs_diff(1e-12, 500));
        CHECK(report.terminated == Termination::Converged);
        CHECK(std::abs(asymptotic_rate(report) - 0.2796) <= 0.05);
    }
}

TEST_CASE("relaxation-parameter sweep decreases toward (1,1)") {
    const std::vector<std::pair<double, double>> ramp = {
        {0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}, {0.7, 0.8}, {0.8, 0.9}, {0.9, 1.0}};
    std::vector<double> ramp_rho;
    for (auto [g, w] : ramp) {
        ramp_rho.push_back(table53_radius(g, w));
    }
    for (size_t i = 1; i < ramp_rho.size(); ++i) {
        CHECK(ramp_rho[i] < ramp_rho[i - 1]);
    }

    const std::vector<std::pair<double, double>> rest = {
        {0.8, 0.8},  {0.9, 0.9},   {0.9, 0.95},
        {0.95, 0.99}, {0.99, 0.99}, {1.0, 1.0}};
    std::vector<double> all_rho = ramp_rho;
    for (auto [g, w] : rest) {
        all_rho.push_back(table53_radius(g, w));
    }
    const double best = *std::min_element(all_rho.begin(), all_rho.end());
    CHECK(all_rho.back() <= best + 1e-9); // minimum attained at (1,1)
}
