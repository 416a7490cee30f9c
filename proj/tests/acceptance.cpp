// Acceptance suite: each criterion checks the toolkit against the
// published reference behavior at a pinned tolerance and prints one
// PASS/FAIL line. Run all criteria or a single one via --criterion N.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <msplit/msplit.hpp>

#include "support/test_support.hpp"

using namespace msplit;
namespace ts = msplit::testsupport;

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) {
                detail << "; ";
            }
            detail << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Multisplitting example52_lifted(const Example52& ex, int r) {
    std::vector<SplitPair> parts(ex.t_splittings.begin(),
                                 ex.t_splittings.begin() + r);
    return Multisplitting::from_parts(ex.sys.m, lift_splitting(ex.sys, parts),
                                      uniform_weights(12, r));
}

std::vector<BlockWeights> table52_weights(int r) {
    auto expand = [](const std::vector<double>& outer) {
        BlockWeights w;
        w.e = Eigen::VectorXd(12);
        for (int o = 0; o < 4; ++o) {
            for (int i = 0; i < 3; ++i) {
                w.e(3 * o + i) = outer[o];
            }
        }
        return w;
    };
    std::vector<std::vector<std::vector<double>>> note = {
        {{1, 1, 1, 1}},
        {{1, 0, 1, 0}, {0, 1, 0, 1}},
        {{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}},
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0.5}, {0, 0, 0, 0.5}},
        {{1, 0, 0, 0},
         {0, 1, 0, 0},
         {0, 0, 0.5, 0},
         {0, 0, 0, 0.5},
         {0, 0, 0, 0.5},
         {0, 0, 0.5, 0}},
    };
    std::vector<BlockWeights> ws;
    for (const auto& outer : note[r - 1]) {
        ws.push_back(expand(outer));
    }
    return ws;
}

double gaor_radius(const Example52& ex, double gamma, double omega) {
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

// 1. Three-way reference system: rho(T) = 0.8987 +- 1e-3 in under a second.
bool criterion1(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    Example51 ex = example51();
    const double rho = spectral_radius(iteration_matrix(ex.ms).t);
    c.require(std::abs(rho - 0.8987) <= 1e-3,
              "rho = " + std::to_string(rho) + ", expected 0.8987 +- 1e-3");
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
    detail = c.detail.str();
    return c.ok;
}

bool table_criterion(const std::vector<double>& rho_ref,
                     const std::vector<double>& iter_ref, bool uniform,
                     double budget_seconds, std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    Example52 ex = example52();
    const StopRule stop = StopRule::abs_diff(1e-4, 10000);
    const BlockVector x0 = BlockVector::ones(12, 2);
    for (int r = 1; r <= 6; ++r) {
        std::vector<SplitPair> parts(ex.t_splittings.begin(),
                                     ex.t_splittings.begin() + r);
        Multisplitting ms = Multisplitting::from_parts(
            ex.sys.m, lift_splitting(ex.sys, parts),
            uniform ? uniform_weights(12, r) : table52_weights(r));
        const double rho = spectral_radius(iteration_matrix(ms).t);
        std::ostringstream tag;
        tag << "r=" << r;
        c.require(std::abs(rho - rho_ref[r - 1]) <= 1e-3,
                  tag.str() + ": rho " + std::to_string(rho) + " vs " +
                      std::to_string(rho_ref[r - 1]));
        const SolveReport report = solve_multisplitting(ms, ex.b, x0, stop);
        c.require(std::abs(report.iterations - iter_ref[r - 1]) <= 1.0,
                  tag.str() + ": iterations " +
                      std::to_string(report.iterations) + " vs " +
                      std::to_string(static_cast<int>(iter_ref[r - 1])) +
                      " +- 1");
    }
    const double elapsed = seconds_since(t0);
    c.require(elapsed < budget_seconds,
              "took " + std::to_string(elapsed) + " s");
    detail = c.detail.str();
    return c.ok;
}

// 2. Uniform-weight spectral radii and iteration counts.
bool criterion2(std::string& detail) {
    return table_criterion({0.1801, 0.2901, 0.2844, 0.2959, 0.2894, 0.2796},
                           {11, 13, 13, 13, 13, 12}, /*uniform=*/true, 10.0,
                           detail);
}

// 3. Row-partitioned weighting matrices.
bool criterion3(std::string& detail) {
    return table_criterion({0.1801, 0.1801, 0.1801, 0.1801, 0.2719, 0.2719},
                           {11, 12, 12, 12, 12, 12}, /*uniform=*/false, 10.0,
                           detail);
}

// 4. Relaxed-method radii over the 12 stated parameter pairs, plus the
// location of the minimum.
bool criterion4(std::string& detail) {
    Checker c;
    Example52 ex = example52();
    const std::vector<std::pair<double, double>> pairs = {
        {0.1, 0.2},  {0.3, 0.4},   {0.5, 0.6},   {0.7, 0.8},
        {0.8, 0.9},  {0.9, 1.0},   {0.8, 0.8},   {0.9, 0.9},
        {0.9, 0.95}, {0.95, 0.99}, {0.99, 0.99}, {1.0, 1.0}};
    const std::vector<double> rho_ref = {0.8592, 0.7184, 0.5776, 0.4367,
                                         0.3663, 0.2959, 0.4367, 0.3663,
                                         0.3561, 0.3030, 0.3005, 0.2959};
    std::vector<double> computed;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const double rho = gaor_radius(ex, pairs[i].first, pairs[i].second);
        computed.push_back(rho);
        std::ostringstream tag;
        tag << "(" << pairs[i].first << "," << pairs[i].second << ")";
        c.require(std::abs(rho - rho_ref[i]) <= 1e-3,
                  tag.str() + ": rho " + std::to_string(rho) + " vs " +
                      std::to_string(rho_ref[i]));
    }
    double best = computed[0];
    for (double v : computed) {
        best = std::min(best, v);
    }
    c.require(computed.back() <= best + 1e-9,
              "minimum not attained at (1,1)");
    detail = c.detail.str();
    return c.ok;
}

// 5. The lifted pair shares its spectral radius with the iteration matrix
// on 100 random multisplittings.
bool criterion5(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    ts::Rng rng(20250801);
    int done = 0;
    while (done < 100) {
        const int m = 2 + static_cast<int>(rng() % 3); // m <= 4
        const int k = 1 + static_cast<int>(rng() % 2); // k <= 2
        const int r = 1 + static_cast<int>(rng() % 3); // r <= 3
        BlockMatrix a = ts::random_block_matrix(m, k, rng);
        Multisplitting ms = multisplit_from_index_sets(
            a, ts::random_index_sets(m, r, rng), ts::random_weights(m, r, rng));
        const double rho = spectral_radius(iteration_matrix(ms).t);
        auto [m_hat, n_hat] = hat_pair(ms);
        const double rho_hat =
            spectral_radius(Eigen::PartialPivLU<Matrix>(m_hat).solve(n_hat));
        if (std::abs(rho - rho_hat) > 1e-8 * std::max(1.0, rho)) {
            std::ostringstream what;
            what << "trial " << done << ": |" << rho << " - " << rho_hat
                 << "| out of tolerance";
            c.require(false, what.str());
        }
        ++done;
    }
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
    detail = c.detail.str();
    return c.ok;
}

// 6. 50 random certified matrices: plain and relaxed iterations contract
// and the solves converge.
bool criterion6(std::string& detail) {
    Checker c;
    ts::Rng rng(20250802);
    const StopRule stop = StopRule::abs_diff(1e-8, 50000);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 4); // m <= 5
        const int k = 1 + static_cast<int>(rng() % 3); // k <= 3
        const int r = 1 + static_cast<int>(rng() % 3);
        BlockMatrix a = ts::random_certified_h(m, k, rng);
        BlockVector b = BlockVector::from_dense(a.dense() * Vector::Ones(a.dim()),
                                                m, k);
        std::ostringstream tag;
        tag << "trial " << trial << " (m=" << m << ",k=" << k << ",r=" << r
            << ")";

        Multisplitting ms = multisplit_from_index_sets(
            a, ts::random_index_sets(m, r, rng), ts::random_weights(m, r, rng));
        const double rho = spectral_radius(iteration_matrix(ms).t);
        c.require(rho < 1.0, tag.str() + ": rho(T) = " + std::to_string(rho));
        const SolveReport plain =
            solve_multisplitting(ms, b, BlockVector(m, k), stop);
        c.require(plain.terminated == Termination::Converged,
                  tag.str() + ": plain solve did not converge");

        auto triples = ts::random_triples(m, r, rng, /*omega_min=*/0.1);
        Multisplitting relaxed =
            gaor_multisplitting(a, triples, ts::random_weights(m, r, rng));
        const double rho_relaxed =
            spectral_radius(iteration_matrix(relaxed).t);
        c.require(rho_relaxed < 1.0,
                  tag.str() + ": relaxed rho = " + std::to_string(rho_relaxed));
        const SolveReport gaor =
            solve_multisplitting(relaxed, b, BlockVector(m, k), stop);
        c.require(gaor.terminated == Termination::Converged,
                  tag.str() + ": relaxed solve did not converge");
    }
    detail = c.detail.str();
    return c.ok;
}

// 7. Damping boundary on the three-way system: contraction inside the
// guaranteed interval and loss of contraction 0.2 beyond it.
bool criterion7(std::string& detail) {
    Checker c;
    Example51 ex = example51();
    const double rho = spectral_radius(iteration_matrix(ex.ms).t);
    for (double tau : {0.1, 0.5, 1.0}) {
        const double rho_tau = spectral_radius(extrapolated_matrix(ex.ms, tau).t);
        c.require(rho_tau < 1.0, "tau=" + std::to_string(tau) + ": rho " +
                                     std::to_string(rho_tau) + " >= 1");
    }
    const double tau_star = 2.0 / (1.0 + rho) + 0.2;
    const double rho_star =
        spectral_radius(extrapolated_matrix(ex.ms, tau_star).t);
    c.require(rho_star >= 1.0, "tau=" + std::to_string(tau_star) + ": rho " +
                                   std::to_string(rho_star) + " < 1");
    detail = c.detail.str();
    return c.ok;
}

// 8. Serial and parallel runs produce bitwise-identical iterates.
bool criterion8(std::string& detail) {
    Checker c;
    Example52 ex = example52();
    Multisplitting ms = example52_lifted(ex, 6);
    const StopRule stop = StopRule::abs_diff(1e-4, 10000);
    const BlockVector x0 = BlockVector::ones(12, 2);

    SolveOptions serial;
    serial.threads = 1;
    serial.record_iterates = true;
    SolveOptions parallel;
    parallel.threads = 0; // one worker per splitting
    parallel.record_iterates = true;

    const SolveReport a = solve_multisplitting(ms, ex.b, x0, stop, serial);
    const SolveReport b = solve_multisplitting(ms, ex.b, x0, stop, parallel);
    c.require(a.iterations == b.iterations, "iteration counts differ");
    c.require(a.norms == b.norms, "recorded metrics differ");
    if (a.iterations == b.iterations) {
        for (int i = 0; i < a.iterations; ++i) {
            if ((a.iterates[i] - b.iterates[i]).norm() != 0.0) {
                c.require(false,
                          "iterate " + std::to_string(i + 1) + " differs");
                break;
            }
        }
    }
    detail = c.detail.str();
    return c.ok;
}

// 9. Grid family: the (0.7, 1) relaxed multisplitting converges under the
// relative criterion, (1,1) needs no more iterations than (0.5,1), and the
// observed rate matches the assembled iteration matrix.
bool criterion9(std::string& detail) {
    Checker c;
    const StopRule stop = StopRule::rel_diff(1e-6, 200000);
    for (int variant : {1, 2}) {
        for (int n : {5, 7, 11}) {
            std::ostringstream tag;
            tag << "variant " << variant << " n=" << n;
            EllipticParams params = elliptic_case(n, n, variant);
            BlockMatrix a = elliptic_matrix(params);
            BlockVector b = BlockVector::from_dense(
                a.dense() * Vector::Ones(a.dim()), n, n);
            const BlockVector x0(n, n);

            auto run = [&](double gamma, double omega) {
                EllipticSplitting split =
                    elliptic_two_splitting(params, gamma, omega);
                Multisplitting ms = gaor_from_parts(a, split.parts, split.weights);
                return std::make_pair(solve_multisplitting(ms, b, x0, stop),
                                      spectral_radius(iteration_matrix(ms).t));
            };

            auto [report, rho] = run(0.7, 1.0);
            c.require(report.terminated == Termination::Converged,
                      tag.str() + ": (0.7,1) did not converge");
            const double rate = asymptotic_rate(report);
            c.require(std::abs(rate - rho) <= 0.05,
                      tag.str() + ": rate " + std::to_string(rate) +
                          " vs rho " + std::to_string(rho));

            auto [fast, rho_fast] = run(1.0, 1.0);
            auto [slow, rho_slow] = run(0.5, 1.0);
            c.require(fast.terminated == Termination::Converged &&
                          slow.terminated == Termination::Converged,
                      tag.str() + ": comparison solves did not converge");
            c.require(fast.iterations <= slow.iterations,
                      tag.str() + ": (1,1) took " +
                          std::to_string(fast.iterations) + " > (0.5,1) " +
                          std::to_string(slow.iterations));
        }
    }
    detail = c.detail.str();
    return c.ok;
}

struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string&)> run;
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "three-way reference radius 0.8987", criterion1},
        {2, "uniform-weight table: radii and iteration counts", criterion2},
        {3, "row-partitioned weighting table: radii and counts", criterion3},
        {4, "relaxed-method radius table and minimum at (1,1)", criterion4},
        {5, "lifted-pair radius identity on 100 random multisplittings",
         criterion5},
        {6, "contraction and convergence on 50 certified random systems",
         criterion6},
        {7, "damping interval boundary on the three-way system", criterion7},
        {8, "bitwise-identical serial and parallel iterates", criterion8},
        {9, "grid family: relaxed convergence, ordering and observed rate",
         criterion9},
    };

    int failures = 0;
    int selected = 0;
    for (const Criterion& crit : criteria) {
        if (only != 0 && crit.id != only) {
            continue;
        }
        ++selected;
        std::string detail;
        bool ok = false;
        try {
            ok = crit.run(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << crit.id
                  << ": " << crit.title;
        if (!ok && !detail.empty()) {
            std::cout << " — " << detail;
        }
        std::cout << "\n";
        if (!ok) {
            ++failures;
        }
    }
    if (selected == 0) {
        std::cerr << "no such criterion: " << only << "\n";
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
