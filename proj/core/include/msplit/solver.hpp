#pragma once

#include <vector>

#include "msplit/splitting.hpp"

namespace msplit {

enum class StopKind {
    AbsDiff,  ///< ||x_{i+1} - x_i||_2 < epsilon
    RelDiff,  ///< ||x_{i+1} - x_i||_2 / ||x_{i+1}||_2 <= epsilon
    Residual, ///< ||A x_{i+1} - b||_2 < epsilon
};

struct StopRule {
    StopKind kind = StopKind::AbsDiff;
    double epsilon = 1e-4;
    int max_iters = 10000;

    StopRule() = default;
    StopRule(StopKind kind, double epsilon, int max_iters);

    static StopRule abs_diff(double epsilon = 1e-4, int max_iters = 10000);
    static StopRule rel_diff(double epsilon = 1e-6, int max_iters = 10000);
    static StopRule residual(double epsilon, int max_iters = 10000);
};

enum class Termination { Converged, MaxIters, Diverged };

const char* to_string(Termination t);

struct SolveReport {
    int iterations = 0;
    BlockVector final_x;
    /// Stopping-metric value after each iteration; size == iterations.
    std::vector<double> norms;
    Termination terminated = Termination::MaxIters;
    /// Informational only; not used by any check.
    double wall_time_seconds = 0.0;
    /// Full iterate after each iteration; only filled when requested.
    std::vector<Vector> iterates;
};

struct SolveOptions {
    /// Number of worker threads; 1 = serial, 0 = one worker per splitting.
    /// Serial and parallel execution produce bitwise-identical iterates:
    /// each local solve is computed independently per splitting and the
    /// weighted reduction always runs in ascending splitting order on the
    /// calling thread.
    int threads = 1;
    bool record_iterates = false;
};

/// One combined iteration: x_next = sum_s E_s M_s^{-1} (N_s x + b),
/// with the reduction over s in ascending order.
BlockVector step_multisplitting(const Multisplitting& ms,
                                const BlockVector& b,
                                const BlockVector& x);

/// Repeat the combined step until the stop rule fires. The stopping
/// metric is recorded once per iteration; the run is flagged Diverged
/// when the metric exceeds 1e12 times its first value.
SolveReport solve_multisplitting(const Multisplitting& ms,
                                 const BlockVector& b,
                                 const BlockVector& x0,
                                 const StopRule& stop,
                                 const SolveOptions& opts = {});

/// Damped iteration x <- tau * step(x) + (1 - tau) * x. Requires tau > 0.
SolveReport solve_extrapolated(const Multisplitting& ms,
                               const BlockVector& b,
                               const BlockVector& x0,
                               double tau,
                               const StopRule& stop,
                               const SolveOptions& opts = {});

/// Relaxed block solve from role-assigning index sets; builds the
/// corresponding multisplitting and delegates to solve_multisplitting.
SolveReport solve_bgaor(const BlockMatrix& a,
                        const BlockVector& b,
                        const std::vector<TripleSplit>& triples,
                        const std::vector<BlockWeights>& ws,
                        const BlockVector& x0,
                        const StopRule& stop,
                        const SolveOptions& opts = {});

/// Relaxed block solve from explicit (D, L, U) decompositions.
SolveReport solve_bgaor(const BlockMatrix& a,
                        const BlockVector& b,
                        const std::vector<GaorPart>& parts,
                        const std::vector<BlockWeights>& ws,
                        const BlockVector& x0,
                        const StopRule& stop,
                        const SolveOptions& opts = {});

} // namespace msplit
