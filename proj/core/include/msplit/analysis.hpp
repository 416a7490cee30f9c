#pragma once

#include <utility>
#include <vector>

#include "msplit/solver.hpp"
#include "msplit/splitting.hpp"

namespace msplit {

/// Dense iteration matrix with a tag recording how it was formed.
struct IterationMatrix {
    enum class Source { Multi, Extrapolated, Gaor };

    Matrix t;
    Source source = Source::Multi;
    double tau = 1.0;                ///< extrapolation parameter, if any
    std::vector<double> gammas;      ///< relaxed-method parameters, if any
    std::vector<double> omegas;
};

/// Assemble T = sum_s E_s M_s^{-1} N_s by columnwise solves against the
/// cached factorizations, accumulating in ascending s order.
IterationMatrix iteration_matrix(const Multisplitting& ms);

/// tau * T + (1 - tau) * I for the damped iteration.
IterationMatrix extrapolated_matrix(const Multisplitting& ms, double tau);

/// Full eigenvalue set of a dense square matrix (EigFailureError if the
/// solver does not converge).
Vector eigenvalues(const Matrix& mat);

/// max |lambda| over the full eigenvalue set.
double spectral_radius(const Matrix& mat);

/// Lifted pair (M-hat, N-hat) of dimension r*k*m: M-hat is the block
/// diagonal of the M_s, N-hat has (s, t) block N_s E_t. Its induced
/// iteration matrix shares its spectral radius with T.
std::pair<Matrix, Matrix> hat_pair(const Multisplitting& ms);

/// Open interval (0, 2 / (1 + rho)) of guaranteed-convergent damping
/// parameters.
struct ExtrapolationInterval {
    double lo = 0.0;
    double hi = 2.0;
    bool contains(double tau) const { return tau > lo && tau < hi; }
};

ExtrapolationInterval extrapolation_interval(double rho);

/// Observed contraction rate: geometric mean of the last max(5, n/5)
/// successive ratios of the recorded stopping metrics. Requires at least
/// 10 recorded values (TooFewIterationsError).
double asymptotic_rate(const SolveReport& report);

} // namespace msplit
