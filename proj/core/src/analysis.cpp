#include "msplit/analysis.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace msplit {

IterationMatrix iteration_matrix(const Multisplitting& ms) {
    const int n = ms.dim();
    const int m = ms.block_rows();
    const int k = ms.block_size();
    Matrix t = Matrix::Zero(n, n);
    for (int s = 0; s < ms.count(); ++s) {
        Matrix z = ms.factorization(s).solve(ms.n_dense(s));
        const Eigen::VectorXd& e = ms.weights(s).e;
        for (int i = 0; i < m; ++i) {
            if (e(i) != 0.0) {
                t.middleRows(i * k, k) += e(i) * z.middleRows(i * k, k);
            }
        }
    }
    IterationMatrix out;
    out.t = std::move(t);
    out.source = IterationMatrix::Source::Multi;
    return out;
}

IterationMatrix extrapolated_matrix(const Multisplitting& ms, double tau) {
    if (!(tau > 0.0)) {
        throw BadParamsError("extrapolation parameter must be positive, got " +
                             std::to_string(tau));
    }
    IterationMatrix out = iteration_matrix(ms);
    out.t = tau * out.t + (1.0 - tau) * Matrix::Identity(ms.dim(), ms.dim());
    out.source = IterationMatrix::Source::Extrapolated;
    out.tau = tau;
    return out;
}

Vector eigenvalues(const Matrix& mat) {
    if (mat.rows() != mat.cols()) {
        throw DimensionError("eigenvalues need a square matrix");
    }
    Eigen::ComplexEigenSolver<Matrix> eig(mat, /*computeEigenvectors=*/false);
    if (eig.info() != Eigen::Success) {
        throw EigFailureError("dense eigensolver did not converge");
    }
    return eig.eigenvalues();
}

double spectral_radius(const Matrix& mat) {
    return eigenvalues(mat).cwiseAbs().maxCoeff();
}

std::pair<Matrix, Matrix> hat_pair(const Multisplitting& ms) {
    const int r = ms.count();
    const int n = ms.dim();
    const int m = ms.block_rows();
    const int k = ms.block_size();
    Matrix m_hat = Matrix::Zero(r * n, r * n);
    Matrix n_hat = Matrix::Zero(r * n, r * n);
    for (int s = 0; s < r; ++s) {
        m_hat.block(s * n, s * n, n, n) = ms.part(s).m.dense();
        for (int t = 0; t < r; ++t) {
            // N_s E_t: scale block columns of N_s by the weights of t
            Matrix block = ms.n_dense(s);
            const Eigen::VectorXd& e = ms.weights(t).e;
            for (int j = 0; j < m; ++j) {
                block.middleCols(j * k, k) *= e(j);
            }
            n_hat.block(s * n, t * n, n, n) = block;
        }
    }
    return {std::move(m_hat), std::move(n_hat)};
}

ExtrapolationInterval extrapolation_interval(double rho) {
    if (rho < 0.0) {
        throw BadParamsError("spectral radius must be nonnegative");
    }
    return {0.0, 2.0 / (1.0 + rho)};
}

double asymptotic_rate(const SolveReport& report) {
    const auto n = report.norms.size();
    if (n < 10) {
        throw TooFewIterationsError("rate estimate needs at least 10 recorded "
                                    "metrics, got " +
                                    std::to_string(n));
    }
    size_t window = std::max<size_t>(5, n / 5);
    window = std::min(window, n - 1);
    double log_sum = 0.0;
    size_t used = 0;
    for (size_t i = n - 1 - window; i + 1 < n; ++i) {
        const double a = report.norms[i];
        const double b = report.norms[i + 1];
        if (a > 0.0 && b > 0.0) {
            log_sum += std::log(b / a);
            ++used;
        }
    }
    if (used == 0) {
        return 0.0;
    }
    return std::exp(log_sum / static_cast<double>(used));
}

} // namespace msplit
