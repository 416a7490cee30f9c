#include "msplit/blockcore.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace msplit {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> self_adjoint_eig(const Matrix& h) {
    Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) {
        throw EigFailureError("self-adjoint eigensolver failed");
    }
    return eig;
}

std::string block_tag(int i, int j) {
    return "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

/// Internal row check: u_i A_ii - sum_{j != i} u_j |A_ij| > 0 for row i,
/// against precomputed diagonal blocks and off-diagonal absolute values.
bool rows_positive_definite(const std::vector<Matrix>& diag,
                            const std::vector<std::vector<Matrix>>& offabs,
                            const Eigen::VectorXd& u) {
    const int m = static_cast<int>(diag.size());
    for (int i = 0; i < m; ++i) {
        Matrix row = u(i) * diag[i];
        for (int j = 0; j < m; ++j) {
            if (j != i && offabs[i][j].size() > 0) {
                row -= u(j) * offabs[i][j];
            }
        }
        if (!is_positive_definite(row)) {
            return false;
        }
    }
    return true;
}

struct ZhatView {
    std::vector<Matrix> diag;                 ///< A_ii
    std::vector<std::vector<Matrix>> offabs;  ///< |A_ij|, empty matrix if zero
};

/// Validate Z-hat membership and precompute the row-check ingredients.
ZhatView make_zhat_view(const BlockMatrix& a) {
    const int m = a.block_rows();
    ZhatView view;
    view.diag.resize(m);
    view.offabs.assign(m, std::vector<Matrix>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Matrix& blk = a.block(i, j);
            if (!is_hermitian(blk)) {
                throw NotInZhatError(block_tag(i, j) + " is not Hermitian");
            }
            if (i == j) {
                if (!is_positive_definite(blk)) {
                    throw NotInZhatError(block_tag(i, j) +
                                         " is not positive definite");
                }
                view.diag[i] = 0.5 * (blk + blk.adjoint());
            } else {
                if (!is_negative_semidefinite(blk)) {
                    throw NotInZhatError(block_tag(i, j) +
                                         " is not negative semidefinite");
                }
                if (blk.norm() > 0.0) {
                    view.offabs[i][j] = hermitian_abs(blk);
                }
            }
        }
    }
    return view;
}

std::optional<Certificate> scalar_reduction_certificate(const BlockMatrix& a,
                                                        const ZhatView& view) {
    const int m = a.block_rows();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        s(i, i) = self_adjoint_eig(view.diag[i]).eigenvalues().minCoeff();
        for (int j = 0; j < m; ++j) {
            if (j != i && view.offabs[i][j].size() > 0) {
                s(i, j) = -self_adjoint_eig(view.offabs[i][j])
                               .eigenvalues()
                               .maxCoeff();
            }
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
    Eigen::VectorXd u = lu.solve(Eigen::VectorXd::Ones(m));
    if (!u.allFinite()) {
        return std::nullopt; // singular bound matrix
    }
    if (!((s * u - Eigen::VectorXd::Ones(m)).lpNorm<Eigen::Infinity>() <= 1e-8)) {
        return std::nullopt;
    }
    if (!(u.array() > 0.0).all()) {
        return std::nullopt;
    }
    if (!rows_positive_definite(view.diag, view.offabs, u)) {
        return std::nullopt;
    }
    return Certificate{u, CertificateMethod::ScalarReduction};
}

std::optional<Certificate> fixed_point_certificate(const BlockMatrix& a,
                                                   const ZhatView& view) {
    const int m = a.block_rows();
    const int k = a.block_size();

    // |A_ii|^{-1/2}
    std::vector<Matrix> inv_sqrt(m);
    for (int i = 0; i < m; ++i) {
        auto eig = self_adjoint_eig(view.diag[i]);
        Eigen::VectorXd w = eig.eigenvalues();
        inv_sqrt[i] = eig.eigenvectors() *
                      w.array().inverse().sqrt().matrix().asDiagonal() *
                      eig.eigenvectors().adjoint();
    }

    Eigen::VectorXd u = Eigen::VectorXd::Ones(m);
    constexpr int kMaxSweeps = 200;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (rows_positive_definite(view.diag, view.offabs, u)) {
            return Certificate{u, CertificateMethod::FixedPoint};
        }
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < m; ++i) {
            Matrix r = Matrix::Zero(k, k);
            bool any = false;
            for (int j = 0; j < m; ++j) {
                if (j != i && view.offabs[i][j].size() > 0) {
                    r += u(j) * view.offabs[i][j];
                    any = true;
                }
            }
            if (any) {
                Matrix scaled = inv_sqrt[i] * r * inv_sqrt[i];
                v(i) = self_adjoint_eig(scaled).eigenvalues().maxCoeff();
            }
        }
        const double floor = 1e-10 * std::max(v.maxCoeff(), 1.0);
        v = v.cwiseMax(floor);
        u = v / v.maxCoeff();
    }
    return std::nullopt;
}

std::optional<Certificate> grid_search_certificate(const BlockMatrix& a,
                                                   const ZhatView& view) {
    const int m = a.block_rows();
    if (m > 8) {
        return std::nullopt;
    }

    std::vector<double> values;
    bool fix_first = false;
    if (m <= 4) {
        for (int i = 1; i <= 30; ++i) {
            values.push_back(0.1 * i);
        }
    } else {
        values = {0.25, 0.5, 1.0, 2.0, 4.0};
        fix_first = true; // positive scaling invariance
    }

    const int free_dims = fix_first ? m - 1 : m;
    std::vector<size_t> idx(free_dims, 0);
    Eigen::VectorXd u(m);
    while (true) {
        int d0 = 0;
        if (fix_first) {
            u(0) = 1.0;
            d0 = 1;
        }
        for (int d = d0; d < m; ++d) {
            u(d) = values[idx[d - d0]];
        }
        if (rows_positive_definite(view.diag, view.offabs, u)) {
            return Certificate{u, CertificateMethod::GridSearch};
        }
        int d = 0;
        while (d < free_dims && ++idx[d] == values.size()) {
            idx[d] = 0;
            ++d;
        }
        if (d == free_dims) {
            break;
        }
    }
    return std::nullopt;
}

struct ClassFlags {
    bool hermitian_blocks = true;
    bool diag_pd = true;
    bool offd_nsd = true;
};

ClassFlags class_flags(const BlockMatrix& a) {
    ClassFlags f;
    const int m = a.block_rows();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Matrix& blk = a.block(i, j);
            if (!is_hermitian(blk)) {
                f.hermitian_blocks = false;
                continue;
            }
            if (i == j && !is_positive_definite(blk)) {
                f.diag_pd = false;
            }
            if (i != j && !is_negative_semidefinite(blk)) {
                f.offd_nsd = false;
            }
        }
    }
    return f;
}

ClassReport classify_impl(const BlockMatrix& a, const Eigen::VectorXd* user_u) {
    ClassFlags f = class_flags(a);
    ClassReport report;
    report.in_z = f.hermitian_blocks && f.offd_nsd;
    report.in_zhat = report.in_z && f.diag_pd;
    report.in_d = f.hermitian_blocks && f.diag_pd;

    if (report.in_zhat) {
        if (auto cert = find_m_certificate(a)) {
            report.m_certificate = cert->u;
        }
    }
    if (report.in_d) {
        BlockMatrix mu = comparison_matrix(a);
        if (user_u != nullptr && verify_m_certificate(mu, *user_u)) {
            report.h_certificate = *user_u;
            report.method = CertificateMethod::UserSupplied;
        } else if (auto cert = find_m_certificate(mu)) {
            report.h_certificate = cert->u;
            report.method = cert->method;
        }
    }
    return report;
}

} // namespace

bool is_hermitian(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) {
        return false;
    }
    return (h - h.adjoint()).norm() <= tol * std::max(1.0, h.norm());
}

Matrix hermitian_abs(const Matrix& h, double herm_tol) {
    if (h.rows() != h.cols()) {
        throw DimensionError("hermitian_abs needs a square matrix");
    }
    if ((h - h.adjoint()).norm() > herm_tol * std::max(1.0, h.norm())) {
        throw NonHermitianError("matrix is not Hermitian within tolerance");
    }
    auto eig = self_adjoint_eig(h);
    Matrix out = eig.eigenvectors() *
                 eig.eigenvalues().cwiseAbs().asDiagonal() *
                 eig.eigenvectors().adjoint();
    return 0.5 * (out + out.adjoint());
}

bool is_positive_definite(const Matrix& h, double tol) {
    if (!is_hermitian(h)) {
        throw NonHermitianError("definiteness test needs a Hermitian matrix");
    }
    auto eig = self_adjoint_eig(h);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    return lmin > tol * std::max(1.0, lmax);
}

bool is_positive_semidefinite(const Matrix& h, double tol) {
    if (!is_hermitian(h)) {
        throw NonHermitianError("definiteness test needs a Hermitian matrix");
    }
    auto eig = self_adjoint_eig(h);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    return lmin >= -tol * std::max(1.0, std::abs(lmax));
}

bool is_negative_semidefinite(const Matrix& h, double tol) {
    if (!is_hermitian(h)) {
        throw NonHermitianError("definiteness test needs a Hermitian matrix");
    }
    auto eig = self_adjoint_eig(h);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    return lmax <= tol * std::max(1.0, std::abs(lmin));
}

BlockMatrix comparison_matrix(const BlockMatrix& a) {
    const int m = a.block_rows();
    BlockMatrix mu(m, a.block_size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Matrix& blk = a.block(i, j);
            if (!is_hermitian(blk)) {
                throw NotInDError(block_tag(i, j) + " is not Hermitian");
            }
            if (i == j) {
                if (!is_positive_definite(blk)) {
                    throw NotInDError(block_tag(i, j) +
                                      " is not positive definite");
                }
                mu.block(i, i) = hermitian_abs(blk);
            } else {
                mu.block(i, j) = -hermitian_abs(blk);
            }
        }
    }
    return mu;
}

bool verify_m_certificate(const BlockMatrix& a, const Eigen::VectorXd& u) {
    const int m = a.block_rows();
    if (u.size() != m) {
        throw DimensionError("certificate length " + std::to_string(u.size()) +
                             " does not match block rows " + std::to_string(m));
    }
    if ((u.array() <= 0.0).any()) {
        throw NotPositiveVectorError("certificate has a nonpositive entry");
    }
    ZhatView view = make_zhat_view(a);
    return rows_positive_definite(view.diag, view.offabs, u);
}

std::optional<Certificate> find_m_certificate(const BlockMatrix& a,
                                              CertificateStrategy strategy) {
    ZhatView view = make_zhat_view(a);
    switch (strategy) {
    case CertificateStrategy::ScalarReduction:
        return scalar_reduction_certificate(a, view);
    case CertificateStrategy::FixedPoint:
        return fixed_point_certificate(a, view);
    case CertificateStrategy::GridSearch:
        return grid_search_certificate(a, view);
    case CertificateStrategy::Auto:
        break;
    }
    if (auto cert = scalar_reduction_certificate(a, view)) {
        return cert;
    }
    if (auto cert = fixed_point_certificate(a, view)) {
        return cert;
    }
    return grid_search_certificate(a, view);
}

ClassReport classify(const BlockMatrix& a) { return classify_impl(a, nullptr); }

ClassReport classify(const BlockMatrix& a, const Eigen::VectorXd& user_u) {
    return classify_impl(a, &user_u);
}

} // namespace msplit
