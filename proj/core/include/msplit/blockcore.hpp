#pragma once

#include <optional>

#include "msplit/block_matrix.hpp"

namespace msplit {

/// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Relative threshold used by the definiteness tests.
inline constexpr double kDefiniteTol = 1e-10;

/// Hermitian absolute value |H| = V |Lambda| V^H.
///
/// The input is symmetrized before the eigendecomposition; it must be
/// Hermitian within `herm_tol` relative to its norm or NonHermitianError
/// is thrown. The result is Hermitian positive semidefinite, commutes
/// with H and squares to H*H.
Matrix hermitian_abs(const Matrix& h, double herm_tol = kHermitianTol);

/// True iff lambda_min(H) > tol * max(1, lambda_max(H)).
bool is_positive_definite(const Matrix& h, double tol = kDefiniteTol);

/// True iff lambda_max(H) < -tol * max(1, -lambda_min(H)) fails in reverse,
/// i.e. the largest eigenvalue is <= tol * max(1, |lambda_min|).
bool is_negative_semidefinite(const Matrix& h, double tol = kDefiniteTol);

/// True iff lambda_min(H) >= -tol * max(1, lambda_max(H)).
bool is_positive_semidefinite(const Matrix& h, double tol = kDefiniteTol);

/// True iff H is Hermitian within the relative tolerance.
bool is_hermitian(const Matrix& h, double tol = kHermitianTol);

/// Block comparison matrix: |A_ii| on the diagonal, -|A_ij| off it.
/// Requires every block Hermitian and every diagonal block positive
/// definite (NotInDError otherwise).
BlockMatrix comparison_matrix(const BlockMatrix& a);

/// Check that u > 0 and sum_j u_j A_ij is positive definite for every
/// block row i. Requires membership in the Z-hat class (Hermitian blocks,
/// negative semidefinite off-diagonal blocks, positive definite diagonal
/// blocks); throws NotInZhatError / NotPositiveVectorError otherwise.
bool verify_m_certificate(const BlockMatrix& a, const Eigen::VectorXd& u);

enum class CertificateStrategy {
    Auto,            ///< scalar reduction, then fixed point, then grid
    ScalarReduction, ///< m-by-m scalar bound S u = 1
    FixedPoint,      ///< block-level monotone fixed-point iteration
    GridSearch,      ///< exhaustive small-m grid scan
};

enum class CertificateMethod {
    ScalarReduction,
    FixedPoint,
    GridSearch,
    UserSupplied,
};

struct Certificate {
    Eigen::VectorXd u;
    CertificateMethod method;
};

/// Search for a positive vector u with sum_j u_j A_ij > 0 per block row.
///
/// The search is sufficient-only: an empty result means "no certificate
/// found", never "no certificate exists".
///
///  - ScalarReduction builds the real m-by-m matrix S with
///    S_ii = lambda_min(|A_ii|), S_ij = -lambda_max(|A_ij|) and accepts the
///    solution of S u = 1 when it is positive.
///  - FixedPoint iterates u_i <- lambda_max(|A_ii|^{-1/2} R_i(u) |A_ii|^{-1/2})
///    with R_i(u) = sum_{j != i} u_j |A_ij|, which is sharper than the
///    scalar bound because it keeps the eigenvector structure of the blocks.
///  - GridSearch scans u in {0.1, 0.2, ..., 3.0}^m for m <= 4 and a coarse
///    logarithmic grid for m <= 8.
std::optional<Certificate> find_m_certificate(
    const BlockMatrix& a,
    CertificateStrategy strategy = CertificateStrategy::Auto);

/// Classification against the block matrix classes.
struct ClassReport {
    bool in_z = false;    ///< Hermitian blocks, off-diagonal blocks <= 0
    bool in_zhat = false; ///< in_z and diagonal blocks > 0
    bool in_d = false;    ///< Hermitian blocks, diagonal blocks > 0

    /// Certificate for A itself (generalized M-matrix membership).
    std::optional<Eigen::VectorXd> m_certificate;
    /// Certificate for mu(A) (generalized H-matrix membership).
    std::optional<Eigen::VectorXd> h_certificate;
    /// How h_certificate was obtained, when present.
    std::optional<CertificateMethod> method;

    bool is_generalized_h() const { return h_certificate.has_value(); }
};

/// Classify A. Absence of a certificate reports "unknown", never "not in
/// the class": the search is sufficient-only.
ClassReport classify(const BlockMatrix& a);

/// Classify with a user-supplied candidate certificate for mu(A). The
/// vector is verified before being recorded.
ClassReport classify(const BlockMatrix& a, const Eigen::VectorXd& user_u);

} // namespace msplit
