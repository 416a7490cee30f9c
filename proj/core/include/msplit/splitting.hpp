#pragma once

#include <utility>
#include <vector>

#include <Eigen/LU>

#include "msplit/block_matrix.hpp"

namespace msplit {

/// Weight-sum tolerance: per block row the weights of a multisplitting
/// must sum to one within this bound.
inline constexpr double kWeightSumTol = 1e-12;
/// An LU pivot below this (relative to the matrix norm) means singular.
inline constexpr double kPivotTol = 1e-13;

/// Off-diagonal block index pairs (0-based) owned by one splitting.
/// Diagonal pairs always belong to the kept part and are implied.
struct IndexSetSplit {
    std::vector<std::pair<int, int>> pairs;
};

/// Disjoint off-diagonal index sets assigning every pair a role in the
/// relaxed decomposition A = D - L - U, plus the relaxation parameters:
///   r_pairs -> kept in D (blocks A_ij)
///   s_pairs -> kept in L (blocks -A_ij)
///   t_pairs -> kept in U (blocks -A_ij)
/// The union must cover all off-diagonal pairs.
struct TripleSplit {
    std::vector<std::pair<int, int>> r_pairs;
    std::vector<std::pair<int, int>> s_pairs;
    std::vector<std::pair<int, int>> t_pairs;
    double gamma = 1.0;
    double omega = 1.0;
};

/// Nonnegative per-block-row weights of one splitting.
struct BlockWeights {
    Eigen::VectorXd e;
};

/// Uniform weights 1/r for every block row.
std::vector<BlockWeights> uniform_weights(int m, int r);

/// One splitting A = M - N.
struct SplitPair {
    BlockMatrix m;
    BlockMatrix n;
};

/// A decomposition A = D - L - U together with relaxation parameters,
/// defining the splitting M = (1/omega) (D - gamma L).
struct GaorPart {
    BlockMatrix d;
    BlockMatrix l;
    BlockMatrix u;
    double gamma = 1.0;
    double omega = 1.0;
};

/// Block triangular decomposition A = D - L - U with block-diagonal D and
/// strictly lower/upper triangular L, U holding the negated strict parts.
struct TriangularSplit {
    BlockMatrix d;
    BlockMatrix l;
    BlockMatrix u;
};

/// A collection of r splittings A = M_s - N_s with weights summing to one
/// per block row, plus cached LU factorizations of each M_s.
///
/// Immutable after construction and safe to share read-only across
/// solver workers.
class Multisplitting {
public:
    /// Validates shapes, weights (nonnegative, summing to one within
    /// kWeightSumTol) and factorizes every M_s (SingularMatrixError if a
    /// pivot falls below kPivotTol times the matrix norm).
    static Multisplitting from_parts(BlockMatrix a,
                                     std::vector<SplitPair> parts,
                                     std::vector<BlockWeights> weights);

    int count() const { return static_cast<int>(parts_.size()); }
    int block_rows() const { return a_.block_rows(); }
    int block_size() const { return a_.block_size(); }
    int dim() const { return a_.dim(); }

    const BlockMatrix& a() const { return a_; }
    const Matrix& a_dense() const { return a_dense_; }

    const SplitPair& part(int s) const { return parts_[s]; }
    const BlockWeights& weights(int s) const { return weights_[s]; }
    const Matrix& n_dense(int s) const { return n_dense_[s]; }
    const Eigen::PartialPivLU<Matrix>& factorization(int s) const { return lu_[s]; }

private:
    Multisplitting() = default;

    BlockMatrix a_;
    Matrix a_dense_;
    std::vector<SplitPair> parts_;
    std::vector<BlockWeights> weights_;
    std::vector<Matrix> n_dense_;
    std::vector<Eigen::PartialPivLU<Matrix>> lu_;
};

/// Build a multisplitting from index sets: M_s keeps A_ij on the diagonal
/// and on the pairs of qs[s]; N_s := M_s - A, so the splitting identity
/// holds exactly by construction.
Multisplitting multisplit_from_index_sets(const BlockMatrix& a,
                                          const std::vector<IndexSetSplit>& qs,
                                          const std::vector<BlockWeights>& ws);

/// Build the relaxed multisplitting M_s = (1/omega_s)(D_s - gamma_s L_s),
/// N_s = M_s - A from role-assigning index sets.
Multisplitting gaor_multisplitting(const BlockMatrix& a,
                                   const std::vector<TripleSplit>& triples,
                                   const std::vector<BlockWeights>& ws);

/// Same construction from explicit (D, L, U) matrices. Each part must
/// satisfy A = D - L - U (checked to machine precision).
Multisplitting gaor_from_parts(const BlockMatrix& a,
                               const std::vector<GaorPart>& parts,
                               const std::vector<BlockWeights>& ws);

/// Standard decomposition: D the block diagonal, L/U the negated strict
/// lower/upper block parts, so that a = d - l - u exactly. Requires
/// nonsingular diagonal blocks (SingularMatrixError).
TriangularSplit standard_triangular_split(const BlockMatrix& a);

/// Index pair sets for the standard decomposition of an m-by-m grid:
/// all strictly-lower pairs and all strictly-upper pairs.
std::vector<std::pair<int, int>> lower_pairs(int m);
std::vector<std::pair<int, int>> upper_pairs(int m);

/// Diagnostics over a constructed multisplitting.
struct ValidationReport {
    /// max_s ||A - (M_s - N_s)||_F
    double max_reconstruction_error = 0.0;
    /// max_i |sum_s e_s^i - 1|
    double max_weight_deviation = 0.0;
    /// Reciprocal condition estimate of each factorized M_s.
    std::vector<double> rcond;

    bool ok(double tol = 1e-10) const {
        return max_reconstruction_error <= tol && max_weight_deviation <= tol;
    }
};

ValidationReport validate(const Multisplitting& ms);

} // namespace msplit
