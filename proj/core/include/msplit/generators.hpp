#pragma once

#include <vector>

#include "msplit/splitting.hpp"

namespace msplit {

/// Parameters of the flux-split block tridiagonal family: an outer
/// p-by-p block tridiagonal matrix whose diagonal blocks are themselves
/// block tridiagonal of inner dimension r_inner, built from Hermitian
/// positive semidefinite parts a_plus, a_minus, b_plus, b_minus of the
/// base size k.
struct EulerParams {
    int p = 1;
    int r_inner = 1;
    int k = 1;
    Matrix a_plus, a_minus, b_plus, b_minus;
};

/// The assembled family instance: the inner matrix t (r_inner blocks of
/// size k), the inner-diagonal coupling blocks s1/s2 and the full matrix
/// m with p * r_inner block rows.
struct EulerSystem {
    EulerParams params;
    BlockMatrix t;
    BlockMatrix s1;
    BlockMatrix s2;
    BlockMatrix m;
};

/// Validates the parameters (Hermitian PSD parts; the difference
/// matrices a_plus - a_minus and b_plus - b_minus must have no common
/// null vector) and assembles the system. Throws BadParamsError.
EulerSystem euler_system(const EulerParams& params);

/// Just the assembled full matrix.
BlockMatrix euler_matrix(const EulerParams& params);

/// Lift splittings of the inner matrix t to splittings of the full
/// matrix: P_s is the block diagonal of p copies of M_s and Q_s := P_s - m,
/// which places N_s on the outer diagonal and the negated couplings off it.
std::vector<SplitPair> lift_splitting(const EulerSystem& sys,
                                      const std::vector<SplitPair>& t_parts);

/// Lift a decomposition t = d - l - u of the inner matrix to the full
/// matrix: block-diagonal copies plus the sub-diagonal coupling folded
/// into L and the super-diagonal coupling folded into U, preserving
/// m = D - L - U exactly.
GaorPart lift_triangular(const EulerSystem& sys, const GaorPart& t_part);

/// Fixed 6-by-6 three-way reference system (m = 3, k = 2) with its
/// published multisplitting.
struct Example51 {
    BlockMatrix a;
    Multisplitting ms;
};
Example51 example51();

/// 24-by-24 flux-split reference system (p = 4, r_inner = 3, k = 2) with
/// its right-hand side and the six stated splittings of the inner matrix.
struct Example52 {
    EulerSystem sys;
    BlockVector b;
    std::vector<SplitPair> t_splittings;
};
Example52 example52();

/// Block tridiagonal grid family: n_dim diagonal blocks B (the m_dim-point
/// second-difference stencil with diagonal 4) coupled by negated identities,
/// plus the two-way overlap split indices m1, m2.
struct EllipticParams {
    int m_dim = 1;
    int n_dim = 1;
    int m1 = 1;
    int m2 = 1;
};

/// m1 = floor(3n/4), m2 = floor(n/4) for variant 1;
/// m1 = floor(5n/6), m2 = floor(n/6) for variant 2.
/// m2 is clamped to at least 1.
EllipticParams elliptic_case(int m_dim, int n_dim, int variant);

BlockMatrix elliptic_matrix(const EllipticParams& params);

/// The two-way overlapping decomposition A = D - L_s - U_s (s = 1, 2)
/// with the overlap band of rows m2+1 .. m1-1 weighted 1/2 in each part.
struct EllipticSplitting {
    std::vector<GaorPart> parts;
    std::vector<BlockWeights> weights;
};
EllipticSplitting elliptic_two_splitting(const EllipticParams& params,
                                         double gamma = 1.0,
                                         double omega = 1.0);

} // namespace msplit
