#include "msplit/generators.hpp"

#include <string>

#include <Eigen/SVD>

#include "msplit/blockcore.hpp"

namespace msplit {

namespace {

void require_herm_psd(const Matrix& h, int k, const char* name) {
    if (h.rows() != k || h.cols() != k) {
        throw BadParamsError(std::string(name) + " must be " +
                             std::to_string(k) + "x" + std::to_string(k));
    }
    if (!is_hermitian(h)) {
        throw BadParamsError(std::string(name) + " must be Hermitian");
    }
    if (!is_positive_semidefinite(h)) {
        throw BadParamsError(std::string(name) +
                             " must be positive semidefinite");
    }
}

Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    Matrix out(n, rows.begin()->size());
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) {
            out(i, j++) = v;
        }
        ++i;
    }
    return out;
}

} // namespace

EulerSystem euler_system(const EulerParams& params) {
    const int k = params.k;
    if (params.p < 1 || params.r_inner < 1 || k < 1) {
        throw BadParamsError("need p >= 1, r_inner >= 1, k >= 1");
    }
    require_herm_psd(params.a_plus, k, "a_plus");
    require_herm_psd(params.a_minus, k, "a_minus");
    require_herm_psd(params.b_plus, k, "b_plus");
    require_herm_psd(params.b_minus, k, "b_minus");

    // the difference matrices may not share a null vector
    Matrix stacked(2 * k, k);
    stacked.topRows(k) = params.a_plus - params.a_minus;
    stacked.bottomRows(k) = params.b_plus - params.b_minus;
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const double smax = svd.singularValues().maxCoeff();
    if (!(svd.singularValues().minCoeff() > 1e-12 * std::max(1.0, smax))) {
        throw BadParamsError(
            "a_plus - a_minus and b_plus - b_minus share a null vector");
    }

    EulerSystem sys;
    sys.params = params;
    const Matrix c =
        params.a_plus + params.a_minus + params.b_plus + params.b_minus;

    const int r = params.r_inner;
    sys.t = BlockMatrix(r, k);
    for (int i = 0; i < r; ++i) {
        sys.t.block(i, i) = c;
        if (i > 0) {
            sys.t.block(i, i - 1) = -params.a_plus;
            sys.t.block(i - 1, i) = -params.a_minus;
        }
    }
    sys.s1 = BlockMatrix(r, k);
    sys.s2 = BlockMatrix(r, k);
    for (int i = 0; i < r; ++i) {
        sys.s1.block(i, i) = -params.b_minus;
        sys.s2.block(i, i) = -params.b_plus;
    }

    const int p = params.p;
    sys.m = BlockMatrix(p * r, k);
    for (int o = 0; o < p; ++o) {
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                sys.m.block(o * r + i, o * r + j) = sys.t.block(i, j);
            }
            if (o > 0) {
                sys.m.block(o * r + i, (o - 1) * r + i) = -params.b_plus;
                sys.m.block((o - 1) * r + i, o * r + i) = -params.b_minus;
            }
        }
    }
    return sys;
}

BlockMatrix euler_matrix(const EulerParams& params) {
    return euler_system(params).m;
}

std::vector<SplitPair> lift_splitting(const EulerSystem& sys,
                                      const std::vector<SplitPair>& t_parts) {
    const int p = sys.params.p;
    const int r = sys.params.r_inner;
    const int k = sys.params.k;
    std::vector<SplitPair> out;
    out.reserve(t_parts.size());
    for (const SplitPair& part : t_parts) {
        if (!part.m.same_shape(sys.t) || !part.n.same_shape(sys.t)) {
            throw DimensionError(
                "inner splitting does not match the inner matrix shape");
        }
        BlockMatrix lifted(p * r, k);
        for (int o = 0; o < p; ++o) {
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    lifted.block(o * r + i, o * r + j) = part.m.block(i, j);
                }
            }
        }
        BlockMatrix q = lifted - sys.m;
        out.push_back({std::move(lifted), std::move(q)});
    }
    return out;
}

GaorPart lift_triangular(const EulerSystem& sys, const GaorPart& t_part) {
    if (!t_part.d.same_shape(sys.t) || !t_part.l.same_shape(sys.t) ||
        !t_part.u.same_shape(sys.t)) {
        throw DimensionError(
            "inner decomposition does not match the inner matrix shape");
    }
    BlockMatrix residual = t_part.d - t_part.l - t_part.u - sys.t;
    if (residual.norm() > 1e-12 * std::max(1.0, sys.t.norm())) {
        throw BadParamsError("inner decomposition does not reproduce the "
                             "inner matrix");
    }
    const int p = sys.params.p;
    const int r = sys.params.r_inner;
    const int k = sys.params.k;
    GaorPart out;
    out.gamma = t_part.gamma;
    out.omega = t_part.omega;
    out.d = BlockMatrix(p * r, k);
    out.l = BlockMatrix(p * r, k);
    out.u = BlockMatrix(p * r, k);
    for (int o = 0; o < p; ++o) {
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                out.d.block(o * r + i, o * r + j) = t_part.d.block(i, j);
                out.l.block(o * r + i, o * r + j) = t_part.l.block(i, j);
                out.u.block(o * r + i, o * r + j) = t_part.u.block(i, j);
            }
            if (o > 0) {
                // couplings fold into L below and U above, negated so that
                // the full matrix stays D - L - U exactly
                out.l.block(o * r + i, (o - 1) * r + i) = -sys.s2.block(i, i);
                out.u.block((o - 1) * r + i, o * r + i) = -sys.s1.block(i, i);
            }
        }
    }
    return out;
}

Example51 example51() {
    BlockMatrix a(3, 2);
    a.block(0, 0) = real_matrix({{3, -2}, {-2, 3}});
    a.block(0, 1) = real_matrix({{2, -1}, {-1, 2}});
    a.block(0, 2) = real_matrix({{1, -1}, {-1, 1}});
    a.block(1, 0) = real_matrix({{40, -35}, {-35, 40}});
    a.block(1, 1) = real_matrix({{100, -80}, {-80, 90}});
    a.block(1, 2) = real_matrix({{-50, 40}, {40, -40}});
    a.block(2, 0) = real_matrix({{3, -3}, {-3, 3}});
    a.block(2, 1) = real_matrix({{-6, 4}, {4, -5}});
    a.block(2, 2) = real_matrix({{10, -8}, {-8, 9}});

    std::vector<IndexSetSplit> qs(3);
    qs[0].pairs = {{0, 1}, {0, 2}, {1, 2}};
    qs[1].pairs = {{1, 0}, {2, 0}, {2, 1}};
    qs[2].pairs = {};

    // The weight vectors are paired so that the combined iteration
    // reproduces the published spectral radius 0.8987: the upper split
    // carries (1/2, 1/6, 1/3), the lower one (1/6, 1/3, 1/2) and the
    // diagonal one (1/3, 1/2, 1/6).
    std::vector<BlockWeights> ws(3);
    ws[0].e = Eigen::Vector3d(1.0 / 2, 1.0 / 6, 1.0 / 3);
    ws[1].e = Eigen::Vector3d(1.0 / 6, 1.0 / 3, 1.0 / 2);
    ws[2].e = Eigen::Vector3d(1.0 / 3, 1.0 / 2, 1.0 / 6);

    Example51 out{a, multisplit_from_index_sets(a, qs, ws)};
    return out;
}

Example52 example52() {
    EulerParams params;
    params.p = 4;
    params.r_inner = 3;
    params.k = 2;
    params.a_plus = real_matrix({{2, -1}, {-1, 2}});
    params.a_minus = params.a_plus;
    params.b_plus = real_matrix({{2, 2}, {2, 2}});
    params.b_minus = real_matrix({{2, -2}, {-2, 2}});

    Example52 out{euler_system(params), BlockVector(12, 2), {}};

    const double b_values[24] = {1, 3, 1, 2, 5, 3, 2, 1, 7,   5, 9, 0,
                                 2, 0, 1, 2, 1, 0, 1, 3, 1.2, 4, 6, 8};
    for (int i = 0; i < 24; ++i) {
        out.b.flat()(i) = b_values[i];
    }

    // Six splittings of the inner matrix, stored as literal block
    // patterns: each keeps the diagonal plus a different subset of the
    // couplings.
    const Matrix c = out.sys.t.block(0, 0);
    const Matrix sub = -params.a_plus;
    const Matrix sup = -params.a_minus;
    auto make = [&](std::initializer_list<std::pair<std::pair<int, int>, const Matrix*>>
                        entries) {
        BlockMatrix m(3, 2);
        for (int i = 0; i < 3; ++i) {
            m.block(i, i) = c;
        }
        for (const auto& [pos, value] : entries) {
            m.block(pos.first, pos.second) = *value;
        }
        BlockMatrix n = m - out.sys.t;
        return SplitPair{std::move(m), std::move(n)};
    };
    out.t_splittings.push_back(make({{{1, 0}, &sub}, {{2, 1}, &sub}}));
    out.t_splittings.push_back(make({{{0, 1}, &sup}, {{1, 2}, &sup}}));
    out.t_splittings.push_back(make({{{1, 0}, &sub}, {{1, 2}, &sup}}));
    out.t_splittings.push_back(make({{{0, 1}, &sup}, {{2, 1}, &sub}}));
    out.t_splittings.push_back(make({{{0, 1}, &sup}, {{1, 0}, &sub}}));
    out.t_splittings.push_back(make({{{1, 2}, &sup}, {{2, 1}, &sub}}));
    return out;
}

EllipticParams elliptic_case(int m_dim, int n_dim, int variant) {
    EllipticParams params;
    params.m_dim = m_dim;
    params.n_dim = n_dim;
    if (variant == 1) {
        params.m1 = (3 * n_dim) / 4;
        params.m2 = n_dim / 4;
    } else if (variant == 2) {
        params.m1 = (5 * n_dim) / 6;
        params.m2 = n_dim / 6;
    } else {
        throw BadParamsError("variant must be 1 or 2");
    }
    params.m2 = std::max(params.m2, 1);
    return params;
}

BlockMatrix elliptic_matrix(const EllipticParams& params) {
    const int md = params.m_dim;
    const int nd = params.n_dim;
    if (md < 1 || nd < 1) {
        throw BadParamsError("grid dimensions must be positive");
    }
    Matrix b = Matrix::Zero(md, md);
    for (int i = 0; i < md; ++i) {
        b(i, i) = 4.0;
        if (i > 0) {
            b(i, i - 1) = -1.0;
            b(i - 1, i) = -1.0;
        }
    }
    BlockMatrix a(nd, md);
    const Matrix eye = Matrix::Identity(md, md);
    for (int i = 0; i < nd; ++i) {
        a.block(i, i) = b;
        if (i > 0) {
            a.block(i, i - 1) = -eye;
            a.block(i - 1, i) = -eye;
        }
    }
    return a;
}

EllipticSplitting elliptic_two_splitting(const EllipticParams& params,
                                         double gamma, double omega) {
    const int n = params.n_dim;
    const int m1 = params.m1;
    const int m2 = params.m2;
    if (!(1 <= m2 && m2 < m1 && m1 <= n)) {
        throw BadParamsError("need 1 <= m2 < m1 <= n, got m1=" +
                             std::to_string(m1) + " m2=" + std::to_string(m2) +
                             " n=" + std::to_string(n));
    }
    const int k = params.m_dim;
    BlockMatrix a = elliptic_matrix(params);

    BlockMatrix d(n, k);
    for (int i = 0; i < n; ++i) {
        d.block(i, i) = a.block(i, i);
    }
    const Matrix eye = Matrix::Identity(k, k);
    auto sub_band = [&](int lo, int hi) {
        // identity couplings on rows lo..hi (1-based), below the diagonal
        BlockMatrix out(n, k);
        for (int i = std::max(lo, 2); i <= hi; ++i) {
            out.block(i - 1, i - 2) = eye;
        }
        return out;
    };

    BlockMatrix l1 = sub_band(2, m1);
    BlockMatrix l2 = sub_band(m2, n);
    BlockMatrix u1 = sub_band(m1 + 1, n);
    BlockMatrix u2 = sub_band(2, m2 - 1);
    for (int i = 1; i <= n - 1; ++i) {
        u1.block(i - 1, i) = eye;
        u2.block(i - 1, i) = eye;
    }

    EllipticSplitting out;
    out.parts.push_back({d, std::move(l1), std::move(u1), gamma, omega});
    out.parts.push_back({std::move(d), std::move(l2), std::move(u2), gamma, omega});

    Eigen::VectorXd e1(n);
    for (int i = 1; i <= n; ++i) {
        if (i <= m2) {
            e1(i - 1) = 1.0;
        } else if (i <= m1 - 1) {
            e1(i - 1) = 0.5;
        } else {
            e1(i - 1) = 0.0;
        }
    }
    out.weights.resize(2);
    out.weights[0].e = e1;
    out.weights[1].e = Eigen::VectorXd::Ones(n) - e1;
    return out;
}

} // namespace msplit
