#include "msplit/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace msplit {

namespace {

void check_pair_range(const std::pair<int, int>& p, int m) {
    auto [i, j] = p;
    if (i < 0 || i >= m || j < 0 || j >= m) {
        throw BadParamsError("index pair (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") out of range for m=" +
                             std::to_string(m));
    }
    if (i == j) {
        throw BadParamsError("index pair (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) +
                             ") is diagonal; diagonal blocks are implied");
    }
}

void check_nonsingular(const Eigen::PartialPivLU<Matrix>& lu, double norm,
                       const std::string& what) {
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(min_pivot > kPivotTol * norm)) {
        throw SingularMatrixError(what + " is singular (pivot " +
                                  std::to_string(min_pivot) + ")");
    }
}

} // namespace

std::vector<BlockWeights> uniform_weights(int m, int r) {
    if (m < 1 || r < 1) {
        throw BadParamsError("uniform_weights needs m >= 1 and r >= 1");
    }
    std::vector<BlockWeights> ws(r);
    for (auto& w : ws) {
        w.e = Eigen::VectorXd::Constant(m, 1.0 / r);
    }
    return ws;
}

std::vector<std::pair<int, int>> lower_pairs(int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> upper_pairs(int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

Multisplitting Multisplitting::from_parts(BlockMatrix a,
                                          std::vector<SplitPair> parts,
                                          std::vector<BlockWeights> weights) {
    const int r = static_cast<int>(parts.size());
    if (r < 1) {
        throw BadParamsError("a multisplitting needs at least one splitting");
    }
    if (weights.size() != parts.size()) {
        throw BadParamsError("got " + std::to_string(parts.size()) +
                             " splittings but " +
                             std::to_string(weights.size()) + " weight vectors");
    }
    const int m = a.block_rows();
    for (int s = 0; s < r; ++s) {
        if (!parts[s].m.same_shape(a) || !parts[s].n.same_shape(a)) {
            throw DimensionError("splitting " + std::to_string(s + 1) +
                                 " does not match the matrix shape");
        }
        if (weights[s].e.size() != m) {
            throw DimensionError("weight vector " + std::to_string(s + 1) +
                                 " has length " +
                                 std::to_string(weights[s].e.size()) +
                                 ", expected " + std::to_string(m));
        }
        if ((weights[s].e.array() < 0.0).any()) {
            throw BadParamsError("weight vector " + std::to_string(s + 1) +
                                 " has a negative entry");
        }
    }
    for (int i = 0; i < m; ++i) {
        double sum = 0.0;
        for (int s = 0; s < r; ++s) {
            sum += weights[s].e(i);
        }
        if (std::abs(sum - 1.0) > kWeightSumTol) {
            throw WeightSumError("weights on block row " + std::to_string(i + 1) +
                                 " sum to " + std::to_string(sum));
        }
    }

    Multisplitting ms;
    ms.a_ = std::move(a);
    ms.a_dense_ = ms.a_.dense();
    ms.parts_ = std::move(parts);
    ms.weights_ = std::move(weights);
    ms.n_dense_.reserve(r);
    ms.lu_.reserve(r);
    for (int s = 0; s < r; ++s) {
        Matrix m_dense = ms.parts_[s].m.dense();
        ms.lu_.emplace_back(m_dense);
        check_nonsingular(ms.lu_.back(), m_dense.norm(),
                          "splitting matrix " + std::to_string(s + 1));
        ms.n_dense_.push_back(ms.parts_[s].n.dense());
    }
    return ms;
}

Multisplitting multisplit_from_index_sets(const BlockMatrix& a,
                                          const std::vector<IndexSetSplit>& qs,
                                          const std::vector<BlockWeights>& ws) {
    if (qs.empty()) {
        throw BadParamsError("need at least one index set");
    }
    const int m = a.block_rows();
    const int k = a.block_size();
    std::vector<SplitPair> parts;
    parts.reserve(qs.size());
    for (const IndexSetSplit& q : qs) {
        BlockMatrix ms(m, k);
        for (int i = 0; i < m; ++i) {
            ms.block(i, i) = a.block(i, i);
        }
        for (const auto& p : q.pairs) {
            check_pair_range(p, m);
            ms.block(p.first, p.second) = a.block(p.first, p.second);
        }
        BlockMatrix ns = ms - a;
        parts.push_back({std::move(ms), std::move(ns)});
    }
    return Multisplitting::from_parts(a, std::move(parts), ws);
}

Multisplitting gaor_from_parts(const BlockMatrix& a,
                               const std::vector<GaorPart>& parts,
                               const std::vector<BlockWeights>& ws) {
    if (parts.empty()) {
        throw BadParamsError("need at least one decomposition");
    }
    std::vector<SplitPair> split_parts;
    split_parts.reserve(parts.size());
    int s = 0;
    for (const GaorPart& part : parts) {
        ++s;
        if (!(part.omega > 0.0)) {
            throw BadParamsError("omega must be positive, got " +
                                 std::to_string(part.omega) + " in part " +
                                 std::to_string(s));
        }
        if (part.gamma < 0.0) {
            throw BadParamsError("gamma must be nonnegative, got " +
                                 std::to_string(part.gamma) + " in part " +
                                 std::to_string(s));
        }
        if (!part.d.same_shape(a) || !part.l.same_shape(a) ||
            !part.u.same_shape(a)) {
            throw DimensionError("decomposition " + std::to_string(s) +
                                 " does not match the matrix shape");
        }
        BlockMatrix residual = part.d - part.l - part.u - a;
        if (residual.norm() > 1e-12 * std::max(1.0, a.norm())) {
            throw BadParamsError("part " + std::to_string(s) +
                                 " does not decompose the matrix: ||A - (D-L-U)|| = " +
                                 std::to_string(residual.norm()));
        }
        BlockMatrix ms = part.d;
        ms -= Complex(part.gamma) * part.l;
        ms *= Complex(1.0 / part.omega);
        BlockMatrix ns = ms - a;
        split_parts.push_back({std::move(ms), std::move(ns)});
    }
    return Multisplitting::from_parts(a, std::move(split_parts), ws);
}

Multisplitting gaor_multisplitting(const BlockMatrix& a,
                                   const std::vector<TripleSplit>& triples,
                                   const std::vector<BlockWeights>& ws) {
    if (triples.empty()) {
        throw BadParamsError("need at least one index-set triple");
    }
    const int m = a.block_rows();
    const int k = a.block_size();
    std::vector<GaorPart> parts;
    parts.reserve(triples.size());
    for (const TripleSplit& t : triples) {
        // every off-diagonal pair must appear in exactly one role
        std::vector<char> role(static_cast<size_t>(m) * m, 0);
        auto assign = [&](const std::vector<std::pair<int, int>>& pairs,
                          char tag) {
            for (const auto& p : pairs) {
                check_pair_range(p, m);
                char& slot = role[static_cast<size_t>(p.first) * m + p.second];
                if (slot != 0) {
                    throw BadParamsError(
                        "index pair (" + std::to_string(p.first + 1) + "," +
                        std::to_string(p.second + 1) +
                        ") assigned to more than one of R/S/T");
                }
                slot = tag;
            }
        };
        assign(t.r_pairs, 'r');
        assign(t.s_pairs, 's');
        assign(t.t_pairs, 't');
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i != j && role[static_cast<size_t>(i) * m + j] == 0) {
                    throw BadParamsError("index pair (" + std::to_string(i + 1) +
                                         "," + std::to_string(j + 1) +
                                         ") not covered by R/S/T");
                }
            }
        }

        GaorPart part;
        part.gamma = t.gamma;
        part.omega = t.omega;
        part.d = BlockMatrix(m, k);
        part.l = BlockMatrix(m, k);
        part.u = BlockMatrix(m, k);
        for (int i = 0; i < m; ++i) {
            part.d.block(i, i) = a.block(i, i);
        }
        for (const auto& p : t.r_pairs) {
            part.d.block(p.first, p.second) = a.block(p.first, p.second);
        }
        for (const auto& p : t.s_pairs) {
            part.l.block(p.first, p.second) = -a.block(p.first, p.second);
        }
        for (const auto& p : t.t_pairs) {
            part.u.block(p.first, p.second) = -a.block(p.first, p.second);
        }
        parts.push_back(std::move(part));
    }
    return gaor_from_parts(a, parts, ws);
}

TriangularSplit standard_triangular_split(const BlockMatrix& a) {
    const int m = a.block_rows();
    const int k = a.block_size();
    TriangularSplit out{BlockMatrix(m, k), BlockMatrix(m, k), BlockMatrix(m, k)};
    for (int i = 0; i < m; ++i) {
        Eigen::PartialPivLU<Matrix> lu(a.block(i, i));
        check_nonsingular(lu, a.block(i, i).norm(),
                          "diagonal block " + std::to_string(i + 1));
        out.d.block(i, i) = a.block(i, i);
        for (int j = 0; j < i; ++j) {
            out.l.block(i, j) = -a.block(i, j);
        }
        for (int j = i + 1; j < m; ++j) {
            out.u.block(i, j) = -a.block(i, j);
        }
    }
    return out;
}

ValidationReport validate(const Multisplitting& ms) {
    ValidationReport report;
    const int r = ms.count();
    const int m = ms.block_rows();
    for (int s = 0; s < r; ++s) {
        BlockMatrix residual = ms.part(s).m - ms.part(s).n - ms.a();
        report.max_reconstruction_error =
            std::max(report.max_reconstruction_error, residual.norm());
        report.rcond.push_back(ms.factorization(s).rcond());
    }
    for (int i = 0; i < m; ++i) {
        double sum = 0.0;
        for (int s = 0; s < r; ++s) {
            sum += ms.weights(s).e(i);
        }
        report.max_weight_deviation =
            std::max(report.max_weight_deviation, std::abs(sum - 1.0));
    }
    return report;
}

} // namespace msplit
