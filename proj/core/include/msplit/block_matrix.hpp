#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "msplit/errors.hpp"

namespace msplit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Square block matrix: an m-by-m grid of dense k-by-k complex blocks.
///
/// The total dimension is k*m. Blocks are stored row-major and always have
/// shape k-by-k; the grid shape is fixed at construction.
class BlockMatrix {
public:
    BlockMatrix() = default;

    /// m-by-m grid of zero k-by-k blocks.
    BlockMatrix(int m, int k);

    static BlockMatrix identity(int m, int k);

    /// Cut a dense (k*m)-by-(k*m) matrix into contiguous k-by-k blocks.
    static BlockMatrix from_dense(const Matrix& dense, int m, int k);

    int block_rows() const { return m_; }
    int block_size() const { return k_; }
    int dim() const { return m_ * k_; }

    const Matrix& block(int i, int j) const { return blocks_[index(i, j)]; }
    Matrix& block(int i, int j) { return blocks_[index(i, j)]; }

    /// Shape-checked block assignment.
    void set_block(int i, int j, const Matrix& value);

    /// Assemble the dense (k*m)-by-(k*m) matrix.
    Matrix dense() const;

    /// Frobenius norm over all blocks.
    double norm() const;

    bool same_shape(const BlockMatrix& other) const {
        return m_ == other.m_ && k_ == other.k_;
    }

    BlockMatrix& operator+=(const BlockMatrix& rhs);
    BlockMatrix& operator-=(const BlockMatrix& rhs);
    BlockMatrix& operator*=(Complex scale);

    friend BlockMatrix operator+(BlockMatrix lhs, const BlockMatrix& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend BlockMatrix operator-(BlockMatrix lhs, const BlockMatrix& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend BlockMatrix operator*(Complex scale, BlockMatrix rhs) {
        rhs *= scale;
        return rhs;
    }

private:
    int index(int i, int j) const;

    int m_ = 0;
    int k_ = 0;
    std::vector<Matrix> blocks_;
};

/// Block vector: m contiguous segments of length k.
class BlockVector {
public:
    BlockVector() = default;
    BlockVector(int m, int k);

    static BlockVector ones(int m, int k);
    static BlockVector from_dense(Vector v, int m, int k);

    int block_rows() const { return m_; }
    int block_size() const { return k_; }
    int dim() const { return m_ * k_; }

    auto segment(int i) const { return v_.segment(i * k_, k_); }
    auto segment(int i) { return v_.segment(i * k_, k_); }

    const Vector& flat() const { return v_; }
    Vector& flat() { return v_; }

    double norm() const { return v_.norm(); }

    bool same_shape(const BlockVector& other) const {
        return m_ == other.m_ && k_ == other.k_;
    }

private:
    int m_ = 0;
    int k_ = 0;
    Vector v_;
};

} // namespace msplit
