#include "msplit/block_matrix.hpp"

#include <cmath>
#include <string>

namespace msplit {

namespace {

void check_grid(int m, int k) {
    if (m < 1 || k < 1) {
        throw BadParamsError("block grid needs m >= 1 and k >= 1, got m=" +
                             std::to_string(m) + " k=" + std::to_string(k));
    }
}

} // namespace

BlockMatrix::BlockMatrix(int m, int k) : m_(m), k_(k) {
    check_grid(m, k);
    blocks_.assign(static_cast<size_t>(m) * m, Matrix::Zero(k, k));
}

BlockMatrix BlockMatrix::identity(int m, int k) {
    BlockMatrix out(m, k);
    for (int i = 0; i < m; ++i) {
        out.block(i, i) = Matrix::Identity(k, k);
    }
    return out;
}

BlockMatrix BlockMatrix::from_dense(const Matrix& dense, int m, int k) {
    check_grid(m, k);
    if (dense.rows() != m * k || dense.cols() != m * k) {
        throw DimensionError("dense matrix is " + std::to_string(dense.rows()) +
                             "x" + std::to_string(dense.cols()) +
                             ", expected " + std::to_string(m * k) + " square");
    }
    BlockMatrix out(m, k);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out.block(i, j) = dense.block(i * k, j * k, k, k);
        }
    }
    return out;
}

int BlockMatrix::index(int i, int j) const {
    if (i < 0 || i >= m_ || j < 0 || j >= m_) {
        throw DimensionError("block index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range for m=" +
                             std::to_string(m_));
    }
    return i * m_ + j;
}

void BlockMatrix::set_block(int i, int j, const Matrix& value) {
    if (value.rows() != k_ || value.cols() != k_) {
        throw DimensionError("block must be " + std::to_string(k_) + "x" +
                             std::to_string(k_));
    }
    blocks_[index(i, j)] = value;
}

Matrix BlockMatrix::dense() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < m_; ++j) {
            out.block(i * k_, j * k_, k_, k_) = block(i, j);
        }
    }
    return out;
}

double BlockMatrix::norm() const {
    double sq = 0.0;
    for (const Matrix& b : blocks_) {
        sq += b.squaredNorm();
    }
    return std::sqrt(sq);
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& rhs) {
    if (!same_shape(rhs)) {
        throw DimensionError("block matrix shapes differ");
    }
    for (size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] += rhs.blocks_[i];
    }
    return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& rhs) {
    if (!same_shape(rhs)) {
        throw DimensionError("block matrix shapes differ");
    }
    for (size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] -= rhs.blocks_[i];
    }
    return *this;
}

BlockMatrix& BlockMatrix::operator*=(Complex scale) {
    for (Matrix& b : blocks_) {
        b *= scale;
    }
    return *this;
}

BlockVector::BlockVector(int m, int k) : m_(m), k_(k) {
    check_grid(m, k);
    v_ = Vector::Zero(m * k);
}

BlockVector BlockVector::ones(int m, int k) {
    BlockVector out(m, k);
    out.v_.setOnes();
    return out;
}

BlockVector BlockVector::from_dense(Vector v, int m, int k) {
    check_grid(m, k);
    if (v.size() != m * k) {
        throw DimensionError("vector length " + std::to_string(v.size()) +
                             " does not match m*k = " + std::to_string(m * k));
    }
    BlockVector out(m, k);
    out.v_ = std::move(v);
    return out;
}

} // namespace msplit
