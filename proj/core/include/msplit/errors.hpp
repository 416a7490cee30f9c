#pragma once

#include <stdexcept>
#include <string>

namespace msplit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be Hermitian is not, beyond tolerance.
class NonHermitianError : public Error {
public:
    using Error::Error;
};

/// Input is not in the class of block matrices with Hermitian blocks and
/// positive definite diagonal blocks.
class NotInDError : public Error {
public:
    using Error::Error;
};

/// Input is not in the class of block matrices with Hermitian blocks,
/// negative semidefinite off-diagonal blocks and positive definite
/// diagonal blocks.
class NotInZhatError : public Error {
public:
    using Error::Error;
};

/// A certificate vector has a nonpositive entry.
class NotPositiveVectorError : public Error {
public:
    using Error::Error;
};

/// LU factorization hit a pivot below the singularity threshold.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Weights of a multisplitting do not sum to one on some block row.
class WeightSumError : public Error {
public:
    using Error::Error;
};

/// Invalid scalar or structural parameter (omega <= 0, bad index sets, ...).
class BadParamsError : public Error {
public:
    using Error::Error;
};

/// The dense eigensolver failed to converge.
class EigFailureError : public Error {
public:
    using Error::Error;
};

/// Not enough recorded iterations for a rate estimate.
class TooFewIterationsError : public Error {
public:
    using Error::Error;
};

/// File could not be read, written or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace msplit
