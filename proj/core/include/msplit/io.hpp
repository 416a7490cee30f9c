#pragma once

#include <string>
#include <vector>

#include "msplit/splitting.hpp"

namespace msplit {

/// Matrix Market coordinate file with a `%%block m k` comment carrying the
/// block structure. Real-valued matrices are written with the `real`
/// field, anything else as `complex`. Values use 17 significant digits so
/// a write/read round trip is bitwise exact.
void write_matrix_market(const std::string& path, const BlockMatrix& a);

/// Reads coordinate or array files, real, integer or complex fields,
/// general, symmetric, skew-symmetric or hermitian symmetry. The block
/// structure comes from the `%%block` comment.
BlockMatrix read_matrix_market(const std::string& path);

/// Same, with the block structure supplied by the caller (overrides any
/// `%%block` comment; dimensions must agree).
BlockMatrix read_matrix_market(const std::string& path, int m, int k);

/// Vectors travel as Matrix Market array files of shape n-by-1 with the
/// same `%%block` comment.
void write_vector(const std::string& path, const BlockVector& v);
BlockVector read_vector(const std::string& path);
BlockVector read_vector(const std::string& path, int m, int k);

/// Plain-text splitting descriptor.
///
///   # comments allowed anywhere
///   splitting index          (or: splitting gaor)
///   m 3
///   r 3
///   part
///     pairs 1 2  1 3  2 3    (1-based (i,j) pairs; `none` for empty)
///     weights 0.5 0.1666666666666666 0.3333333333333334
///   end
///   ...
///
/// The gaor kind replaces `pairs` with `rpairs`, `spairs`, `tpairs`
/// (exactly one of which may be `rest`, meaning all pairs not named by
/// the other two) and adds `gamma <g>` and `omega <w>`.
struct SplittingDescriptor {
    enum class Kind { Index, Gaor };

    Kind kind = Kind::Index;
    int m = 0;
    std::vector<IndexSetSplit> index_sets; ///< kind == Index
    std::vector<TripleSplit> triples;      ///< kind == Gaor
    std::vector<BlockWeights> weights;

    int count() const {
        return static_cast<int>(kind == Kind::Index ? index_sets.size()
                                                    : triples.size());
    }
};

SplittingDescriptor read_descriptor(const std::string& path);
void write_descriptor(const std::string& path, const SplittingDescriptor& d);

/// Build the multisplitting a descriptor describes.
Multisplitting build_multisplitting(const SplittingDescriptor& d,
                                    const BlockMatrix& a);

/// Reconstruct an index-kind descriptor from a multisplitting whose kept
/// parts consist of blocks of A (the index-set construction): each pair
/// set collects the nonzero off-diagonal blocks of M_s.
SplittingDescriptor make_descriptor(const Multisplitting& ms);

} // namespace msplit
