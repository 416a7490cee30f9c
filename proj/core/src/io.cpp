#include "msplit/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace msplit {

namespace {

bool is_real_valued(const Matrix& dense) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        for (Eigen::Index i = 0; i < dense.rows(); ++i) {
            if (dense(i, j).imag() != 0.0) {
                return false;
            }
        }
    }
    return true;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct MmHeader {
    std::string format;   // coordinate | array
    std::string field;    // real | integer | complex
    std::string symmetry; // general | symmetric | hermitian | skew-symmetric
    int rows = 0;
    int cols = 0;
    long nnz = 0; // coordinate only
    int block_m = 0;
    int block_k = 0;
};

std::string lower(std::string s) {
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

MmHeader read_mm_header(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path + ": empty file");
    }
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
        throw IoError(path + ": not a Matrix Market matrix file");
    }
    MmHeader h;
    h.format = lower(format);
    h.field = lower(field);
    h.symmetry = lower(symmetry);
    if (h.format != "coordinate" && h.format != "array") {
        throw IoError(path + ": unsupported format '" + format + "'");
    }
    if (h.field != "real" && h.field != "integer" && h.field != "complex") {
        throw IoError(path + ": unsupported field '" + field + "'");
    }
    if (h.symmetry != "general" && h.symmetry != "symmetric" &&
        h.symmetry != "hermitian" && h.symmetry != "skew-symmetric") {
        throw IoError(path + ": unsupported symmetry '" + symmetry + "'");
    }

    while (std::getline(in, line)) {
        if (line.empty() ||
            line.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
        }
        if (line[0] == '%') {
            std::istringstream comment(line);
            std::string key;
            comment >> key;
            if (key == "%%block") {
                if (!(comment >> h.block_m >> h.block_k)) {
                    throw IoError(path + ": malformed %%block comment");
                }
            }
            continue;
        }
        std::istringstream size_line(line);
        if (h.format == "coordinate") {
            if (!(size_line >> h.rows >> h.cols >> h.nnz)) {
                throw IoError(path + ": malformed size line");
            }
        } else {
            if (!(size_line >> h.rows >> h.cols)) {
                throw IoError(path + ": malformed size line");
            }
        }
        return h;
    }
    throw IoError(path + ": missing size line");
}

Complex read_value(std::istream& in, const MmHeader& h, const std::string& path) {
    double re = 0.0, im = 0.0;
    if (!(in >> re)) {
        throw IoError(path + ": truncated value list");
    }
    if (h.field == "complex") {
        if (!(in >> im)) {
            throw IoError(path + ": truncated complex value");
        }
    }
    return {re, im};
}

Matrix read_mm_dense(std::istream& in, const MmHeader& h,
                     const std::string& path) {
    Matrix dense = Matrix::Zero(h.rows, h.cols);
    if (h.format == "coordinate") {
        for (long e = 0; e < h.nnz; ++e) {
            int i = 0, j = 0;
            if (!(in >> i >> j)) {
                throw IoError(path + ": truncated entry list");
            }
            if (i < 1 || i > h.rows || j < 1 || j > h.cols) {
                throw IoError(path + ": entry index out of range");
            }
            const Complex v = read_value(in, h, path);
            dense(i - 1, j - 1) = v;
            if (i != j) {
                if (h.symmetry == "symmetric") {
                    dense(j - 1, i - 1) = v;
                } else if (h.symmetry == "hermitian") {
                    dense(j - 1, i - 1) = std::conj(v);
                } else if (h.symmetry == "skew-symmetric") {
                    dense(j - 1, i - 1) = -v;
                }
            }
        }
    } else {
        const bool packed = h.symmetry != "general";
        for (int j = 0; j < h.cols; ++j) {
            for (int i = packed ? j : 0; i < h.rows; ++i) {
                const Complex v = read_value(in, h, path);
                dense(i, j) = v;
                if (i != j) {
                    if (h.symmetry == "symmetric") {
                        dense(j, i) = v;
                    } else if (h.symmetry == "hermitian") {
                        dense(j, i) = std::conj(v);
                    } else if (h.symmetry == "skew-symmetric") {
                        dense(j, i) = -v;
                    }
                }
            }
        }
    }
    return dense;
}

BlockMatrix finish_matrix(const Matrix& dense, const MmHeader& h, int m, int k,
                          const std::string& path) {
    if (h.rows != h.cols) {
        throw IoError(path + ": matrix is not square");
    }
    if (m == 0) {
        m = h.block_m;
        k = h.block_k;
    }
    if (m == 0) {
        throw IoError(path + ": no %%block comment and no block structure "
                             "given by the caller");
    }
    if (m * k != h.rows) {
        throw IoError(path + ": block structure " + std::to_string(m) + "x" +
                      std::to_string(k) + " does not match dimension " +
                      std::to_string(h.rows));
    }
    return BlockMatrix::from_dense(dense, m, k);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError(path + ": cannot open for writing");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path + ": cannot open for reading");
    }
    return in;
}

} // namespace

void write_matrix_market(const std::string& path, const BlockMatrix& a) {
    std::ofstream out = open_out(path);
    const Matrix dense = a.dense();
    const bool real = is_real_valued(dense);

    long nnz = 0;
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        for (Eigen::Index i = 0; i < dense.rows(); ++i) {
            if (dense(i, j) != Complex(0.0, 0.0)) {
                ++nnz;
            }
        }
    }

    out << "%%MatrixMarket matrix coordinate " << (real ? "real" : "complex")
        << " general\n";
    out << "%%block " << a.block_rows() << " " << a.block_size() << "\n";
    out << dense.rows() << " " << dense.cols() << " " << nnz << "\n";
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        for (Eigen::Index i = 0; i < dense.rows(); ++i) {
            const Complex v = dense(i, j);
            if (v == Complex(0.0, 0.0)) {
                continue;
            }
            out << (i + 1) << " " << (j + 1) << " " << fmt(v.real());
            if (!real) {
                out << " " << fmt(v.imag());
            }
            out << "\n";
        }
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

BlockMatrix read_matrix_market(const std::string& path) {
    std::ifstream in = open_in(path);
    MmHeader h = read_mm_header(in, path);
    return finish_matrix(read_mm_dense(in, h, path), h, 0, 0, path);
}

BlockMatrix read_matrix_market(const std::string& path, int m, int k) {
    std::ifstream in = open_in(path);
    MmHeader h = read_mm_header(in, path);
    return finish_matrix(read_mm_dense(in, h, path), h, m, k, path);
}

void write_vector(const std::string& path, const BlockVector& v) {
    std::ofstream out = open_out(path);
    bool real = true;
    for (int i = 0; i < v.dim(); ++i) {
        if (v.flat()(i).imag() != 0.0) {
            real = false;
            break;
        }
    }
    out << "%%MatrixMarket matrix array " << (real ? "real" : "complex")
        << " general\n";
    out << "%%block " << v.block_rows() << " " << v.block_size() << "\n";
    out << v.dim() << " 1\n";
    for (int i = 0; i < v.dim(); ++i) {
        out << fmt(v.flat()(i).real());
        if (!real) {
            out << " " << fmt(v.flat()(i).imag());
        }
        out << "\n";
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

namespace {

BlockVector read_vector_impl(const std::string& path, int m, int k) {
    std::ifstream in = open_in(path);
    MmHeader h = read_mm_header(in, path);
    if (h.cols != 1 || h.format != "array") {
        throw IoError(path + ": expected an array file with one column");
    }
    Vector v(h.rows);
    for (int i = 0; i < h.rows; ++i) {
        v(i) = read_value(in, h, path);
    }
    if (m == 0) {
        m = h.block_m;
        k = h.block_k;
    }
    if (m == 0) {
        throw IoError(path + ": no %%block comment and no block structure "
                             "given by the caller");
    }
    if (m * k != h.rows) {
        throw IoError(path + ": block structure does not match length");
    }
    return BlockVector::from_dense(std::move(v), m, k);
}

} // namespace

BlockVector read_vector(const std::string& path) {
    return read_vector_impl(path, 0, 0);
}

BlockVector read_vector(const std::string& path, int m, int k) {
    return read_vector_impl(path, m, k);
}

namespace {

std::vector<std::string> tokenize(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            tokens.push_back(tok);
        }
    }
    return tokens;
}

class TokenCursor {
public:
    TokenCursor(std::vector<std::string> tokens, std::string path)
        : tokens_(std::move(tokens)), path_(std::move(path)) {}

    bool done() const { return pos_ >= tokens_.size(); }

    const std::string& peek() const {
        if (done()) {
            throw IoError(path_ + ": unexpected end of file");
        }
        return tokens_[pos_];
    }

    std::string next() {
        std::string t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string& kw) {
        std::string t = next();
        if (t != kw) {
            throw IoError(path_ + ": expected '" + kw + "', got '" + t + "'");
        }
    }

    int next_int() {
        std::string t = next();
        try {
            size_t used = 0;
            int v = std::stoi(t, &used);
            if (used != t.size()) {
                throw std::invalid_argument(t);
            }
            return v;
        } catch (const std::exception&) {
            throw IoError(path_ + ": expected an integer, got '" + t + "'");
        }
    }

    double next_double() {
        std::string t = next();
        try {
            size_t used = 0;
            double v = std::stod(t, &used);
            if (used != t.size()) {
                throw std::invalid_argument(t);
            }
            return v;
        } catch (const std::exception&) {
            throw IoError(path_ + ": expected a number, got '" + t + "'");
        }
    }

    bool peek_is_int() const {
        if (done()) {
            return false;
        }
        const std::string& t = peek();
        size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) {
            return false;
        }
        for (size_t i = start; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    }

    const std::string& path() const { return path_; }

private:
    std::vector<std::string> tokens_;
    std::string path_;
    size_t pos_ = 0;
};

/// Reads a 1-based pair list terminated by the next keyword; `none` is the
/// empty list, `rest` yields the marker flag instead.
std::vector<std::pair<int, int>> read_pairs(TokenCursor& cur, int m,
                                            bool allow_rest, bool& is_rest) {
    is_rest = false;
    std::vector<std::pair<int, int>> pairs;
    if (!cur.done() && cur.peek() == "none") {
        cur.next();
        return pairs;
    }
    if (allow_rest && !cur.done() && cur.peek() == "rest") {
        cur.next();
        is_rest = true;
        return pairs;
    }
    while (cur.peek_is_int()) {
        int i = cur.next_int();
        if (!cur.peek_is_int()) {
            throw IoError(cur.path() + ": dangling pair index " +
                          std::to_string(i));
        }
        int j = cur.next_int();
        if (i < 1 || i > m || j < 1 || j > m || i == j) {
            throw IoError(cur.path() + ": bad pair (" + std::to_string(i) +
                          "," + std::to_string(j) + ") for m=" +
                          std::to_string(m));
        }
        pairs.emplace_back(i - 1, j - 1);
    }
    return pairs;
}

void write_pairs(std::ostream& out, const char* key,
                 const std::vector<std::pair<int, int>>& pairs) {
    out << key;
    if (pairs.empty()) {
        out << " none";
    } else {
        for (const auto& [i, j] : pairs) {
            out << "  " << (i + 1) << " " << (j + 1);
        }
    }
    out << "\n";
}

} // namespace

SplittingDescriptor read_descriptor(const std::string& path) {
    std::ifstream in = open_in(path);
    TokenCursor cur(tokenize(in), path);

    SplittingDescriptor d;
    cur.expect("splitting");
    std::string kind = cur.next();
    if (kind == "index") {
        d.kind = SplittingDescriptor::Kind::Index;
    } else if (kind == "gaor") {
        d.kind = SplittingDescriptor::Kind::Gaor;
    } else {
        throw IoError(path + ": unknown splitting kind '" + kind + "'");
    }
    cur.expect("m");
    d.m = cur.next_int();
    if (d.m < 1) {
        throw IoError(path + ": m must be positive");
    }
    cur.expect("r");
    const int r = cur.next_int();
    if (r < 1) {
        throw IoError(path + ": r must be positive");
    }

    for (int s = 0; s < r; ++s) {
        cur.expect("part");
        IndexSetSplit index_set;
        TripleSplit triple;
        BlockWeights w;
        bool have_weights = false;
        bool rest_r = false, rest_s = false, rest_t = false;
        bool have_r = false, have_s = false, have_t = false;
        while (true) {
            std::string key = cur.next();
            if (key == "end") {
                break;
            }
            bool dummy = false;
            if (key == "pairs" && d.kind == SplittingDescriptor::Kind::Index) {
                index_set.pairs = read_pairs(cur, d.m, false, dummy);
            } else if (key == "rpairs" &&
                       d.kind == SplittingDescriptor::Kind::Gaor) {
                triple.r_pairs = read_pairs(cur, d.m, true, rest_r);
                have_r = true;
            } else if (key == "spairs" &&
                       d.kind == SplittingDescriptor::Kind::Gaor) {
                triple.s_pairs = read_pairs(cur, d.m, true, rest_s);
                have_s = true;
            } else if (key == "tpairs" &&
                       d.kind == SplittingDescriptor::Kind::Gaor) {
                triple.t_pairs = read_pairs(cur, d.m, true, rest_t);
                have_t = true;
            } else if (key == "gamma" &&
                       d.kind == SplittingDescriptor::Kind::Gaor) {
                triple.gamma = cur.next_double();
            } else if (key == "omega" &&
                       d.kind == SplittingDescriptor::Kind::Gaor) {
                triple.omega = cur.next_double();
            } else if (key == "weights") {
                w.e = Eigen::VectorXd(d.m);
                for (int i = 0; i < d.m; ++i) {
                    w.e(i) = cur.next_double();
                }
                have_weights = true;
            } else {
                throw IoError(path + ": unexpected token '" + key +
                              "' in part " + std::to_string(s + 1));
            }
        }
        if (!have_weights) {
            throw IoError(path + ": part " + std::to_string(s + 1) +
                          " has no weights");
        }
        if (d.kind == SplittingDescriptor::Kind::Gaor) {
            if (!have_r || !have_s || !have_t) {
                throw IoError(path + ": part " + std::to_string(s + 1) +
                              " needs rpairs, spairs and tpairs");
            }
            if (rest_r + rest_s + rest_t > 1) {
                throw IoError(path + ": at most one of rpairs/spairs/tpairs "
                                     "may be 'rest'");
            }
            if (rest_r || rest_s || rest_t) {
                std::vector<char> taken(static_cast<size_t>(d.m) * d.m, 0);
                for (const auto& [i, j] : triple.s_pairs) taken[i * d.m + j] = 1;
                for (const auto& [i, j] : triple.t_pairs) taken[i * d.m + j] = 1;
                for (const auto& [i, j] : triple.r_pairs) taken[i * d.m + j] = 1;
                std::vector<std::pair<int, int>> rest;
                for (int i = 0; i < d.m; ++i) {
                    for (int j = 0; j < d.m; ++j) {
                        if (i != j && !taken[i * d.m + j]) {
                            rest.emplace_back(i, j);
                        }
                    }
                }
                if (rest_r) triple.r_pairs = std::move(rest);
                else if (rest_s) triple.s_pairs = std::move(rest);
                else triple.t_pairs = std::move(rest);
            }
            d.triples.push_back(std::move(triple));
        } else {
            d.index_sets.push_back(std::move(index_set));
        }
        d.weights.push_back(std::move(w));
    }
    if (!cur.done()) {
        throw IoError(path + ": trailing content after the last part");
    }
    return d;
}

void write_descriptor(const std::string& path, const SplittingDescriptor& d) {
    std::ofstream out = open_out(path);
    const bool gaor = d.kind == SplittingDescriptor::Kind::Gaor;
    out << "splitting " << (gaor ? "gaor" : "index") << "\n";
    out << "m " << d.m << "\n";
    out << "r " << d.count() << "\n";
    for (int s = 0; s < d.count(); ++s) {
        out << "part\n";
        if (gaor) {
            const TripleSplit& t = d.triples[s];
            out << "gamma " << fmt(t.gamma) << "\n";
            out << "omega " << fmt(t.omega) << "\n";
            write_pairs(out, "rpairs", t.r_pairs);
            write_pairs(out, "spairs", t.s_pairs);
            write_pairs(out, "tpairs", t.t_pairs);
        } else {
            write_pairs(out, "pairs", d.index_sets[s].pairs);
        }
        out << "weights";
        for (int i = 0; i < d.m; ++i) {
            out << " " << fmt(d.weights[s].e(i));
        }
        out << "\nend\n";
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

Multisplitting build_multisplitting(const SplittingDescriptor& d,
                                    const BlockMatrix& a) {
    if (a.block_rows() != d.m) {
        throw DimensionError("descriptor is for m=" + std::to_string(d.m) +
                             " but the matrix has " +
                             std::to_string(a.block_rows()) + " block rows");
    }
    if (d.kind == SplittingDescriptor::Kind::Index) {
        return multisplit_from_index_sets(a, d.index_sets, d.weights);
    }
    return gaor_multisplitting(a, d.triples, d.weights);
}

SplittingDescriptor make_descriptor(const Multisplitting& ms) {
    SplittingDescriptor d;
    d.kind = SplittingDescriptor::Kind::Index;
    d.m = ms.block_rows();
    for (int s = 0; s < ms.count(); ++s) {
        IndexSetSplit q;
        for (int i = 0; i < d.m; ++i) {
            for (int j = 0; j < d.m; ++j) {
                if (i != j && ms.part(s).m.block(i, j).norm() > 0.0) {
                    q.pairs.emplace_back(i, j);
                }
            }
        }
        d.index_sets.push_back(std::move(q));
        d.weights.push_back(ms.weights(s));
    }
    return d;
}

} // namespace msplit
