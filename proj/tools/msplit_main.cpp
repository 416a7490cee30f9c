// Command-line front end: generate the built-in matrix families, classify
// block matrices, run the multisplitting solvers, analyze iteration
// matrices and reproduce the reference convergence tables.
//
// Exit codes: 0 success, 1 reference-table mismatch, 2 usage error,
// 3 numerical or I/O error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <msplit/msplit.hpp>

using json = nlohmann::json;
using namespace msplit;

namespace {

int thread_count(int cli_threads) {
    if (cli_threads > 0) {
        return cli_threads;
    }
    if (const char* env = std::getenv("MSPLIT_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) {
                return n;
            }
        } catch (const std::exception&) {
            throw BadParamsError("MSPLIT_THREADS is not a positive integer");
        }
    }
    return 0; // one worker per splitting
}

BlockMatrix load_matrix(const std::string& path, int m, int k) {
    if (m > 0 && k > 0) {
        return read_matrix_market(path, m, k);
    }
    if (m > 0 || k > 0) {
        throw BadParamsError("--block-m and --block-k must be given together");
    }
    return read_matrix_market(path);
}

json vector_to_json(const Vector& v) {
    bool real = true;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i).imag() != 0.0) {
            real = false;
            break;
        }
    }
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (real) {
            out.push_back(v(i).real());
        } else {
            out.push_back({v(i).real(), v(i).imag()});
        }
    }
    return out;
}

void emit(const json& j, const std::string& file) {
    std::cout << j.dump(2) << "\n";
    if (!file.empty()) {
        std::ofstream out(file);
        if (!out) {
            throw IoError(file + ": cannot open for writing");
        }
        out << j.dump(2) << "\n";
    }
}

const char* method_name(CertificateMethod m) {
    switch (m) {
    case CertificateMethod::ScalarReduction:
        return "scalar-reduction";
    case CertificateMethod::FixedPoint:
        return "fixed-point";
    case CertificateMethod::GridSearch:
        return "grid-search";
    case CertificateMethod::UserSupplied:
        return "user-supplied";
    }
    return "unknown";
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family;
    std::string out_matrix;
    std::string out_rhs;
    std::string out_splitting;
    std::string rhs_kind = "a-times-ones";
    std::string blocks_file;
    int r = 6;
    int p = 4;
    int inner = 3;
    int grid_m = 10;
    int grid_n = 10;
    int variant = 1;
    int m1 = 0;
    int m2 = 0;
    double gamma = 1.0;
    double omega = 1.0;
};

SplittingDescriptor elliptic_descriptor(const EllipticParams& params,
                                        double gamma, double omega) {
    const int n = params.n_dim;
    SplittingDescriptor d;
    d.kind = SplittingDescriptor::Kind::Gaor;
    d.m = n;
    EllipticSplitting split = elliptic_two_splitting(params, gamma, omega);
    for (const GaorPart& part : split.parts) {
        TripleSplit t;
        t.gamma = part.gamma;
        t.omega = part.omega;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) {
                    continue;
                }
                if (part.l.block(i, j).norm() > 0.0) {
                    t.s_pairs.emplace_back(i, j);
                } else if (part.u.block(i, j).norm() > 0.0) {
                    t.t_pairs.emplace_back(i, j);
                } else {
                    t.t_pairs.emplace_back(i, j); // zero block, role is moot
                }
            }
        }
        d.triples.push_back(std::move(t));
    }
    d.weights = split.weights;
    return d;
}

Matrix json_block(const json& j, const std::string& name, int k) {
    if (!j.contains(name)) {
        throw IoError("block file is missing '" + name + "'");
    }
    const json& rows = j.at(name);
    if (!rows.is_array() || static_cast<int>(rows.size()) != k) {
        throw IoError("'" + name + "' must be a " + std::to_string(k) + "x" +
                      std::to_string(k) + " array");
    }
    Matrix out(k, k);
    for (int i = 0; i < k; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != k) {
            throw IoError("'" + name + "' must be square");
        }
        for (int c = 0; c < k; ++c) {
            out(i, c) = row.at(c).get<double>();
        }
    }
    return out;
}

void write_rhs(const GenerateArgs& args, const BlockMatrix& a) {
    if (args.out_rhs.empty()) {
        return;
    }
    BlockVector b(a.block_rows(), a.block_size());
    if (args.rhs_kind == "ones") {
        b = BlockVector::ones(a.block_rows(), a.block_size());
    } else if (args.rhs_kind == "a-times-ones") {
        b = BlockVector::from_dense(
            a.dense() * Vector::Ones(a.dim()), a.block_rows(), a.block_size());
    } else {
        throw BadParamsError("--rhs must be 'ones' or 'a-times-ones'");
    }
    write_vector(args.out_rhs, b);
}

int run_generate(const GenerateArgs& args) {
    if (args.family == "example51") {
        Example51 ex = example51();
        if (!args.out_matrix.empty()) {
            write_matrix_market(args.out_matrix, ex.a);
        }
        if (!args.out_splitting.empty()) {
            write_descriptor(args.out_splitting,
                             make_descriptor(ex.ms));
        }
        write_rhs(args, ex.a);
    } else if (args.family == "example52") {
        if (args.r < 1 || args.r > 6) {
            throw BadParamsError("--r must be in 1..6");
        }
        Example52 ex = example52();
        if (!args.out_matrix.empty()) {
            write_matrix_market(args.out_matrix, ex.sys.m);
        }
        if (!args.out_rhs.empty()) {
            write_vector(args.out_rhs, ex.b);
        }
        if (!args.out_splitting.empty()) {
            std::vector<SplitPair> t_parts(ex.t_splittings.begin(),
                                           ex.t_splittings.begin() + args.r);
            Multisplitting ms = Multisplitting::from_parts(
                ex.sys.m, lift_splitting(ex.sys, t_parts),
                uniform_weights(ex.sys.m.block_rows(), args.r));
            write_descriptor(args.out_splitting,
                             make_descriptor(ms));
        }
    } else if (args.family == "euler") {
        EulerParams params;
        params.p = args.p;
        params.r_inner = args.inner;
        if (args.blocks_file.empty()) {
            Example52 ex = example52();
            params.k = 2;
            params.a_plus = ex.sys.params.a_plus;
            params.a_minus = ex.sys.params.a_minus;
            params.b_plus = ex.sys.params.b_plus;
            params.b_minus = ex.sys.params.b_minus;
        } else {
            std::ifstream in(args.blocks_file);
            if (!in) {
                throw IoError(args.blocks_file + ": cannot open");
            }
            json j = json::parse(in, nullptr, /*allow_exceptions=*/true);
            const json& ap = j.at("a_plus");
            params.k = static_cast<int>(ap.size());
            params.a_plus = json_block(j, "a_plus", params.k);
            params.a_minus = json_block(j, "a_minus", params.k);
            params.b_plus = json_block(j, "b_plus", params.k);
            params.b_minus = json_block(j, "b_minus", params.k);
        }
        BlockMatrix m = euler_matrix(params);
        if (!args.out_matrix.empty()) {
            write_matrix_market(args.out_matrix, m);
        }
        write_rhs(args, m);
    } else if (args.family == "elliptic") {
        EllipticParams params;
        if (args.m1 > 0 || args.m2 > 0) {
            params.m_dim = args.grid_m;
            params.n_dim = args.grid_n;
            params.m1 = args.m1;
            params.m2 = args.m2;
        } else {
            params = elliptic_case(args.grid_m, args.grid_n, args.variant);
        }
        BlockMatrix a = elliptic_matrix(params);
        if (!args.out_matrix.empty()) {
            write_matrix_market(args.out_matrix, a);
        }
        if (!args.out_splitting.empty()) {
            write_descriptor(args.out_splitting,
                             elliptic_descriptor(params, args.gamma, args.omega));
        }
        write_rhs(args, a);
    } else {
        throw BadParamsError("--family must be one of example51, example52, "
                             "euler, elliptic");
    }
    return 0;
}

// ---------------------------------------------------------------- classify

int run_classify(const std::string& matrix_file, int block_m, int block_k,
                 const std::string& certificate_file,
                 const std::string& json_file) {
    BlockMatrix a = load_matrix(matrix_file, block_m, block_k);
    ClassReport report;
    if (certificate_file.empty()) {
        report = classify(a);
    } else {
        std::ifstream in(certificate_file);
        if (!in) {
            throw IoError(certificate_file + ": cannot open");
        }
        std::vector<double> values;
        double v = 0.0;
        while (in >> v) {
            values.push_back(v);
        }
        Eigen::VectorXd u =
            Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
        report = classify(a, u);
    }

    json j;
    j["in_z"] = report.in_z;
    j["in_zhat"] = report.in_zhat;
    j["in_d"] = report.in_d;
    j["m_certificate"] = nullptr;
    if (report.m_certificate) {
        j["m_certificate"] = std::vector<double>(
            report.m_certificate->data(),
            report.m_certificate->data() + report.m_certificate->size());
    }
    j["h_certificate"] = nullptr;
    if (report.h_certificate) {
        j["h_certificate"] = std::vector<double>(
            report.h_certificate->data(),
            report.h_certificate->data() + report.h_certificate->size());
    }
    j["method"] = report.method ? json(method_name(*report.method)) : json();
    j["generalized_h"] = report.is_generalized_h() ? json(true) : json("unknown");
    emit(j, json_file);
    return 0;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    std::string matrix_file;
    std::string splitting_file;
    std::string rhs = "a-times-ones";
    std::string method = "multi";
    std::string stop_kind = "abs";
    std::string x0 = "zero";
    std::string report_file;
    std::string norms_file;
    int block_m = 0;
    int block_k = 0;
    double tau = 1.0;
    std::vector<double> gammas;
    std::vector<double> omegas;
    double eps = 1e-4;
    int max_iters = 10000;
    int threads = 0;
};

StopRule make_stop(const SolveArgs& args) {
    if (args.stop_kind == "abs") {
        return StopRule::abs_diff(args.eps, args.max_iters);
    }
    if (args.stop_kind == "rel") {
        return StopRule::rel_diff(args.eps, args.max_iters);
    }
    if (args.stop_kind == "residual") {
        return StopRule::residual(args.eps, args.max_iters);
    }
    throw BadParamsError("--stop must be abs, rel or residual");
}

BlockVector make_rhs(const std::string& rhs, const BlockMatrix& a) {
    if (rhs == "ones") {
        return BlockVector::ones(a.block_rows(), a.block_size());
    }
    if (rhs == "a-times-ones") {
        return BlockVector::from_dense(a.dense() * Vector::Ones(a.dim()),
                                       a.block_rows(), a.block_size());
    }
    return read_vector(rhs, a.block_rows(), a.block_size());
}

void apply_param_overrides(SplittingDescriptor& d,
                           const std::vector<double>& gammas,
                           const std::vector<double>& omegas) {
    auto spread = [&](const std::vector<double>& vals, bool is_gamma) {
        if (vals.empty()) {
            return;
        }
        if (d.kind != SplittingDescriptor::Kind::Gaor) {
            throw BadParamsError(
                "gamma/omega apply only to gaor splitting descriptors");
        }
        if (vals.size() != 1 && vals.size() != d.triples.size()) {
            throw BadParamsError("expected 1 or " +
                                 std::to_string(d.triples.size()) +
                                 " relaxation parameters");
        }
        for (size_t s = 0; s < d.triples.size(); ++s) {
            const double v = vals.size() == 1 ? vals[0] : vals[s];
            (is_gamma ? d.triples[s].gamma : d.triples[s].omega) = v;
        }
    };
    spread(gammas, true);
    spread(omegas, false);
}

int run_solve(const SolveArgs& args) {
    BlockMatrix a = load_matrix(args.matrix_file, args.block_m, args.block_k);
    SplittingDescriptor d = read_descriptor(args.splitting_file);
    apply_param_overrides(d, args.gammas, args.omegas);
    if (args.method == "bgaor" && d.kind != SplittingDescriptor::Kind::Gaor) {
        throw BadParamsError("--method bgaor needs a gaor splitting descriptor");
    }
    Multisplitting ms = build_multisplitting(d, a);

    BlockVector b = make_rhs(args.rhs, a);
    BlockVector x0(a.block_rows(), a.block_size());
    if (args.x0 == "ones") {
        x0 = BlockVector::ones(a.block_rows(), a.block_size());
    } else if (args.x0 != "zero") {
        throw BadParamsError("--x0 must be zero or ones");
    }

    SolveOptions opts;
    opts.threads = thread_count(args.threads);
    const StopRule stop = make_stop(args);

    SolveReport report;
    if (args.method == "multi" || args.method == "bgaor") {
        report = solve_multisplitting(ms, b, x0, stop, opts);
    } else if (args.method == "extrapolated") {
        report = solve_extrapolated(ms, b, x0, args.tau, stop, opts);
    } else {
        throw BadParamsError("--method must be multi, extrapolated or bgaor");
    }

    json j;
    j["method"] = args.method;
    if (args.method == "extrapolated") {
        j["tau"] = args.tau;
    }
    j["iterations"] = report.iterations;
    j["terminated"] = to_string(report.terminated);
    j["final_metric"] = report.norms.empty() ? json() : json(report.norms.back());
    j["wall_time_seconds"] = report.wall_time_seconds;
    j["threads"] = opts.threads == 0 ? ms.count() : opts.threads;
    j["x"] = vector_to_json(report.final_x.flat());
    emit(j, args.report_file);

    if (!args.norms_file.empty()) {
        std::ofstream out(args.norms_file);
        if (!out) {
            throw IoError(args.norms_file + ": cannot open for writing");
        }
        out << "iter,metric\n";
        out << std::setprecision(17);
        for (size_t i = 0; i < report.norms.size(); ++i) {
            out << (i + 1) << "," << report.norms[i] << "\n";
        }
    }
    return 0;
}

// ----------------------------------------------------------------- analyze

int run_analyze(const std::string& matrix_file, int block_m, int block_k,
                const std::string& splitting_file, double tau,
                const std::string& eigs_file, const std::string& json_file) {
    BlockMatrix a = load_matrix(matrix_file, block_m, block_k);
    SplittingDescriptor d = read_descriptor(splitting_file);
    Multisplitting ms = build_multisplitting(d, a);

    IterationMatrix t = iteration_matrix(ms);
    const double rho = spectral_radius(t.t);
    auto [m_hat, n_hat] = hat_pair(ms);
    const double rho_hat =
        spectral_radius(Eigen::PartialPivLU<Matrix>(m_hat).solve(n_hat));
    const ExtrapolationInterval interval = extrapolation_interval(rho);

    json j;
    j["rho"] = rho;
    j["rho_hat"] = rho_hat;
    j["extrapolation_interval"] = {interval.lo, interval.hi};
    if (tau > 0.0) {
        j["tau"] = tau;
        j["rho_tau"] = spectral_radius(extrapolated_matrix(ms, tau).t);
    }
    emit(j, json_file);

    if (!eigs_file.empty()) {
        std::ofstream out(eigs_file);
        if (!out) {
            throw IoError(eigs_file + ": cannot open for writing");
        }
        const Vector eigs = eigenvalues(t.t);
        out << "re,im,abs\n";
        out << std::setprecision(17);
        for (Eigen::Index i = 0; i < eigs.size(); ++i) {
            out << eigs(i).real() << "," << eigs(i).imag() << ","
                << std::abs(eigs(i)) << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchCell {
    std::string id;
    double reference;
    double computed;
    double tol;

    bool pass() const { return std::abs(reference - computed) <= tol; }
};

Eigen::VectorXd expand_outer(const std::vector<double>& per_outer, int inner) {
    Eigen::VectorXd e(static_cast<int>(per_outer.size()) * inner);
    int at = 0;
    for (double v : per_outer) {
        for (int i = 0; i < inner; ++i) {
            e(at++) = v;
        }
    }
    return e;
}

std::vector<std::vector<BlockWeights>> table52_weights() {
    auto w = [](std::initializer_list<std::vector<double>> outer) {
        std::vector<BlockWeights> ws;
        for (const auto& o : outer) {
            ws.push_back({expand_outer(o, 3)});
        }
        return ws;
    };
    return {
        w({{1, 1, 1, 1}}),
        w({{1, 0, 1, 0}, {0, 1, 0, 1}}),
        w({{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}),
        w({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
        w({{1, 0, 0, 0},
           {0, 1, 0, 0},
           {0, 0, 1, 0},
           {0, 0, 0, 0.5},
           {0, 0, 0, 0.5}}),
        w({{1, 0, 0, 0},
           {0, 1, 0, 0},
           {0, 0, 0.5, 0},
           {0, 0, 0, 0.5},
           {0, 0, 0, 0.5},
           {0, 0, 0.5, 0}}),
    };
}

int run_bench(const std::string& table, double tolerance,
              const std::string& out_file, int threads) {
    Example52 ex = example52();
    const int m = ex.sys.m.block_rows();
    SolveOptions opts;
    opts.threads = thread_count(threads);

    std::vector<BenchCell> cells;
    const StopRule stop = StopRule::abs_diff(1e-4, 10000);
    const BlockVector x0 = BlockVector::ones(m, 2);

    if (table == "t51" || table == "t52") {
        const std::vector<double> rho_ref =
            table == "t51"
                ? std::vector<double>{0.1801, 0.2901, 0.2844, 0.2959, 0.2894, 0.2796}
                : std::vector<double>{0.1801, 0.1801, 0.1801, 0.1801, 0.2719, 0.2719};
        const std::vector<double> iter_ref =
            table == "t51" ? std::vector<double>{11, 13, 13, 13, 13, 12}
                           : std::vector<double>{11, 12, 12, 12, 12, 12};
        const auto custom_weights = table52_weights();
        for (int r = 1; r <= 6; ++r) {
            std::vector<SplitPair> t_parts(ex.t_splittings.begin(),
                                           ex.t_splittings.begin() + r);
            const auto ws = table == "t51" ? uniform_weights(m, r)
                                           : custom_weights[r - 1];
            Multisplitting ms = Multisplitting::from_parts(
                ex.sys.m, lift_splitting(ex.sys, t_parts), ws);
            const double rho = spectral_radius(iteration_matrix(ms).t);
            const SolveReport report =
                solve_multisplitting(ms, ex.b, x0, stop, opts);
            std::ostringstream tag;
            tag << "rho(r=" << r << ")";
            cells.push_back({tag.str(), rho_ref[r - 1], rho, tolerance});
            std::ostringstream tag2;
            tag2 << "iters(r=" << r << ")";
            cells.push_back({tag2.str(), iter_ref[r - 1],
                             static_cast<double>(report.iterations), 1.0});
        }
    } else if (table == "t53") {
        const std::vector<std::pair<double, double>> pairs = {
            {0.1, 0.2},  {0.3, 0.4},   {0.5, 0.6},  {0.7, 0.8},
            {0.8, 0.9},  {0.9, 1.0},   {0.8, 0.8},  {0.9, 0.9},
            {0.9, 0.95}, {0.95, 0.99}, {0.99, 0.99}, {1.0, 1.0}};
        const std::vector<double> rho_ref = {0.8592, 0.7184, 0.5776, 0.4367,
                                             0.3663, 0.2959, 0.4367, 0.3663,
                                             0.3561, 0.3030, 0.3005, 0.2959};
        const BlockMatrix zero6(3, 2);
        for (size_t c = 0; c < pairs.size(); ++c) {
            const auto [gamma, omega] = pairs[c];
            std::vector<GaorPart> parts;
            for (int s = 0; s < 4; ++s) {
                parts.push_back(lift_triangular(
                    ex.sys, {ex.t_splittings[s].m, zero6, ex.t_splittings[s].n,
                             gamma, omega}));
            }
            Multisplitting ms =
                gaor_from_parts(ex.sys.m, parts, uniform_weights(m, 4));
            const double rho = spectral_radius(iteration_matrix(ms).t);
            std::ostringstream tag;
            tag << "rho(" << gamma << "," << omega << ")";
            cells.push_back({tag.str(), rho_ref[c], rho, tolerance});
        }
    } else {
        throw BadParamsError("--table must be t51, t52 or t53");
    }

    std::ostringstream csv;
    csv << "cell,reference,computed,abs_diff,pass\n";
    csv << std::setprecision(17);
    bool all_pass = true;
    for (const BenchCell& cell : cells) {
        const bool ok = cell.pass();
        all_pass = all_pass && ok;
        csv << cell.id << "," << cell.reference << "," << cell.computed << ","
            << std::abs(cell.reference - cell.computed) << ","
            << (ok ? "true" : "false") << "\n";
    }
    std::cout << csv.str();
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) {
            throw IoError(out_file + ": cannot open for writing");
        }
        out << csv.str();
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block multisplitting solver toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "emit a built-in matrix family");
    gen->add_option("--family", gen_args.family,
                    "example51, example52, euler or elliptic")
        ->required();
    gen->add_option("--out-matrix", gen_args.out_matrix, "matrix file to write");
    gen->add_option("--out-rhs", gen_args.out_rhs, "right-hand-side file");
    gen->add_option("--out-splitting", gen_args.out_splitting,
                    "splitting descriptor file");
    gen->add_option("--rhs", gen_args.rhs_kind, "ones | a-times-ones");
    gen->add_option("--r", gen_args.r, "number of splittings (example52)");
    gen->add_option("--p", gen_args.p, "outer dimension (euler)");
    gen->add_option("--inner", gen_args.inner, "inner dimension (euler)");
    gen->add_option("--blocks", gen_args.blocks_file,
                    "JSON file with a_plus/a_minus/b_plus/b_minus (euler)");
    gen->add_option("--grid-m", gen_args.grid_m, "block size (elliptic)");
    gen->add_option("--grid-n", gen_args.grid_n, "block count (elliptic)");
    gen->add_option("--variant", gen_args.variant,
                    "overlap variant 1 or 2 (elliptic)");
    gen->add_option("--m1", gen_args.m1, "explicit upper split index (elliptic)");
    gen->add_option("--m2", gen_args.m2, "explicit lower split index (elliptic)");
    gen->add_option("--gamma", gen_args.gamma, "relaxation gamma (elliptic)");
    gen->add_option("--omega", gen_args.omega, "relaxation omega (elliptic)");

    std::string cls_matrix, cls_cert, cls_json;
    int cls_m = 0, cls_k = 0;
    auto* cls = app.add_subcommand("classify", "matrix class membership report");
    cls->add_option("--matrix", cls_matrix, "matrix file")->required();
    cls->add_option("--block-m", cls_m, "block rows (overrides %%block)");
    cls->add_option("--block-k", cls_k, "block size (overrides %%block)");
    cls->add_option("--certificate", cls_cert,
                    "file with a candidate certificate vector");
    cls->add_option("--json", cls_json, "also write the report here");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run a multisplitting solve");
    solve->add_option("--matrix", solve_args.matrix_file, "matrix file")
        ->required();
    solve->add_option("--splitting", solve_args.splitting_file,
                      "splitting descriptor")
        ->required();
    solve->add_option("--block-m", solve_args.block_m, "block rows");
    solve->add_option("--block-k", solve_args.block_k, "block size");
    solve->add_option("--rhs", solve_args.rhs,
                      "ones | a-times-ones | <vector file>");
    solve->add_option("--method", solve_args.method,
                      "multi | extrapolated | bgaor");
    solve->add_option("--tau", solve_args.tau, "extrapolation parameter");
    solve->add_option("--gamma", solve_args.gammas,
                      "relaxation gamma override (1 or r values)");
    solve->add_option("--omega", solve_args.omegas,
                      "relaxation omega override (1 or r values)");
    solve->add_option("--stop", solve_args.stop_kind, "abs | rel | residual");
    solve->add_option("--eps", solve_args.eps, "stopping tolerance");
    solve->add_option("--max-iters", solve_args.max_iters, "iteration cap");
    solve->add_option("--x0", solve_args.x0, "zero | ones");
    solve->add_option("--threads", solve_args.threads,
                      "worker threads (default: one per splitting)");
    solve->add_option("--report", solve_args.report_file, "report JSON file");
    solve->add_option("--norms", solve_args.norms_file, "per-iteration CSV");

    std::string ana_matrix, ana_split, ana_eigs, ana_json;
    int ana_m = 0, ana_k = 0;
    double ana_tau = 0.0;
    auto* ana = app.add_subcommand("analyze", "iteration-matrix analysis");
    ana->add_option("--matrix", ana_matrix, "matrix file")->required();
    ana->add_option("--splitting", ana_split, "splitting descriptor")->required();
    ana->add_option("--block-m", ana_m, "block rows");
    ana->add_option("--block-k", ana_k, "block size");
    ana->add_option("--tau", ana_tau, "also report the damped radius");
    ana->add_option("--eigs", ana_eigs, "write the eigenvalue list CSV here");
    ana->add_option("--json", ana_json, "also write the report here");

    std::string bench_table, bench_out;
    double bench_tol = 1e-3;
    int bench_threads = 0;
    auto* bench = app.add_subcommand(
        "bench", "recompute a reference convergence table and compare");
    bench->add_option("--table", bench_table, "t51 | t52 | t53")->required();
    bench->add_option("--tolerance", bench_tol, "radius tolerance");
    bench->add_option("--out", bench_out, "CSV output file");
    bench->add_option("--threads", bench_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            return run_generate(gen_args);
        }
        if (*cls) {
            return run_classify(cls_matrix, cls_m, cls_k, cls_cert, cls_json);
        }
        if (*solve) {
            return run_solve(solve_args);
        }
        if (*ana) {
            return run_analyze(ana_matrix, ana_m, ana_k, ana_split, ana_tau,
                               ana_eigs, ana_json);
        }
        if (*bench) {
            return run_bench(bench_table, bench_tol, bench_out, bench_threads);
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
