#include "msplit/solver.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

namespace msplit {

namespace {

/// Fixed pool of workers executing an indexed job set per call. Job
/// assignment order is unspecified; callers keep determinism by writing
/// job outputs to per-index buffers and reducing in index order.
class WorkerPool {
public:
    explicit WorkerPool(int threads) {
        threads_.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            threads_.emplace_back([this] { worker(); });
        }
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool() {
        {
            std::unique_lock lock(mu_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& th : threads_) {
            th.join();
        }
    }

    void run(int njobs, const std::function<void(int)>& job) {
        std::unique_lock lock(mu_);
        job_ = &job;
        total_ = njobs;
        next_ = 0;
        done_ = 0;
        error_ = nullptr;
        ++generation_;
        cv_.notify_all();
        done_cv_.wait(lock, [&] { return done_ == total_; });
        job_ = nullptr;
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

private:
    void worker() {
        std::uint64_t seen = 0;
        std::unique_lock lock(mu_);
        for (;;) {
            cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
            while (next_ < total_) {
                const int idx = next_++;
                lock.unlock();
                std::exception_ptr err;
                try {
                    (*job_)(idx);
                } catch (...) {
                    err = std::current_exception();
                }
                lock.lock();
                if (err && !error_) {
                    error_ = err;
                }
                if (++done_ == total_) {
                    done_cv_.notify_all();
                }
            }
        }
    }

    std::mutex mu_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    std::vector<std::thread> threads_;
    const std::function<void(int)>* job_ = nullptr;
    std::uint64_t generation_ = 0;
    int total_ = 0;
    int next_ = 0;
    int done_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

bool part_needed(const BlockWeights& w) {
    return (w.e.array() != 0.0).any();
}

/// y_s = M_s^{-1} (N_s x + b) for every splitting with a nonzero weight.
void compute_locals(const Multisplitting& ms, const Vector& x, const Vector& b,
                    std::vector<Vector>& ys, WorkerPool* pool) {
    const int r = ms.count();
    auto job = [&](int s) {
        if (part_needed(ms.weights(s))) {
            ys[s] = ms.factorization(s).solve(ms.n_dense(s) * x + b);
        }
    };
    if (pool != nullptr) {
        pool->run(r, job);
    } else {
        for (int s = 0; s < r; ++s) {
            job(s);
        }
    }
}

/// Weighted combination sum_s E_s y_s in ascending s order; block rows
/// with zero weight are skipped.
Vector reduce_locals(const Multisplitting& ms, const std::vector<Vector>& ys) {
    const int m = ms.block_rows();
    const int k = ms.block_size();
    Vector out = Vector::Zero(ms.dim());
    for (int s = 0; s < ms.count(); ++s) {
        const Eigen::VectorXd& e = ms.weights(s).e;
        for (int i = 0; i < m; ++i) {
            if (e(i) != 0.0) {
                out.segment(i * k, k) += e(i) * ys[s].segment(i * k, k);
            }
        }
    }
    return out;
}

void check_solve_inputs(const Multisplitting& ms, const BlockVector& b,
                        const BlockVector& x0) {
    if (b.block_rows() != ms.block_rows() || b.block_size() != ms.block_size()) {
        throw DimensionError("right-hand side does not match the matrix shape");
    }
    if (!x0.same_shape(b)) {
        throw DimensionError("initial guess does not match the matrix shape");
    }
}

void check_stop(const StopRule& stop) {
    if (!(stop.epsilon > 0.0)) {
        throw BadParamsError("stop rule needs epsilon > 0");
    }
    if (stop.max_iters < 1) {
        throw BadParamsError("stop rule needs max_iters >= 1");
    }
}

double stopping_metric(const StopRule& stop, const Multisplitting& ms,
                       const Vector& b, const Vector& x_prev,
                       const Vector& x_next) {
    switch (stop.kind) {
    case StopKind::AbsDiff:
        return (x_next - x_prev).norm();
    case StopKind::RelDiff: {
        const double num = (x_next - x_prev).norm();
        const double den = x_next.norm();
        if (den > 0.0) {
            return num / den;
        }
        return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    case StopKind::Residual:
        return (ms.a_dense() * x_next - b).norm();
    }
    return 0.0;
}

bool metric_converged(const StopRule& stop, double metric) {
    // the relative criterion is <=, the others strict <
    return stop.kind == StopKind::RelDiff ? metric <= stop.epsilon
                                          : metric < stop.epsilon;
}

SolveReport run_iteration(const Multisplitting& ms, const BlockVector& b,
                          const BlockVector& x0, double tau,
                          const StopRule& stop, const SolveOptions& opts) {
    check_stop(stop);
    check_solve_inputs(ms, b, x0);

    const int r = ms.count();
    const int workers = opts.threads == 0 ? r : std::min(opts.threads, r);
    std::unique_ptr<WorkerPool> pool;
    if (workers > 1) {
        pool = std::make_unique<WorkerPool>(workers);
    }

    const auto t_start = std::chrono::steady_clock::now();
    SolveReport report;
    Vector x = x0.flat();
    std::vector<Vector> ys(r);
    double initial_metric = -1.0;
    report.terminated = Termination::MaxIters;

    for (int iter = 1; iter <= stop.max_iters; ++iter) {
        compute_locals(ms, x, b.flat(), ys, pool.get());
        Vector x_next = reduce_locals(ms, ys);
        if (tau != 1.0) {
            x_next = tau * x_next + (1.0 - tau) * x;
        }
        const double metric = stopping_metric(stop, ms, b.flat(), x, x_next);
        report.norms.push_back(metric);
        if (opts.record_iterates) {
            report.iterates.push_back(x_next);
        }
        x = std::move(x_next);
        if (metric_converged(stop, metric)) {
            report.terminated = Termination::Converged;
            break;
        }
        if (initial_metric < 0.0) {
            initial_metric = metric;
        } else if (metric > 1e12 * initial_metric) {
            report.terminated = Termination::Diverged;
            break;
        }
    }

    report.iterations = static_cast<int>(report.norms.size());
    report.final_x =
        BlockVector::from_dense(std::move(x), ms.block_rows(), ms.block_size());
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return report;
}

} // namespace

StopRule::StopRule(StopKind kind_, double epsilon_, int max_iters_)
    : kind(kind_), epsilon(epsilon_), max_iters(max_iters_) {
    check_stop(*this);
}

StopRule StopRule::abs_diff(double epsilon, int max_iters) {
    return StopRule(StopKind::AbsDiff, epsilon, max_iters);
}

StopRule StopRule::rel_diff(double epsilon, int max_iters) {
    return StopRule(StopKind::RelDiff, epsilon, max_iters);
}

StopRule StopRule::residual(double epsilon, int max_iters) {
    return StopRule(StopKind::Residual, epsilon, max_iters);
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::Converged:
        return "converged";
    case Termination::MaxIters:
        return "max_iters";
    case Termination::Diverged:
        return "diverged";
    }
    return "unknown";
}

BlockVector step_multisplitting(const Multisplitting& ms, const BlockVector& b,
                                const BlockVector& x) {
    check_solve_inputs(ms, b, x);
    std::vector<Vector> ys(ms.count());
    compute_locals(ms, x.flat(), b.flat(), ys, nullptr);
    return BlockVector::from_dense(reduce_locals(ms, ys), ms.block_rows(),
                                   ms.block_size());
}

SolveReport solve_multisplitting(const Multisplitting& ms, const BlockVector& b,
                                 const BlockVector& x0, const StopRule& stop,
                                 const SolveOptions& opts) {
    return run_iteration(ms, b, x0, 1.0, stop, opts);
}

SolveReport solve_extrapolated(const Multisplitting& ms, const BlockVector& b,
                               const BlockVector& x0, double tau,
                               const StopRule& stop, const SolveOptions& opts) {
    if (!(tau > 0.0)) {
        throw BadParamsError("extrapolation parameter must be positive, got " +
                             std::to_string(tau));
    }
    return run_iteration(ms, b, x0, tau, stop, opts);
}

SolveReport solve_bgaor(const BlockMatrix& a, const BlockVector& b,
                        const std::vector<TripleSplit>& triples,
                        const std::vector<BlockWeights>& ws,
                        const BlockVector& x0, const StopRule& stop,
                        const SolveOptions& opts) {
    return solve_multisplitting(gaor_multisplitting(a, triples, ws), b, x0,
                                stop, opts);
}

SolveReport solve_bgaor(const BlockMatrix& a, const BlockVector& b,
                        const std::vector<GaorPart>& parts,
                        const std::vector<BlockWeights>& ws,
                        const BlockVector& x0, const StopRule& stop,
                        const SolveOptions& opts) {
    return solve_multisplitting(gaor_from_parts(a, parts, ws), b, x0, stop,
                                opts);
}

} // namespace msplit
