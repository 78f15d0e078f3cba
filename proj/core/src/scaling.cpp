#include "uot/scaling.hpp"

#include <chrono>
#include <cmath>

#include "uot/divergences.hpp"

namespace uot {

InnerStopRule InnerStopRule::fixed_sweeps(int count) {
    if (count < 1) throw DomainError("InnerStopRule: sweep count must be >= 1");
    InnerStopRule rule;
    rule.mode = Mode::FixedSweeps;
    rule.sweeps = count;
    return rule;
}

InnerStopRule InnerStopRule::marginal_residual(double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("InnerStopRule: tolerance must be positive");
    InnerStopRule rule;
    rule.mode = Mode::MarginalResidual;
    rule.tol = tolerance;
    return rule;
}

Matrix build_kernel(const Matrix& cost, double eps) {
    if (!(eps > 0.0)) throw DomainError("build_kernel: eps must be positive");
    Matrix kernel(cost.rows(), cost.cols());
    for (std::size_t idx = 0; idx < cost.size(); ++idx) {
        kernel.data()[idx] = std::exp(-cost.data()[idx] / eps);
    }
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kernel.cols(); ++j) acc += kernel(i, j);
        if (acc == 0.0) {
            throw NumericalUnderflow("build_kernel: kernel row underflowed to zero");
        }
    }
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kernel.rows(); ++i) acc += kernel(i, j);
        if (acc == 0.0) {
            throw NumericalUnderflow("build_kernel: kernel column underflowed to zero");
        }
    }
    return kernel;
}

void scaling_sweep(ScalingState& state, const Vector& a, const Vector& b,
                   double lambda1, double lambda2) {
    const Matrix& kernel = state.kernel;
    const std::size_t n = kernel.rows();
    const std::size_t m = kernel.cols();
    if (a.size() != n || b.size() != m || state.u.size() != n || state.v.size() != m) {
        throw DimensionMismatch("scaling_sweep: state/marginal sizes disagree");
    }
    const double eu = lambda1 / (lambda1 + state.eps);
    const double ev = lambda2 / (lambda2 + state.eps);

    // u = (a / (K v))^(lambda1/(lambda1+eps)), using the pre-update v
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += kernel(i, j) * state.v[j];
        if (a[i] > 0.0 && (acc == 0.0 || !std::isfinite(acc))) {
            throw NumericalUnderflow("scaling_sweep: K v degenerate on a supported row");
        }
        double ui = std::pow(a[i] / acc, eu);
        if (!std::isfinite(ui)) {
            throw NumericalUnderflow("scaling_sweep: u overflowed");
        }
        state.u[i] = ui;
    }
    // v = (b / (K^T u))^(lambda2/(lambda2+eps)), using the new u
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += kernel(i, j) * state.u[i];
        if (b[j] > 0.0 && (acc == 0.0 || !std::isfinite(acc))) {
            throw NumericalUnderflow("scaling_sweep: K^T u degenerate on a supported column");
        }
        double vj = std::pow(b[j] / acc, ev);
        if (!std::isfinite(vj)) {
            throw NumericalUnderflow("scaling_sweep: v overflowed");
        }
        state.v[j] = vj;
    }
}

Matrix assemble_plan(const ScalingState& state) {
    Matrix plan(state.kernel.rows(), state.kernel.cols());
    for (std::size_t i = 0; i < plan.rows(); ++i) {
        for (std::size_t j = 0; j < plan.cols(); ++j) {
            plan(i, j) = state.u[i] * state.kernel(i, j) * state.v[j];
        }
    }
    return plan;
}

double marginal_residual(const ScalingState& state, const Vector& a, double lambda1) {
    const std::size_t n = state.kernel.rows();
    const std::size_t m = state.kernel.cols();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            row += state.u[i] * state.kernel(i, j) * state.v[j];
        }
        acc += std::abs(row - a[i] * std::pow(state.u[i], -state.eps / lambda1));
    }
    return acc;
}

namespace {

// Log-domain twin of ScalingState. The kernel carries absorbed potentials,
// lu/lv hold the live log scalings and lu_abs/lv_abs the absorbed totals,
// so eps*(lu + lu_abs) is the full dual potential at any time.
struct LogScalingState {
    Matrix log_kernel;
    Vector lu, lv;
    Vector lu_abs, lv_abs;
    double eps;
};

double max_of(const Vector& v) {
    double best = v[0];
    for (double x : v) {
        if (x > best) best = x;
    }
    return best;
}

// Max-shifted log-sum-exp over one kernel row plus lv.
double lse_row(const Matrix& lk, const Vector& lv, std::size_t i) {
    const std::size_t m = lk.cols();
    double shift = lk(i, 0) + lv[0];
    for (std::size_t j = 1; j < m; ++j) {
        double t = lk(i, j) + lv[j];
        if (t > shift) shift = t;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += std::exp(lk(i, j) + lv[j] - shift);
    }
    return shift + std::log(acc);
}

double lse_col(const Matrix& lk, const Vector& lu, std::size_t j) {
    const std::size_t n = lk.rows();
    double shift = lk(0, j) + lu[0];
    for (std::size_t i = 1; i < n; ++i) {
        double t = lk(i, j) + lu[i];
        if (t > shift) shift = t;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::exp(lk(i, j) + lu[i] - shift);
    }
    return shift + std::log(acc);
}

void log_sweep(LogScalingState& state, const UotProblem& problem) {
    const std::size_t n = state.log_kernel.rows();
    const std::size_t m = state.log_kernel.cols();
    const double eu = problem.lambda1 / (problem.lambda1 + state.eps);
    const double ev = problem.lambda2 / (problem.lambda2 + state.eps);
    for (std::size_t i = 0; i < n; ++i) {
        state.lu[i] = eu * (std::log(problem.a[i]) - lse_row(state.log_kernel, state.lv, i));
    }
    for (std::size_t j = 0; j < m; ++j) {
        state.lv[j] = ev * (std::log(problem.b[j]) - lse_col(state.log_kernel, state.lu, j));
    }
    // Absorb the scalings into the kernel once max(u)*max(v) leaves
    // [1e-150, 1e150]; the live lu/lv reset to zero.
    static const double kAbsorbLimit = std::log(1e150);
    if (std::abs(max_of(state.lu) + max_of(state.lv)) > kAbsorbLimit) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                state.log_kernel(i, j) += state.lu[i] + state.lv[j];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            state.lu_abs[i] += state.lu[i];
            state.lu[i] = 0.0;
        }
        for (std::size_t j = 0; j < m; ++j) {
            state.lv_abs[j] += state.lv[j];
            state.lv[j] = 0.0;
        }
    }
}

Matrix log_assemble(const LogScalingState& state) {
    Matrix plan(state.log_kernel.rows(), state.log_kernel.cols());
    for (std::size_t i = 0; i < plan.rows(); ++i) {
        for (std::size_t j = 0; j < plan.cols(); ++j) {
            plan(i, j) = std::exp(state.log_kernel(i, j) + state.lu[i] + state.lv[j]);
        }
    }
    return plan;
}

double log_residual(const LogScalingState& state, const Matrix& plan,
                    const UotProblem& problem) {
    double acc = 0.0;
    for (std::size_t i = 0; i < plan.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < plan.cols(); ++j) row += plan(i, j);
        double phi = state.eps * (state.lu[i] + state.lu_abs[i]);
        acc += std::abs(row - problem.a[i] * std::exp(-phi / problem.lambda1));
    }
    return acc;
}

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point& mark) {
    auto now = std::chrono::steady_clock::now();
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(now - mark).count();
    mark = now;
    return ns;
}

void emit(SolveTrace& trace, const TraceSink& sink, TraceRecord record) {
    if (sink) sink(record);
    trace.records.push_back(std::move(record));
}

}  // namespace

std::pair<Matrix, SolveTrace> solve_entropic_uot(const UotProblem& problem,
                                                 const ScalingOptions& options,
                                                 const TraceSink& sink) {
    if (options.max_sweeps < 1) {
        throw DomainError("solve_entropic_uot: max_sweeps must be >= 1");
    }
    if (!(options.eps > 0.0)) {
        throw DomainError("solve_entropic_uot: eps must be positive");
    }

    SolveTrace trace;
    trace.solver = "scaling";
    trace.problem_digest = problem_digest(problem);

    auto mark = std::chrono::steady_clock::now();
    const std::size_t n = problem.n();
    const std::size_t m = problem.m();

    Matrix plan;
    double residual = 0.0;

    if (!options.stabilized) {
        ScalingState state{Vector(n, 1.0), Vector(m, 1.0),
                           build_kernel(problem.cost, options.eps), options.eps};
        plan = assemble_plan(state);
        residual = marginal_residual(state, problem.a, problem.lambda1);
        emit(trace, sink,
             TraceRecord{0, uot_objective(problem, plan), 0, residual, {}, {}, {}, {},
                         elapsed_ns(mark)});
        for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
            scaling_sweep(state, problem.a, problem.b, problem.lambda1, problem.lambda2);
            plan = assemble_plan(state);
            residual = marginal_residual(state, problem.a, problem.lambda1);
            emit(trace, sink,
                 TraceRecord{sweep, uot_objective(problem, plan), 1, residual, {}, {}, {}, {},
                             elapsed_ns(mark)});
            if (options.tol > 0.0 && residual <= options.tol) break;
        }
    } else {
        LogScalingState state{Matrix(n, m), Vector(n, 0.0), Vector(m, 0.0),
                              Vector(n, 0.0), Vector(m, 0.0), options.eps};
        for (std::size_t idx = 0; idx < state.log_kernel.size(); ++idx) {
            state.log_kernel.data()[idx] = -problem.cost.data()[idx] / options.eps;
        }
        plan = log_assemble(state);
        residual = log_residual(state, plan, problem);
        emit(trace, sink,
             TraceRecord{0, uot_objective(problem, plan), 0, residual, {}, {}, {}, {},
                         elapsed_ns(mark)});
        for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
            log_sweep(state, problem);
            plan = log_assemble(state);
            residual = log_residual(state, plan, problem);
            emit(trace, sink,
                 TraceRecord{sweep, uot_objective(problem, plan), 1, residual, {}, {}, {}, {},
                             elapsed_ns(mark)});
            if (options.tol > 0.0 && residual <= options.tol) break;
        }
    }

    trace.not_converged = options.tol > 0.0 && residual > options.tol;
    return {std::move(plan), std::move(trace)};
}

}  // namespace uot
