#include "uot/ibpuot.hpp"

#include <chrono>
#include <cmath>

#include "uot/divergences.hpp"

namespace uot {

Matrix prox_kernel(const Matrix& prev_plan, const Matrix& base_kernel) {
    require_same_shape(prev_plan, base_kernel, "prox_kernel");
    Matrix g(prev_plan.rows(), prev_plan.cols());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        g.data()[idx] = base_kernel.data()[idx] * prev_plan.data()[idx];
    }
    for (std::size_t i = 0; i < g.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.cols(); ++j) acc += g(i, j);
        if (acc == 0.0) {
            throw NumericalUnderflow("prox_kernel: substituted kernel row is all-zero");
        }
    }
    for (std::size_t j = 0; j < g.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) acc += g(i, j);
        if (acc == 0.0) {
            throw NumericalUnderflow("prox_kernel: substituted kernel column is all-zero");
        }
    }
    return g;
}

namespace {

struct InnerRun {
    int sweeps = 0;
    double residual = 0.0;
};

// Shared inner loop: sweep the subproblem kernel until the rule fires.
// Capped in residual mode so a stalled subproblem cannot spin forever.
InnerRun run_inner(ScalingState& state, const UotProblem& problem,
                   const InnerStopRule& rule) {
    constexpr int kResidualModeCap = 200000;
    InnerRun run;
    if (rule.mode == InnerStopRule::Mode::FixedSweeps) {
        for (int l = 0; l < rule.sweeps; ++l) {
            scaling_sweep(state, problem.a, problem.b, problem.lambda1, problem.lambda2);
        }
        run.sweeps = rule.sweeps;
        run.residual = marginal_residual(state, problem.a, problem.lambda1);
    } else {
        while (true) {
            scaling_sweep(state, problem.a, problem.b, problem.lambda1, problem.lambda2);
            ++run.sweeps;
            run.residual = marginal_residual(state, problem.a, problem.lambda1);
            if (run.residual <= rule.tol || run.sweeps >= kResidualModeCap) break;
        }
    }
    return run;
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

void check_params(const ProxParams& params) {
    if (!(params.beta > 0.0)) throw DomainError("beta must be positive");
    if (params.outer_iters < 1) throw DomainError("outer_iters must be >= 1");
}

}  // namespace

IbpuotStep ibpuot_step(const UotProblem& problem, const Matrix& base_kernel,
                       const Matrix& prev_plan, const ProxParams& params,
                       Vector& warm_v) {
    check_params(params);
    ScalingState state{Vector(problem.n(), 1.0), warm_v,
                       prox_kernel(prev_plan, base_kernel), params.beta};
    InnerRun run = run_inner(state, problem, params.inner);
    warm_v = state.v;
    return IbpuotStep{assemble_plan(state), run.sweeps, run.residual};
}

double inexactness_estimate(const UotProblem& problem, const Matrix& next_plan,
                            const Matrix& prev_plan, double beta) {
    require_same_shape(next_plan, prev_plan, "inexactness_estimate");
    Matrix grad = uot_gradient(problem, next_plan);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < next_plan.size(); ++idx) {
        double pn = next_plan.data()[idx];
        double pp = prev_plan.data()[idx];
        if (pn > 0.0 && pp > 0.0) {
            acc += std::abs(grad.data()[idx] + beta * std::log(pn / pp));
        }
    }
    return acc * max_entry(next_plan);
}

std::pair<Matrix, SolveTrace> solve_ibpuot(const UotProblem& problem,
                                           const ProxParams& params,
                                           const Matrix* initial_plan,
                                           const TraceSink& sink) {
    check_params(params);
    const std::size_t n = problem.n();
    const std::size_t m = problem.m();

    Matrix plan = initial_plan ? *initial_plan : Matrix::ones(n, m);
    if (plan.rows() != n || plan.cols() != m) {
        throw DimensionMismatch("solve_ibpuot: initial plan shape mismatch");
    }

    SolveTrace trace;
    trace.solver = "ibpuot";
    trace.problem_digest = problem_digest(problem);

    Matrix base_kernel = build_kernel(problem.cost, params.beta);
    Vector warm_v(m, 1.0);

    auto mark = std::chrono::steady_clock::now();
    for (int k = 0; k < params.outer_iters; ++k) {
        double objective_k = uot_objective(problem, plan);
        IbpuotStep step;
        try {
            step = ibpuot_step(problem, base_kernel, plan, params, warm_v);
        } catch (...) {
            // flush the state row before surfacing the failure
            emit(trace, sink,
                 TraceRecord{k, objective_k, 0, {}, {}, {}, {}, {}, elapsed_ns(mark)});
            throw;
        }
        double nu_hat = inexactness_estimate(problem, step.plan, plan, params.beta);
        emit(trace, sink,
             TraceRecord{k, objective_k, step.sweeps, step.residual, nu_hat, {}, {}, {},
                         elapsed_ns(mark)});
        if (params.inner.mode == InnerStopRule::Mode::MarginalResidual &&
            step.residual > params.inner.tol) {
            trace.not_converged = true;
        }
        plan = std::move(step.plan);
    }
    emit(trace, sink,
         TraceRecord{params.outer_iters, uot_objective(problem, plan), 0, {}, {}, {}, {}, {},
                     elapsed_ns(mark)});
    return {std::move(plan), std::move(trace)};
}

}  // namespace uot
