#include "uot/aibpuot.hpp"

#include <chrono>
#include <cmath>

#include "uot/divergences.hpp"

namespace uot {

double solve_theta(double tsc, double beta, double gamma, double sigma, double rho) {
    if (!(tsc > 0.0) || !(beta > 0.0) || !(sigma > 0.0) || !(rho > 0.0)) {
        throw DomainError("solve_theta: parameters must be positive");
    }
    if (!(gamma >= 1.0)) {
        throw DomainError("solve_theta: gamma must be >= 1");
    }
    const double tb = tsc * beta;
    const double sr = sigma * rho;
    auto g = [&](double theta) { return tb * std::pow(theta, gamma) - sr * (1.0 - theta); };

    // g is strictly increasing with g(0) = -sr < 0 < tb = g(1); Newton with
    // a bisection bracket converges to a few ulps of the evaluation scale.
    double lo = 0.0, hi = 1.0, x = 0.5;
    for (int it = 0; it < 200; ++it) {
        double gx = g(x);
        if (gx == 0.0) break;
        if (gx < 0.0) lo = x; else hi = x;
        double gp = tb * gamma * std::pow(x, gamma - 1.0) + sr;
        double next = x - gx / gp;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

Matrix intermediate_point(const Matrix& z, const Matrix& p, double theta) {
    require_same_shape(z, p, "intermediate_point");
    if (!(theta >= 0.0) || !(theta <= 1.0)) {
        throw DomainError("intermediate_point: theta must lie in [0,1]");
    }
    Matrix y(z.rows(), z.cols());
    for (std::size_t idx = 0; idx < y.size(); ++idx) {
        y.data()[idx] = theta * z.data()[idx] + (1.0 - theta) * p.data()[idx];
    }
    return y;
}

double update_tau(double tsc, double theta, double t_exp) {
    return tsc * std::pow(theta, t_exp) < 0.125 ? 2.0 * tsc : tsc;
}

Matrix update_z(const Matrix& z_prev, const Matrix& next_plan, const Matrix& y,
                double tsc, double theta, double gamma) {
    require_same_shape(z_prev, next_plan, "update_z");
    require_same_shape(z_prev, y, "update_z");
    const double exponent = std::pow(theta, 1.0 - gamma) / tsc;
    Matrix z(z_prev.rows(), z_prev.cols());
    for (std::size_t idx = 0; idx < z.size(); ++idx) {
        double pn = next_plan.data()[idx];
        double yv = y.data()[idx];
        if (yv < 0.0) {
            throw DomainError("update_z: intermediate point has a negative entry");
        }
        if (pn == 0.0) {
            // dead entry: ratio^s -> 0 for positive s, regardless of y
            z.data()[idx] = 0.0;
            continue;
        }
        if (yv == 0.0) {
            throw DomainError("update_z: zero intermediate entry under a live plan entry");
        }
        z.data()[idx] = z_prev.data()[idx] * std::pow(pn / yv, exponent);
    }
    return z;
}

namespace {

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

std::pair<Matrix, SolveTrace> solve_aibpuot(const UotProblem& problem,
                                            const ProxParams& params,
                                            const AccelConfig& accel,
                                            const TraceSink& sink) {
    if (!(params.beta > 0.0)) throw DomainError("beta must be positive");
    if (params.outer_iters < 1) throw DomainError("outer_iters must be >= 1");
    if (!(accel.sigma > 0.0)) throw DomainError("sigma must be positive");
    if (!(accel.t_exp > 0.0) || !(accel.t_exp < 1.0)) {
        throw DomainError("t_exp must lie in (0,1)");
    }
    if (!(accel.tsc0 > 0.0)) throw DomainError("tsc0 must be positive");

    const std::size_t n = problem.n();
    const std::size_t m = problem.m();

    SolveTrace trace;
    trace.solver = "aibpuot";
    trace.problem_digest = problem_digest(problem);

    Matrix base_kernel = build_kernel(problem.cost, params.beta);
    Matrix plan = Matrix::ones(n, m);

    AccelState st;
    st.z = Matrix::ones(n, m);
    st.tsc = accel.tsc0;
    st.tse = 1.0 + accel.t_exp;
    st.sigma = accel.sigma;
    st.t_exp = accel.t_exp;

    Vector warm_v(m, 1.0);

    auto mark = std::chrono::steady_clock::now();
    for (int k = 0; k < params.outer_iters; ++k) {
        double objective_k = uot_objective(problem, plan);
        st.theta = solve_theta(st.tsc, params.beta, st.tse, st.sigma, st.rho);
        Matrix y = intermediate_point(st.z, plan, st.theta);

        IbpuotStep step;
        try {
            step = ibpuot_step(problem, base_kernel, y, params, warm_v);
        } catch (...) {
            emit(trace, sink,
                 TraceRecord{k, objective_k, 0, {}, {}, st.theta, st.rho, st.delta_hat,
                             elapsed_ns(mark)});
            throw;
        }
        double nu_hat = inexactness_estimate(problem, step.plan, y, params.beta);
        st.z = update_z(st.z, step.plan, y, st.tsc, st.theta, st.tse);
        emit(trace, sink,
             TraceRecord{k, objective_k, step.sweeps, step.residual, nu_hat, st.theta,
                         st.rho, st.delta_hat, elapsed_ns(mark)});
        if (params.inner.mode == InnerStopRule::Mode::MarginalResidual &&
            step.residual > params.inner.tol) {
            trace.not_converged = true;
        }
        st.rho *= 1.0 - st.theta;
        st.delta_hat = (1.0 - st.theta) * st.delta_hat + nu_hat;
        st.tsc = update_tau(st.tsc, st.theta, st.t_exp);
        plan = std::move(step.plan);
    }
    emit(trace, sink,
         TraceRecord{params.outer_iters, uot_objective(problem, plan), 0, {}, {}, {},
                     st.rho, st.delta_hat, elapsed_ns(mark)});
    return {std::move(plan), std::move(trace)};
}

}  // namespace uot
