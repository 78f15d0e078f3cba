#pragma once

#include <utility>

#include "uot/scaling.hpp"

namespace uot {

// Outer Bregman proximal point configuration. beta stays constant across
// outer iterations.
struct ProxParams {
    double beta = 1.0;
    int outer_iters = 1;
    InnerStopRule inner = InnerStopRule::fixed_sweeps(1);
};

// Substituted subproblem kernel G = base_kernel .* prev_plan. Zeros of
// prev_plan stay zero in every later iterate (multiplicative trap).
// Throws NumericalUnderflow when a whole row or column of G vanishes.
Matrix prox_kernel(const Matrix& prev_plan, const Matrix& base_kernel);

struct IbpuotStep {
    Matrix plan;
    int sweeps = 0;
    double residual = 0.0;
};

// One outer iteration: scaling sweeps with kernel G = prox_kernel(prev_plan,
// base_kernel) at eps = beta until the inner rule fires. warm_v carries the
// dual scaling across outer iterations.
IbpuotStep ibpuot_step(const UotProblem& problem, const Matrix& base_kernel,
                       const Matrix& prev_plan, const ProxParams& params,
                       Vector& warm_v);

// nu_hat = || grad f(next) + beta (log next - log prev) ||_1 over entries
// positive in both plans, scaled by the largest entry of next. Zero iff the
// subproblem stationarity holds exactly on the support.
double inexactness_estimate(const UotProblem& problem, const Matrix& next_plan,
                            const Matrix& prev_plan, double beta);

// N outer proximal iterations from P^0 (all-ones unless given), v warm
// started once before the loop.
std::pair<Matrix, SolveTrace> solve_ibpuot(const UotProblem& problem,
                                           const ProxParams& params,
                                           const Matrix* initial_plan = nullptr,
                                           const TraceSink& sink = {});

}  // namespace uot
