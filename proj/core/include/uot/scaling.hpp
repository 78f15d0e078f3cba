#pragma once

#include <utility>

#include "uot/matrix.hpp"
#include "uot/problem.hpp"
#include "uot/trace.hpp"

namespace uot {

// Stopping rule for the inner scaling loop of the proximal solvers.
// FixedSweeps runs exactly `sweeps` sweeps; MarginalResidual sweeps until
// the row-marginal residual drops below `tol`.
struct InnerStopRule {
    enum class Mode { FixedSweeps, MarginalResidual };

    Mode mode = Mode::FixedSweeps;
    int sweeps = 1;
    double tol = 0.0;

    static InnerStopRule fixed_sweeps(int count);
    static InnerStopRule marginal_residual(double tolerance);
};

// Dual scalings u, v against a fixed positive kernel. One sweep updates
// u from the previous v, then v from the new u:
//   u = (a / (K v))^(lambda1/(lambda1+eps))
//   v = (b / (K^T u))^(lambda2/(lambda2+eps))
struct ScalingState {
    Vector u;
    Vector v;
    Matrix kernel;
    double eps = 1.0;
};

// K_ij = exp(-C_ij / eps). Throws NumericalUnderflow when a whole row or
// column underflows to zero (plain-mode iterations cannot proceed).
Matrix build_kernel(const Matrix& cost, double eps);

void scaling_sweep(ScalingState& state, const Vector& a, const Vector& b,
                   double lambda1, double lambda2);

// P = Diag(u) K Diag(v)
Matrix assemble_plan(const ScalingState& state);

// r = || P 1 - a .* u^(-eps/lambda1) ||_1, the row identity violated after
// the v half of a sweep. Zero at a joint fixed point.
double marginal_residual(const ScalingState& state, const Vector& a, double lambda1);

struct ScalingOptions {
    double eps = 1.0;
    int max_sweeps = 1000;
    double tol = 0.0;  // 0 disables the residual stop; all sweeps run
    bool stabilized = false;
};

// Entropic UOT by scaling iterations from v = 1. The trace holds one
// record per sweep plus the initial state. Plain mode throws
// NumericalUnderflow when kernel reductions degenerate; stabilized mode
// works on log-domain potentials and always completes.
std::pair<Matrix, SolveTrace> solve_entropic_uot(const UotProblem& problem,
                                                 const ScalingOptions& options,
                                                 const TraceSink& sink = {});

}  // namespace uot
