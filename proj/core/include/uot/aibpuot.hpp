#pragma once

#include <utility>

#include "uot/ibpuot.hpp"

namespace uot {

// Estimate-sequence parameters. gamma = 1 + t_exp is the triangle scaling
// exponent; sigma weighs the Bregman term of the initial estimate function.
struct AccelConfig {
    double sigma = 1.0;
    double t_exp = 0.5;
    double tsc0 = 1.0;
};

// Accelerated-solver bookkeeping across outer iterations.
struct AccelState {
    Matrix z;                // estimate-sequence minimizer Z^k
    double rho = 1.0;        // prod (1 - theta_i)
    double theta = 0.0;      // last selected theta_k
    double tsc = 1.0;        // triangle scaling constant tau
    double tse = 1.5;        // triangle scaling exponent gamma
    double sigma = 1.0;
    double t_exp = 0.5;
    double delta_hat = 0.0;  // (1-theta) recursion over nu_hat
};

// Unique root in (0,1) of  tsc*beta*theta^gamma - sigma*rho*(1-theta) = 0.
// The left side is strictly increasing with opposite signs at 0 and 1.
double solve_theta(double tsc, double beta, double gamma, double sigma, double rho);

// Y = theta Z + (1-theta) P, entrywise convex combination.
Matrix intermediate_point(const Matrix& z, const Matrix& p, double theta);

// Doubling heuristic: 2*tsc when tsc * theta^t_exp < 0.125, else unchanged.
double update_tau(double tsc, double theta, double t_exp);

// Multiplicative estimate-sequence minimizer update,
//   Z_next = Z_prev .* (next_plan / y)^(tsc^-1 theta^(1-gamma)).
// Entries where next_plan is exactly zero go to zero directly; a
// nonpositive y under a positive next_plan entry is a DomainError.
Matrix update_z(const Matrix& z_prev, const Matrix& next_plan, const Matrix& y,
                double tsc, double theta, double gamma);

// Accelerated proximal iterations from P^0 = Z^0 = all-ones: select theta_k,
// form Y^k, run inner scaling on G = exp(-C/beta) .* Y^k, assemble P^{k+1},
// then update Z, rho, delta_hat and apply the tau doubling check.
std::pair<Matrix, SolveTrace> solve_aibpuot(const UotProblem& problem,
                                            const ProxParams& params,
                                            const AccelConfig& accel,
                                            const TraceSink& sink = {});

}  // namespace uot
