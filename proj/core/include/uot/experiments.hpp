#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uot/ibpuot.hpp"

namespace uot {

// Density of N(mean, variance) at x.
double gaussian_pdf(double x, double mean, double variance);

// The 1-D benchmark instance: grid 1..100 step 1, source mixture
// N(20,5)+N(50,9), target N(60,10), lambda1 = lambda2 = 1, cost
// (x_i - x_j)^2 normalized by its maximum. Marginals are raw density
// samples, not renormalized. When second_param_is_std is set, the second
// Gaussian parameter is read as a standard deviation instead of a
// variance (sensitivity checks only).
UotProblem build_gaussian_preset(bool second_param_is_std = false);

// Seeded random instance: a, b in (0.5, 1.5), cost in (0, 1), lambda = 1.
// Same seed, same instance, independent of platform RNG distributions.
UotProblem random_instance(std::size_t n, std::size_t m, std::uint64_t seed);

// High-accuracy objective used as the optimum for gap curves, together
// with the provenance needed to reproduce it.
struct ReferenceSolution {
    double objective = 0.0;
    std::string solver;
    double beta = 0.005;
    int iters = 10000;
    InnerStopRule inner = InnerStopRule::fixed_sweeps(1);
    std::string problem_digest;
    std::string plan_digest;
};

ReferenceSolution compute_reference(const UotProblem& problem, double beta = 0.005,
                                    int iters = 10000, int inner_sweeps = 1);

// (k, gap) pairs with gap = f(P^k) - f*, clamped below at 1e-16 for
// log-domain plotting. Throws ProvenanceMismatch when the trace and the
// reference belong to different instances.
std::vector<std::pair<int, double>> gap_trace(const SolveTrace& trace,
                                              const ReferenceSolution& reference);

// Fraction of entries below rel_threshold * max(P). DomainError on an
// all-zero plan.
double sparsity_ratio(const Matrix& plan, double rel_threshold = 1e-6);

}  // namespace uot
