#pragma once

#include <span>

#include "uot/matrix.hpp"
#include "uot/problem.hpp"

namespace uot {

// Generalized KL divergence for nonnegative vectors,
//   KL(x|y) = sum_i x_i log(x_i/y_i) - x_i + y_i,
// with the convention 0 log 0 = 0 (a zero x_i contributes y_i).
double kl_divergence(std::span<const double> x, std::span<const double> y);

// Entropic regularizer h(P) = sum_ij P_ij (log P_ij - 1), zero entries
// contribute nothing.
double entropy(const Matrix& plan);

// Bregman distance generated by the entropy kernel,
//   D_h(x, y) = sum x_i log(x_i/y_i) - sum x_i + sum y_i.
// Nonnegative, zero iff x == y.
double bregman_entropy(std::span<const double> x, std::span<const double> y);
double bregman_entropy(const Matrix& x, const Matrix& y);

// f(P) = <C, P> + lambda1 KL(P 1 | a) + lambda2 KL(P^T 1 | b)
double uot_objective(const UotProblem& problem, const Matrix& plan);

// Analytic gradient, valid where both marginals of the plan are positive:
//   (grad f)_ij = C_ij + lambda1 log((P1)_i / a_i) + lambda2 log((P^T1)_j / b_j)
Matrix uot_gradient(const UotProblem& problem, const Matrix& plan);

}  // namespace uot
