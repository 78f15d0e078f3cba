#pragma once

#include "uot/divergences.hpp"

namespace uot {

// Ground-truth machinery kept deliberately free of kernels, scalings and
// Bregman iterations, so agreement with the main solvers is evidence
// rather than tautology.

enum class OracleMethod { ClosedForm1x1, ProjectedDescent };

struct OracleResult {
    Matrix plan;
    double objective = 0.0;
    OracleMethod method = OracleMethod::ProjectedDescent;
    double certified_tol = 0.0;  // first-order stationarity norm achieved
    bool converged = false;
};

// Stationary point of the 1x1 objective c*p + l1(p log(p/a) - p + a)
// + l2(p log(p/b) - p + b):
//   p* = (a^l1 b^l2)^(1/(l1+l2)) exp(-c/(l1+l2))
double closed_form_1x1(double a, double b, double c, double lambda1, double lambda2);

// Projected gradient descent with Armijo backtracking from the all-ones
// plan; entries are clamped at 1e-300 to stay inside the objective domain.
// Stops when the projected-gradient infinity norm drops below tol.
// Instances are limited to n*m <= 100.
OracleResult projected_descent_reference(const UotProblem& problem, int iters, double tol);

// Central differences of the objective, entry by entry.
Matrix finite_diff_gradient(const UotProblem& problem, const Matrix& plan, double step);

}  // namespace uot
