#include "uot/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace uot {

namespace {

constexpr double kClamp = 1e-300;
constexpr double kArmijo = 1e-4;

// Infinity norm of the projected gradient; entries at the clamp act as
// boundary points, so only descent directions count there.
double projected_gradient_norm(const Matrix& plan, const Matrix& grad) {
    double worst = 0.0;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        double g = grad.data()[idx];
        double mag = plan.data()[idx] > kClamp ? std::abs(g) : std::max(-g, 0.0);
        if (mag > worst) worst = mag;
    }
    return worst;
}

}  // namespace

double closed_form_1x1(double a, double b, double c, double lambda1, double lambda2) {
    if (!(a > 0.0) || !(b > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw DomainError("closed_form_1x1: a, b, lambda1, lambda2 must be positive");
    }
    return std::exp((lambda1 * std::log(a) + lambda2 * std::log(b) - c) /
                    (lambda1 + lambda2));
}

OracleResult projected_descent_reference(const UotProblem& problem, int iters, double tol) {
    if (problem.n() * problem.m() > 100) {
        throw DomainError("projected_descent_reference: instance larger than 10x10");
    }
    if (iters < 1 || !(tol > 0.0)) {
        throw DomainError("projected_descent_reference: bad iteration budget or tolerance");
    }

    Matrix plan = Matrix::ones(problem.n(), problem.m());
    double objective = uot_objective(problem, plan);
    double pg_norm = 0.0;

    for (int it = 0; it < iters; ++it) {
        Matrix grad = uot_gradient(problem, plan);
        pg_norm = projected_gradient_norm(plan, grad);
        if (pg_norm <= tol) {
            return OracleResult{std::move(plan), objective, OracleMethod::ProjectedDescent,
                                pg_norm, true};
        }
        double step = 1.0;
        bool moved = false;
        while (step >= 1e-18) {
            Matrix trial(plan.rows(), plan.cols());
            double inner = 0.0;  // <grad, trial - plan>
            for (std::size_t idx = 0; idx < plan.size(); ++idx) {
                double t = std::max(plan.data()[idx] - step * grad.data()[idx], kClamp);
                trial.data()[idx] = t;
                inner += grad.data()[idx] * (t - plan.data()[idx]);
            }
            double trial_objective = uot_objective(problem, trial);
            if (trial_objective <= objective + kArmijo * inner) {
                plan = std::move(trial);
                objective = trial_objective;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // backtracking exhausted, no further progress possible
    }

    Matrix grad = uot_gradient(problem, plan);
    pg_norm = projected_gradient_norm(plan, grad);
    return OracleResult{std::move(plan), objective, OracleMethod::ProjectedDescent,
                        pg_norm, pg_norm <= tol};
}

Matrix finite_diff_gradient(const UotProblem& problem, const Matrix& plan, double step) {
    if (!(step > 0.0)) throw DomainError("finite_diff_gradient: step must be positive");
    Matrix grad(plan.rows(), plan.cols());
    Matrix work = plan;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        double center = plan.data()[idx];
        work.data()[idx] = center + step;
        double f_plus = uot_objective(problem, work);
        work.data()[idx] = center - step;
        double f_minus = uot_objective(problem, work);
        work.data()[idx] = center;
        grad.data()[idx] = (f_plus - f_minus) / (2.0 * step);
    }
    return grad;
}

}  // namespace uot
