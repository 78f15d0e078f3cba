#include "uot/divergences.hpp"

#include <cmath>

namespace uot {

namespace {

// Entrywise contribution x log(x/y) - x + y with 0 log 0 = 0. Call with y > 0.
inline double kl_term(double x, double y) {
    if (x == 0.0) return y;
    return x * std::log(x / y) - x + y;
}

double kl_sum(const double* x, const double* y, std::size_t count, const char* where) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(y[i] > 0.0)) {
            throw DomainError(std::string(where) + ": reference entries must be positive");
        }
        if (x[i] < 0.0) {
            throw DomainError(std::string(where) + ": entries must be nonnegative");
        }
        acc += kl_term(x[i], y[i]);
    }
    return acc;
}

}  // namespace

double kl_divergence(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("kl_divergence: lengths differ");
    }
    return kl_sum(x.data(), y.data(), x.size(), "kl_divergence");
}

double entropy(const Matrix& plan) {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        double p = plan.data()[idx];
        if (p > 0.0) acc += p * (std::log(p) - 1.0);
    }
    return acc;
}

double bregman_entropy(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("bregman_entropy: lengths differ");
    }
    return kl_sum(x.data(), y.data(), x.size(), "bregman_entropy");
}

double bregman_entropy(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y, "bregman_entropy");
    return kl_sum(x.data(), y.data(), x.size(), "bregman_entropy");
}

double uot_objective(const UotProblem& problem, const Matrix& plan) {
    if (plan.rows() != problem.n() || plan.cols() != problem.m()) {
        throw DimensionMismatch("uot_objective: plan shape does not match problem");
    }
    double transport = 0.0;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        transport += problem.cost.data()[idx] * plan.data()[idx];
    }
    Vector row = row_sums(plan);
    Vector col = col_sums(plan);
    return transport +
           problem.lambda1 * kl_sum(row.data(), problem.a.data(), row.size(), "uot_objective") +
           problem.lambda2 * kl_sum(col.data(), problem.b.data(), col.size(), "uot_objective");
}

Matrix uot_gradient(const UotProblem& problem, const Matrix& plan) {
    if (plan.rows() != problem.n() || plan.cols() != problem.m()) {
        throw DimensionMismatch("uot_gradient: plan shape does not match problem");
    }
    Vector row = row_sums(plan);
    Vector col = col_sums(plan);
    Vector row_log(row.size()), col_log(col.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        row_log[i] = problem.lambda1 * std::log(row[i] / problem.a[i]);
    }
    for (std::size_t j = 0; j < col.size(); ++j) {
        col_log[j] = problem.lambda2 * std::log(col[j] / problem.b[j]);
    }
    Matrix grad(plan.rows(), plan.cols());
    for (std::size_t i = 0; i < plan.rows(); ++i) {
        for (std::size_t j = 0; j < plan.cols(); ++j) {
            grad(i, j) = problem.cost(i, j) + row_log[i] + col_log[j];
        }
    }
    return grad;
}

}  // namespace uot
