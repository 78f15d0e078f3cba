#include "uot/experiments.hpp"

#include <cmath>
#include <numbers>

namespace uot {

double gaussian_pdf(double x, double mean, double variance) {
    if (!(variance > 0.0)) throw DomainError("gaussian_pdf: variance must be positive");
    double d = x - mean;
    return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

UotProblem build_gaussian_preset(bool second_param_is_std) {
    constexpr std::size_t kGrid = 100;
    auto var = [second_param_is_std](double p) { return second_param_is_std ? p * p : p; };

    Vector a(kGrid), b(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) {
        double x = static_cast<double>(i + 1);
        a[i] = gaussian_pdf(x, 20.0, var(5.0)) + gaussian_pdf(x, 50.0, var(9.0));
        b[i] = gaussian_pdf(x, 60.0, var(10.0));
    }

    Matrix cost(kGrid, kGrid);
    double largest = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
        for (std::size_t j = 0; j < kGrid; ++j) {
            double d = static_cast<double>(i) - static_cast<double>(j);
            cost(i, j) = d * d;
            if (cost(i, j) > largest) largest = cost(i, j);
        }
    }
    for (std::size_t idx = 0; idx < cost.size(); ++idx) {
        cost.data()[idx] /= largest;
    }
    return UotProblem(std::move(a), std::move(b), std::move(cost), 1.0, 1.0);
}

namespace {

// splitmix64; fixed across platforms, unlike <random> distributions.
struct SeededUniform {
    std::uint64_t state;
    double next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

}  // namespace

UotProblem random_instance(std::size_t n, std::size_t m, std::uint64_t seed) {
    SeededUniform rng{seed};
    Vector a(n), b(m);
    for (auto& x : a) x = 0.5 + rng.next();
    for (auto& x : b) x = 0.5 + rng.next();
    Matrix cost(n, m);
    for (std::size_t idx = 0; idx < cost.size(); ++idx) {
        cost.data()[idx] = rng.next();
    }
    return UotProblem(std::move(a), std::move(b), std::move(cost), 1.0, 1.0);
}

ReferenceSolution compute_reference(const UotProblem& problem, double beta, int iters,
                                    int inner_sweeps) {
    ProxParams params{beta, iters, InnerStopRule::fixed_sweeps(inner_sweeps)};
    auto [plan, trace] = solve_ibpuot(problem, params);
    ReferenceSolution ref;
    ref.objective = trace.records.back().objective;
    ref.solver = "ibpuot";
    ref.beta = beta;
    ref.iters = iters;
    ref.inner = params.inner;
    ref.problem_digest = trace.problem_digest;
    ref.plan_digest = matrix_digest(plan);
    return ref;
}

std::vector<std::pair<int, double>> gap_trace(const SolveTrace& trace,
                                              const ReferenceSolution& reference) {
    if (trace.problem_digest != reference.problem_digest) {
        throw ProvenanceMismatch("gap_trace: trace and reference describe different problems");
    }
    std::vector<std::pair<int, double>> gaps;
    gaps.reserve(trace.records.size());
    for (const auto& record : trace.records) {
        gaps.emplace_back(record.k, std::max(record.objective - reference.objective, 1e-16));
    }
    return gaps;
}

double sparsity_ratio(const Matrix& plan, double rel_threshold) {
    if (!(rel_threshold > 0.0)) throw DomainError("sparsity_ratio: threshold must be positive");
    if (plan.size() == 0) throw DomainError("sparsity_ratio: empty plan");
    double largest = max_entry(plan);
    if (!(largest > 0.0)) throw DomainError("sparsity_ratio: plan has no positive entry");
    std::size_t below = 0;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        if (plan.data()[idx] < rel_threshold * largest) ++below;
    }
    return static_cast<double>(below) / static_cast<double>(plan.size());
}

}  // namespace uot
