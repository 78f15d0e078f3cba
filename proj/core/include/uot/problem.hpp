#pragma once

#include <string>

#include "uot/matrix.hpp"

namespace uot {

// A discrete KL-relaxed UOT instance:
//
//   min_{P >= 0}  <C, P> + lambda1 KL(P 1 | a) + lambda2 KL(P^T 1 | b)
//
// Marginals must be strictly positive; zero entries are rejected here
// rather than silently clamped.
struct UotProblem {
    Vector a;
    Vector b;
    Matrix cost;
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    UotProblem(Vector a_in, Vector b_in, Matrix cost_in,
               double lambda1_in, double lambda2_in);

    std::size_t n() const { return a.size(); }
    std::size_t m() const { return b.size(); }
};

// FNV-1a over dimensions, marginals, cost and relaxation weights.
// Identifies an instance across traces and reference files.
std::string problem_digest(const UotProblem& problem);
std::string matrix_digest(const Matrix& m);

}  // namespace uot
