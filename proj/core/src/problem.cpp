#include "uot/problem.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>

namespace uot {

namespace {

void check_positive_marginal(const Vector& v, const char* name) {
    if (v.empty()) {
        throw DomainError(std::string("marginal ") + name + " is empty");
    }
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw DomainError(std::string("marginal ") + name +
                              " must be strictly positive and finite");
        }
    }
}

class Fnv1a {
public:
    void add(const void* bytes, std::size_t count) {
        const auto* p = static_cast<const unsigned char*>(bytes);
        for (std::size_t i = 0; i < count; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void add_u64(std::uint64_t v) { add(&v, sizeof v); }
    void add_double(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        add_u64(bits);
    }
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t h = hash_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[h & 0xF];
            h >>= 4;
        }
        return out;
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

UotProblem::UotProblem(Vector a_in, Vector b_in, Matrix cost_in,
                       double lambda1_in, double lambda2_in)
    : a(std::move(a_in)),
      b(std::move(b_in)),
      cost(std::move(cost_in)),
      lambda1(lambda1_in),
      lambda2(lambda2_in) {
    check_positive_marginal(a, "a");
    check_positive_marginal(b, "b");
    if (cost.rows() != a.size() || cost.cols() != b.size()) {
        throw DimensionMismatch("cost matrix dimensions do not match the marginals");
    }
    for (std::size_t idx = 0; idx < cost.size(); ++idx) {
        double c = cost.data()[idx];
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw DomainError("cost entries must be nonnegative and finite");
        }
    }
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw DomainError("relaxation weights must be positive");
    }
}

std::string problem_digest(const UotProblem& problem) {
    Fnv1a h;
    h.add("uot-problem-v1", 14);
    h.add_u64(problem.n());
    h.add_u64(problem.m());
    for (double x : problem.a) h.add_double(x);
    for (double x : problem.b) h.add_double(x);
    for (std::size_t idx = 0; idx < problem.cost.size(); ++idx) {
        h.add_double(problem.cost.data()[idx]);
    }
    h.add_double(problem.lambda1);
    h.add_double(problem.lambda2);
    return h.hex();
}

std::string matrix_digest(const Matrix& m) {
    Fnv1a h;
    h.add_u64(m.rows());
    h.add_u64(m.cols());
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
        h.add_double(m.data()[idx]);
    }
    return h.hex();
}

}  // namespace uot
