#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uot {

// One row of a solve trace. Row k carries f(P^k) together with the
// diagnostics of the outer step that starts from P^k (inner sweeps,
// subproblem residual, inexactness estimate, theta). The final row has
// only state quantities. theta/rho/delta_hat stay empty for
// non-accelerated solvers.
struct TraceRecord {
    int k = 0;
    double objective = 0.0;
    int inner_sweeps = 0;
    std::optional<double> inner_residual;
    std::optional<double> nu_hat;
    std::optional<double> theta;
    std::optional<double> rho;
    std::optional<double> delta_hat;
    std::int64_t wall_ns = 0;
};

struct SolveTrace {
    std::vector<TraceRecord> records;
    bool not_converged = false;
    std::string solver;
    std::string problem_digest;
};

// Invoked once per record as it is produced, so callers can flush traces
// up to a failure point.
using TraceSink = std::function<void(const TraceRecord&)>;

}  // namespace uot
