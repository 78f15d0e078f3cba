#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "uot/experiments.hpp"

namespace uot {

// Shortest decimal with 17 significant digits; round-trips any double.
std::string format_double(double value);

// Matrix/vector text format: first line "n m" (vectors: "n"), then
// whitespace-separated entries in row-major order.
void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Vector& v);
Vector read_vector(const std::filesystem::path& path);

// Streaming trace writer. Columns:
//   k,objective[,gap],inner_sweeps,inner_residual,nu_hat,theta,rho,delta_hat,wall_ns
// The gap column appears only when a reference objective is supplied.
// Empty cells encode absent diagnostics. Wall times are zeroed unless
// with_timing is set, keeping repeated runs byte-identical.
class TraceCsvWriter {
public:
    TraceCsvWriter(std::ostream& out, bool with_gap, double reference_objective,
                   bool with_timing = false);
    void write(const TraceRecord& record);
    void write_not_converged();
    void write_error(const std::string& message);

private:
    std::ostream& out_;
    bool with_gap_;
    double reference_objective_;
    bool with_timing_;
};

void write_trace_csv(const std::filesystem::path& path, const SolveTrace& trace,
                     const ReferenceSolution* truth = nullptr, bool with_timing = false);

struct ParsedTrace {
    SolveTrace trace;
    bool has_gap = false;
    std::vector<double> gaps;
};

ParsedTrace read_trace_csv(const std::filesystem::path& path);

void write_reference_json(const std::filesystem::path& path, const ReferenceSolution& ref);
ReferenceSolution read_reference_json(const std::filesystem::path& path);

}  // namespace uot
