#include "uot/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uot {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

double parse_double(const std::string& text, const std::filesystem::path& path) {
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str()) {
        throw IoError("bad numeric field '" + text + "' in " + path.string());
    }
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    auto out = open_out(path);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string header;
    if (!std::getline(in, header)) throw IoError("empty file: " + path.string());
    std::istringstream hs(header);
    std::size_t rows = 0, cols = 0;
    if (!(hs >> rows >> cols) || rows == 0 || cols == 0) {
        throw IoError("matrix header must be 'rows cols': " + path.string());
    }
    std::string extra;
    if (hs >> extra) throw IoError("trailing tokens in matrix header: " + path.string());
    Matrix m(rows, cols);
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
        if (!(in >> m.data()[idx])) {
            throw IoError("matrix body truncated: " + path.string());
        }
    }
    return m;
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
    auto out = open_out(path);
    out << v.size() << '\n';
    for (double x : v) out << format_double(x) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

Vector read_vector(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string header;
    if (!std::getline(in, header)) throw IoError("empty file: " + path.string());
    std::istringstream hs(header);
    std::size_t count = 0;
    if (!(hs >> count) || count == 0) {
        throw IoError("vector header must be a positive length: " + path.string());
    }
    std::string extra;
    if (hs >> extra) throw IoError("vector header has extra tokens: " + path.string());
    Vector v(count);
    for (auto& x : v) {
        if (!(in >> x)) throw IoError("vector body truncated: " + path.string());
    }
    return v;
}

TraceCsvWriter::TraceCsvWriter(std::ostream& out, bool with_gap, double reference_objective,
                               bool with_timing)
    : out_(out),
      with_gap_(with_gap),
      reference_objective_(reference_objective),
      with_timing_(with_timing) {
    out_ << "k,objective";
    if (with_gap_) out_ << ",gap";
    out_ << ",inner_sweeps,inner_residual,nu_hat,theta,rho,delta_hat,wall_ns\n";
}

void TraceCsvWriter::write(const TraceRecord& record) {
    auto cell = [](const std::optional<double>& value) {
        return value ? format_double(*value) : std::string();
    };
    out_ << record.k << ',' << format_double(record.objective);
    if (with_gap_) {
        out_ << ',' << format_double(std::max(record.objective - reference_objective_, 1e-16));
    }
    out_ << ',' << record.inner_sweeps << ',' << cell(record.inner_residual) << ','
         << cell(record.nu_hat) << ',' << cell(record.theta) << ',' << cell(record.rho)
         << ',' << cell(record.delta_hat) << ',' << (with_timing_ ? record.wall_ns : 0)
         << '\n';
}

void TraceCsvWriter::write_not_converged() { out_ << "# not_converged\n"; }

void TraceCsvWriter::write_error(const std::string& message) {
    std::string clean = message;
    for (char& c : clean) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    out_ << "# error " << clean << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const SolveTrace& trace,
                     const ReferenceSolution* truth, bool with_timing) {
    if (truth && !trace.problem_digest.empty() &&
        trace.problem_digest != truth->problem_digest) {
        throw ProvenanceMismatch("write_trace_csv: reference belongs to another problem");
    }
    auto out = open_out(path);
    TraceCsvWriter writer(out, truth != nullptr, truth ? truth->objective : 0.0, with_timing);
    for (const auto& record : trace.records) writer.write(record);
    if (trace.not_converged) writer.write_not_converged();
    if (!out) throw IoError("write failed: " + path.string());
}

ParsedTrace read_trace_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty trace: " + path.string());
    auto header = split_csv(line);
    bool has_gap = header.size() > 2 && header[2] == "gap";
    std::size_t expected = has_gap ? 11 : 10;
    if (header.size() != expected || header[0] != "k") {
        throw IoError("unrecognized trace header in " + path.string());
    }

    ParsedTrace parsed;
    parsed.has_gap = has_gap;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# not_converged", 0) == 0) parsed.trace.not_converged = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != expected) {
            throw IoError("trace row with wrong arity in " + path.string());
        }
        auto opt = [&](const std::string& text) -> std::optional<double> {
            if (text.empty()) return std::nullopt;
            return parse_double(text, path);
        };
        TraceRecord record;
        std::size_t f = 0;
        record.k = static_cast<int>(parse_double(fields[f++], path));
        record.objective = parse_double(fields[f++], path);
        if (has_gap) parsed.gaps.push_back(parse_double(fields[f++], path));
        record.inner_sweeps = static_cast<int>(parse_double(fields[f++], path));
        record.inner_residual = opt(fields[f++]);
        record.nu_hat = opt(fields[f++]);
        record.theta = opt(fields[f++]);
        record.rho = opt(fields[f++]);
        record.delta_hat = opt(fields[f++]);
        record.wall_ns = static_cast<std::int64_t>(parse_double(fields[f++], path));
        parsed.trace.records.push_back(std::move(record));
    }
    return parsed;
}

void write_reference_json(const std::filesystem::path& path, const ReferenceSolution& ref) {
    nlohmann::ordered_json inner;
    if (ref.inner.mode == InnerStopRule::Mode::FixedSweeps) {
        inner = {{"mode", "fixed_sweeps"}, {"sweeps", ref.inner.sweeps}};
    } else {
        inner = {{"mode", "marginal_residual"}, {"tol", ref.inner.tol}};
    }
    nlohmann::ordered_json j = {
        {"objective", format_double(ref.objective)},
        {"solver", ref.solver},
        {"beta", ref.beta},
        {"iters", ref.iters},
        {"inner", inner},
        {"problem_digest", ref.problem_digest},
        {"plan_digest", ref.plan_digest},
    };
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

ReferenceSolution read_reference_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad reference JSON " + path.string() + ": " + e.what());
    }
    try {
        ReferenceSolution ref;
        ref.objective = parse_double(j.at("objective").get<std::string>(), path);
        ref.solver = j.at("solver").get<std::string>();
        ref.beta = j.at("beta").get<double>();
        ref.iters = j.at("iters").get<int>();
        const auto& inner = j.at("inner");
        if (inner.at("mode").get<std::string>() == "fixed_sweeps") {
            ref.inner = InnerStopRule::fixed_sweeps(inner.at("sweeps").get<int>());
        } else {
            ref.inner = InnerStopRule::marginal_residual(inner.at("tol").get<double>());
        }
        ref.problem_digest = j.at("problem_digest").get<std::string>();
        ref.plan_digest = j.at("plan_digest").get<std::string>();
        return ref;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("reference JSON missing fields in " + path.string() + ": " + e.what());
    }
}

}  // namespace uot
