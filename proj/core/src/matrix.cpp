#include "uot/matrix.hpp"

namespace uot {

Vector row_sums(const Matrix& m) {
    Vector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc += m(i, j);
        }
        out[i] = acc;
    }
    return out;
}

Vector col_sums(const Matrix& m) {
    Vector out(m.cols(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            acc += m(i, j);
        }
        out[j] = acc;
    }
    return out;
}

double max_entry(const Matrix& m) {
    double best = m.size() ? m.data()[0] : 0.0;
    for (std::size_t idx = 1; idx < m.size(); ++idx) {
        if (m.data()[idx] > best) best = m.data()[idx];
    }
    return best;
}

}  // namespace uot
