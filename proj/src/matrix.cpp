#include "rootbound/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rootbound {

Matrix parse_matrix(std::istream& in) {
    long n_rows = 0, n_cols = 0;
    if (!(in >> n_rows >> n_cols))
        throw std::invalid_argument("matrix header: expected \"n_rows n_cols\"");
    if (n_rows <= 0 || n_cols <= 0)
        throw std::invalid_argument("matrix header: dimensions must be positive, got " +
                                    std::to_string(n_rows) + " x " + std::to_string(n_cols));
    Matrix m(n_rows, n_cols);
    for (long i = 0; i < n_rows; ++i) {
        for (long j = 0; j < n_cols; ++j) {
            double x;
            if (!(in >> x))
                throw std::invalid_argument("matrix entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + "): expected a number");
            if (!std::isfinite(x))
                throw std::invalid_argument("matrix entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") is not finite");
            m(i, j) = x;
        }
    }
    return m;
}

Matrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    return parse_matrix(in);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

Vector row_sums(const Matrix& c) { return c.rowwise().sum(); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
}

void require_nonnegative(const Matrix& m, const char* what) {
    require_finite(m, what);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) < 0.0)
                throw std::invalid_argument(std::string(what) + ": negative entry at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ")");
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

void reach(const Matrix& c, Eigen::Index start, bool transpose, std::vector<char>& seen) {
    std::vector<Eigen::Index> stack{start};
    seen.assign(static_cast<size_t>(c.rows()), 0);
    seen[static_cast<size_t>(start)] = 1;
    while (!stack.empty()) {
        Eigen::Index i = stack.back();
        stack.pop_back();
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            double e = transpose ? c(j, i) : c(i, j);
            if (e != 0.0 && !seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                stack.push_back(j);
            }
        }
    }
}

}  // namespace

bool pattern_strongly_connected(const Matrix& c) {
    require_square(c, "pattern_strongly_connected");
    if (c.rows() == 1) return true;
    std::vector<char> seen;
    reach(c, 0, false, seen);
    for (char s : seen)
        if (!s) return false;
    reach(c, 0, true, seen);
    for (char s : seen)
        if (!s) return false;
    return true;
}

}  // namespace rootbound
