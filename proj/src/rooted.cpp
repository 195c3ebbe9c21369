#include "rootbound/rooted.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootbound {

Matrix q_matrix(int n) {
    if (n < 1) throw std::invalid_argument("q_matrix: n must be >= 1");
    Matrix q = Matrix::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) q(i, n - 1) = 1.0;
    return q;
}

Matrix q_matrix_inverse(int n) {
    if (n < 1) throw std::invalid_argument("q_matrix_inverse: n must be >= 1");
    Matrix q = Matrix::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) q(i, n - 1) = -1.0;
    return q;
}

bool is_rooted_vector(const Vector& v) {
    if (v.size() < 1) throw std::invalid_argument("is_rooted_vector: empty vector");
    const Eigen::Index n = v.size();
    if (v(n - 1) < 0.0) return false;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (v(i) < v(n - 1)) return false;
    return true;
}

bool is_strictly_rooted_vector(const Vector& v) {
    if (v.size() < 1) throw std::invalid_argument("is_strictly_rooted_vector: empty vector");
    const Eigen::Index n = v.size();
    if (!(v(n - 1) > 0.0)) return false;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (!(v(i) > v(n - 1))) return false;
    return true;
}

Matrix q_transform(const Matrix& cp) {
    require_square(cp, "q_transform");
    require_finite(cp, "q_transform");
    const Eigen::Index n = cp.rows();
    if (n < 2) throw std::invalid_argument("q_transform: order must be >= 2");
    Vector r = row_sums(cp);
    Matrix t(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        for (Eigen::Index j = 0; j + 1 < n; ++j) t(i, j) = cp(i, j) - cp(n - 1, j);
        t(i, n - 1) = r(i) - r(n - 1);
    }
    for (Eigen::Index j = 0; j + 1 < n; ++j) t(n - 1, j) = cp(n - 1, j);
    t(n - 1, n - 1) = r(n - 1);
    return t;
}

RootednessResult is_rooted_matrix(const Matrix& cp) {
    require_square(cp, "is_rooted_matrix");
    require_finite(cp, "is_rooted_matrix");
    const Eigen::Index n = cp.rows();
    RootednessResult res;

    if (n == 1) {
        double d = std::max(0.0, -cp(0, 0));
        Matrix t(1, 1);
        t(0, 0) = cp(0, 0) + d;
        res.certificate = RootedCertificate{d, t};
        return res;
    }

    const double tol = 1e-12 * (1.0 + max_abs(cp));
    Vector r = row_sums(cp);

    for (Eigen::Index j = 0; j + 1 < n; ++j)
        if (cp(n - 1, j) < -tol)
            res.violations.push_back({'a', static_cast<int>(n), static_cast<int>(j) + 1,
                                      cp(n - 1, j), 0.0});
    for (Eigen::Index j = 0; j + 1 < n; ++j)
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            if (i != j && cp(i, j) < cp(n - 1, j) - tol)
                res.violations.push_back({'b', static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                          cp(i, j), cp(n - 1, j)});
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (r(i) < r(n - 1) - tol)
            res.violations.push_back({'c', static_cast<int>(i) + 1, 0, r(i), r(n - 1)});

    if (!res.violations.empty()) return res;

    double d = std::max(0.0, -r(n - 1));
    for (Eigen::Index j = 0; j + 1 < n; ++j) d = std::max(d, cp(n - 1, j) - cp(j, j));

    Matrix shifted = cp + d * Matrix::Identity(n, n);
    res.certificate = RootedCertificate{d, q_transform(shifted)};
    return res;
}

}  // namespace rootbound
