#include "rootbound/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rootbound {

namespace {

constexpr int kMaxDenseOrder = 512;
constexpr int kStallWindow = 200;
constexpr double kStallShrinkFactor = 0.999;

void normalize_perron(Vector& v) {
    double s = v.sum();
    if (s > 0.0) v /= s;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) < 0.0 && v(i) > -1e-12) v(i) = 0.0;
}

}  // namespace

SpectralResult spectral_radius_nonneg(const Matrix& c, double tol, long max_iter) {
    require_square(c, "spectral_radius_nonneg");
    require_nonnegative(c, "spectral_radius_nonneg");
    if (tol <= 0.0) throw std::invalid_argument("spectral_radius_nonneg: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("spectral_radius_nonneg: max_iter must be >= 1");

    const Eigen::Index n = c.rows();
    SpectralResult res;
    Vector v = Vector::Constant(n, 1.0 / static_cast<double>(n));

    double lo = 0.0, hi = 0.0;
    double snapshot = std::numeric_limits<double>::infinity();
    bool converged = false;
    long it = 0;
    const double float_floor = 16.0 * std::numeric_limits<double>::epsilon();
    // Coordinates of the iterate can underflow to zero on reducible inputs;
    // the floor keeps every quotient finite and the bracket valid.
    const double coord_floor = 1e-300;

    while (it < max_iter) {
        ++it;
        Vector w = c * v + v;
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double q = w(i) / v(i);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        double width = hi - lo;
        if (width <= tol || width <= float_floor * std::max(1.0, hi)) {
            v = w / w.sum();
            converged = true;
            break;
        }
        if (it % kStallWindow == 0) {
            if (width > kStallShrinkFactor * snapshot) break;
            snapshot = width;
        }
        v = w / w.sum();
        for (Eigen::Index i = 0; i < n; ++i)
            if (v(i) < coord_floor) v(i) = coord_floor;
    }

    res.iterations = it;
    res.cw_lower = lo - 1.0;
    res.cw_upper = hi - 1.0;
    normalize_perron(v);
    res.eigenvector = v;

    if (converged) {
        res.method = SpectralMethod::power;
        res.value = 0.5 * (lo + hi) - 1.0;
        return res;
    }

    res.method = SpectralMethod::dense_fallback;
    Eigen::EigenSolver<Matrix> solver(c, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_radius_nonneg: QR iteration did not converge");
    double radius = 0.0;
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ev = solver.eigenvalues()(i);
        double mag = std::abs(ev);
        const auto cur = solver.eigenvalues()(best);
        if (mag > radius + 1e-14 * (1.0 + radius) ||
            (mag >= radius - 1e-14 * (1.0 + radius) &&
             std::abs(ev.imag()) < std::abs(cur.imag()))) {
            radius = std::max(radius, mag);
            best = i;
        }
    }
    res.value = std::clamp(radius, res.cw_lower, res.cw_upper);

    // A stalled iterate can sit far from the dominant eigenspace (defective
    // root); prefer the dense eigenvector when it is genuinely nonnegative.
    Vector dense_vec = solver.eigenvectors().col(best).real();
    double s = dense_vec.sum();
    if (s < 0.0) dense_vec = -dense_vec;
    double norm1 = dense_vec.cwiseAbs().sum();
    if (norm1 > 0.0 && dense_vec.minCoeff() >= -1e-9 * norm1) {
        dense_vec = dense_vec.cwiseMax(0.0);
        dense_vec /= dense_vec.sum();
        res.eigenvector = dense_vec;
    }
    return res;
}

SpectralResult left_eigenvector_nonneg(const Matrix& c, double tol, long max_iter) {
    require_square(c, "left_eigenvector_nonneg");
    Matrix ct = c.transpose();
    return spectral_radius_nonneg(ct, tol, max_iter);
}

std::vector<std::complex<double>> dense_eigenvalues(const Matrix& c) {
    require_square(c, "dense_eigenvalues");
    require_finite(c, "dense_eigenvalues");
    if (c.rows() > kMaxDenseOrder)
        throw std::invalid_argument("dense_eigenvalues: order " + std::to_string(c.rows()) +
                                    " exceeds the supported maximum " +
                                    std::to_string(kMaxDenseOrder));
    Eigen::EigenSolver<Matrix> solver(c, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_eigenvalues: QR iteration did not converge");
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<size_t>(c.rows()));
    for (Eigen::Index i = 0; i < c.rows(); ++i) out.push_back(solver.eigenvalues()(i));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return out;
}

RhoR rho_r_general(const Matrix& c) {
    require_square(c, "rho_r_general");
    require_finite(c, "rho_r_general");
    if (c.rows() > kMaxDenseOrder)
        throw std::invalid_argument("rho_r_general: order exceeds the supported maximum");
    Eigen::EigenSolver<Matrix> solver(c, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("rho_r_general: QR iteration did not converge");

    const double norm1 = c.size() ? c.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
    const double imag_tol = 1e-9 * (1.0 + norm1);

    RhoR res;
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        const auto ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > imag_tol) continue;
        if (!res.value || ev.real() > *res.value) {
            res.value = ev.real();
            best = i;
        }
    }
    if (best >= 0) {
        Vector v = solver.eigenvectors().col(best).real();
        double s = v.cwiseAbs().sum();
        if (s > 0.0) {
            v /= s;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (v(i) != 0.0) {
                    if (v(i) < 0.0) v = -v;
                    break;
                }
            }
        }
        res.eigenvector = v;
    }
    return res;
}

RhoR rho_r_rooted(const Matrix& cp, double tol, long max_iter) {
    RootednessResult rr = is_rooted_matrix(cp);
    if (!rr.rooted())
        throw std::invalid_argument("rho_r_rooted: matrix is not rooted (" +
                                    std::to_string(rr.violations.size()) +
                                    " condition violations)");
    const RootedCertificate& cert = *rr.certificate;
    Matrix transform = cert.transformed;
    // Exact inputs can leave -1e-16-scale dust in the transform; it is within
    // the certificate tolerance and must not trip the nonnegativity check.
    for (Eigen::Index i = 0; i < transform.rows(); ++i)
        for (Eigen::Index j = 0; j < transform.cols(); ++j)
            if (transform(i, j) < 0.0) transform(i, j) = 0.0;

    SpectralResult sr = spectral_radius_nonneg(transform, tol, max_iter);

    const Eigen::Index n = cp.rows();
    Vector rooted_vec(n);
    if (n == 1) {
        rooted_vec(0) = 1.0;
    } else {
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            rooted_vec(i) = sr.eigenvector(i) + sr.eigenvector(n - 1);
        rooted_vec(n - 1) = sr.eigenvector(n - 1);
        double s = rooted_vec.sum();
        if (s > 0.0) rooted_vec /= s;
    }

    RhoR res;
    res.value = sr.value - cert.d;
    res.eigenvector = rooted_vec;
    return res;
}

TransposeQuotientReduction reduce_by_transpose_quotient(const Matrix& cp, const Partition& p) {
    RhoR full = rho_r_rooted(cp);  // also validates rootedness

    p.validate();
    if (cp.rows() != p.n)
        throw std::invalid_argument("reduce_by_transpose_quotient: partition size mismatch");
    const std::vector<int>& last = p.blocks.back();
    if (last.size() != 1 || last[0] != p.n - 1)
        throw std::invalid_argument(
            "reduce_by_transpose_quotient: last block must be the singleton {n}");

    Matrix ct = cp.transpose();
    EquitabilityReport eq = is_equitable(ct, p);
    if (!eq.equitable)
        throw std::invalid_argument(
            "reduce_by_transpose_quotient: partition is not equitable for the transpose (" +
            std::to_string(eq.violations.size()) + " violations)");

    TransposeQuotientReduction out;
    out.quotient = eq.quotient;
    out.rho = rho_r_general(out.quotient);
    if (!out.rho.value)
        throw std::logic_error("reduce_by_transpose_quotient: quotient lost the real eigenvalue");
    if (std::abs(*out.rho.value - *full.value) > 1e-8)
        throw std::logic_error("reduce_by_transpose_quotient: quotient value " +
                               format_double(*out.rho.value) + " disagrees with " +
                               format_double(*full.value));
    return out;
}

}  // namespace rootbound
