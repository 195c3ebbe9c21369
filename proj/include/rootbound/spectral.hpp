#pragma once

#include "rootbound/matrix.hpp"
#include "rootbound/partition.hpp"
#include "rootbound/rooted.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace rootbound {

enum class SpectralMethod { power, dense_fallback };

constexpr double kDefaultSpectralTol = 1e-12;
constexpr long kDefaultSpectralMaxIter = 1'000'000;

struct SpectralResult {
    double value = 0.0;
    double cw_lower = 0.0;  // value always lies in [cw_lower, cw_upper]
    double cw_upper = 0.0;
    Vector eigenvector;     // nonnegative, 1-normalized
    long iterations = 0;
    SpectralMethod method = SpectralMethod::power;
};

// Spectral radius of a nonnegative matrix. Iterates on C + I (the shift keeps
// the iterate positive and the dominant root simple in modulus) with a
// deterministic all-ones start; at every step the quotients min_i (Bv)_i/v_i
// and max_i (Bv)_i/v_i bracket rho(B). Stops when the bracket width is at
// most tol. A bracket that fails to shrink by factor 0.999 over 200
// consecutive steps (reducible input) switches to the dense solver.
SpectralResult spectral_radius_nonneg(const Matrix& c,
                                      double tol = kDefaultSpectralTol,
                                      long max_iter = kDefaultSpectralMaxIter);

// Same computation on the transpose; the eigenvector is a left eigenvector.
SpectralResult left_eigenvector_nonneg(const Matrix& c,
                                       double tol = kDefaultSpectralTol,
                                       long max_iter = kDefaultSpectralMaxIter);

// All eigenvalues (order <= 512), sorted by descending real part then
// descending imaginary part. Throws if the QR iteration fails to converge.
std::vector<std::complex<double>> dense_eigenvalues(const Matrix& c);

// Largest real eigenvalue. An absent value encodes "no real eigenvalue"
// (rendered as "infinity" at the CLI); it is never propagated into a bound.
struct RhoR {
    std::optional<double> value;
    std::optional<Vector> eigenvector;
};

// Largest real eigenvalue via the dense solver; eigenvalues whose imaginary
// part is below 1e-9 * (1 + ||C||_1) count as real.
RhoR rho_r_general(const Matrix& c);

// Largest real eigenvalue of a rooted matrix, certified through the
// nonnegative transform: rho(Q^{-1}(C'+dI)Q) - d. The eigenvector is Q*u for
// the Perron vector u of the transform, hence rooted. Throws if cp is not
// rooted. The value is always present.
RhoR rho_r_rooted(const Matrix& cp,
                  double tol = kDefaultSpectralTol,
                  long max_iter = kDefaultSpectralMaxIter);

struct TransposeQuotientReduction {
    Matrix quotient;  // quotient of cp^T under p
    RhoR rho;
};

// Size reduction: for rooted cp and a partition p that is equitable for cp^T
// with last block {n}, the largest real eigenvalue survives passage to the
// quotient of the transpose. Cross-checks the reduced value against
// rho_r_rooted(cp) within 1e-8 and throws on disagreement.
TransposeQuotientReduction reduce_by_transpose_quotient(const Matrix& cp, const Partition& p);

}  // namespace rootbound
