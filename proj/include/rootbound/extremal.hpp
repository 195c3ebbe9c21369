#pragma once

#include "rootbound/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rootbound {

// Parameters of the extremal (0,1)-matrix families. Without zero trace the
// ones count decomposes as e = c^2 + t with 2 <= t <= 2c; with zero trace as
// e = c(c-1) + t with 2 <= t <= 2c-1. Always n >= c+1.
struct ExtremalParams {
    int n = 0;
    int e = 0;
    int c = 0;
    int t = 0;
    bool zero_trace = false;

    void validate() const;
    // Derives (c, t) from the ones count; throws when e admits no valid split.
    static ExtremalParams from_edges(int n, int e, bool zero_trace);
};

// Leading all-ones (or hollow all-ones) block of order c, floor(t/2) extra
// ones in the appended column, ceil(t/2) in the appended row, zero padding.
Matrix construct_a0(const ExtremalParams& params);

// The exceptional t = 2c-3 maximizer: an order-(c+1) block with an all-ones
// leading (c-1)-corner bordered by two full rows/columns, zero padding.
Matrix construct_a0_prime(int c, int n);

// Extremal forms for t in {0, 1}. For zero trace with e = 3 the 3-cycle is
// co-extremal and is included.
std::vector<Matrix> small_t_extremal(const ExtremalParams& params);

// Membership in the staircase class: a(i,j)=1 forces a(h,k)=1 for all h <= i,
// k <= j (skipping h == k in the zero-trace variant).
bool is_staircase(const Matrix& a, bool zero_trace);

// Number of staircase matrices of order n with exactly e ones.
long staircase_count(int n, int e, bool zero_trace);

// Visits every staircase matrix exactly once, in descending lexicographic
// order of the row-sum sequence. The visitor returns false to stop early.
// Returns the number of matrices visited.
long enumerate_staircase(int n, int e, bool zero_trace,
                         const std::function<bool(const Matrix&)>& visit);

struct BlockStatistics {
    bool degenerate = false;  // r(c+1) == 0: the corner statistics collapse
    int s = 0;                // r(c+1)
    double a = 0.0;           // sum_{i<=s} (r_i - c)        (zero trace: - c + 1)
    double b = 0.0;           // sum_{s<i<=c} (r_i - c)      (zero trace: - c + 1)
    int r = 0;                // zeros in the leading c-block (off-diagonal ones
                              // only for zero trace)
    int t = 0;                // e - c^2, resp. e - c(c-1)
};

// Corner statistics of a staircase matrix; the identity
// a + b + s + sum_{i>c+1} r_i == t is checked internally.
BlockStatistics block_statistics(const Matrix& a, int c, bool zero_trace);

// Real polynomial in ascending coefficient order with companion-matrix root
// extraction.
struct Polynomial {
    std::vector<double> coeffs;

    double eval(double x) const;
    std::optional<double> largest_real_root() const;
};

struct ConjecturePolynomials {
    Polynomial f;  // cubic in the corner statistics (c, s, a, b)
    Polynomial g;  // f specialized to the extremal statistics of A0
    Polynomial h;  // quartic of the exceptional odd-t candidate
};

ConjecturePolynomials conjecture_polynomials(int c, int t, int s, double a, double b,
                                             bool zero_trace);

// The 2x2 (s == c) or 3x3 quotient carrying the corner statistics.
Matrix quotient_matrices_corner(int c, int s, double a, double b, bool zero_trace);

// Representative order-(c+1) rooted matrix whose transpose-quotient is
// quotient_matrices_corner(c, s, a, b, zero_trace); the statistics a and b
// are spread evenly over the first s rows resp. the remaining c - s rows.
Matrix corner_bound_matrix(int c, int s, double a, double b, bool zero_trace);

// Transpose normalization: of a staircase matrix and its transpose, prefers
// the representative with the lexicographically larger row-sum vector.
Matrix canonical_staircase(const Matrix& a);

struct SearchReport {
    long candidates_examined = 0;
    Matrix maximizer;  // canonical form
    double max_rho = 0.0;
    std::vector<Matrix> co_maximizers;  // canonical, deduplicated, incl. maximizer
    bool matches_a0 = false;
    bool matches_a0_prime = false;
    std::optional<double> runner_up_rho;
    std::optional<Matrix> runner_up;  // canonical representative of the second level
    bool runner_up_matches_a0 = false;
};

// Exhaustive sweep of the staircase class scoring every member's spectral
// radius. Values within 1e-10 of the maximum count as co-maximizers rather
// than being ordered arbitrarily. Throws when the class size exceeds budget.
SearchReport verify_conjecture(const ExtremalParams& params, long budget = 1'000'000);

// Oracle for the class reduction at tiny orders: sweeps every (0,1)-matrix
// of order n (zero-trace variant skips diagonals) with exactly e ones and
// returns the maximum spectral radius found. Requires n <= 3.
double full_search_max_rho(int n, int e, bool zero_trace);

}  // namespace rootbound
