#pragma once

#include "rootbound/matrix.hpp"
#include "rootbound/partition.hpp"
#include "rootbound/rooted.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rootbound {

enum class BoundDirection { upper, lower };
enum class EqualityDiagnosis { equality, strict, undetermined };

// One failed block condition. block_col == 0 flags the total row-sum
// condition for that block row; otherwise value is the offending per-row
// block sum and limit the m entry it must respect. 1-based.
struct HypothesisViolation {
    int block_row;
    int block_col;
    double value;
    double limit;
};

struct HypothesisReport {
    bool ok = false;
    std::vector<HypothesisViolation> violations;
};

// Upper form: max_{i in pi_a} sum_{j in pi_b} c(i,j) <= m(a,b) for b < l, and
// max_{i in pi_a} r_i <= sum_c m(a,c).
HypothesisReport check_upper_hypotheses(const Matrix& c, const Partition& p, const Matrix& m);

// Lower form uses per-row minima: min_{i in pi_a} sum_{j in pi_b} c(i,j) >=
// m(a,b) and min_{i in pi_a} r_i >= sum_c m(a,c). Every row of a block must
// dominate m for the row-wise decrease construction to exist, so the minimum
// is the sound reading.
HypothesisReport check_lower_hypotheses(const Matrix& c, const Partition& p, const Matrix& m);

struct BoundReport {
    BoundDirection direction = BoundDirection::upper;
    std::optional<double> bound;  // absent when not established
    Matrix m_used;
    bool m_rooted = false;
    std::vector<RootedViolation> m_violations;
    HypothesisReport hypotheses;
    EqualityDiagnosis equality = EqualityDiagnosis::undetermined;
    std::string equality_detail;
    Vector eigenvector_u;  // rooted eigenvector of m when established
    // Eigenvector-free characterization, evaluated when the bottom row of m
    // (first l-1 entries) is positive and m's row-sum vector is strictly
    // rooted: equality holds iff p is equitable for c with quotient m.
    bool equitable_form_applicable = false;
    std::optional<bool> equitable_form_equality;

    bool established() const { return bound.has_value(); }
};

// rho(C) <= rho_r(M) whenever M is rooted and the upper hypotheses hold.
// Equality is diagnosed on irreducible C through the rooted eigenvector u of
// M: (a) if u_l != 0 every total row sum meets sum_c m(a,c); (b) block sums
// equal m(a,b) wherever u_b > u_l. Reducible C or a multiple eigenvalue of M
// leaves the diagnosis undetermined (the bound itself stays valid).
BoundReport upper_bound(const Matrix& c, const Partition& p, const Matrix& m);

// Dual: rho(C) >= rho_r(M) under the lower (minimum-form) hypotheses.
BoundReport lower_bound(const Matrix& c, const Partition& p, const Matrix& m);

struct CanonicalM {
    Matrix m;
    RootednessResult rootedness;
};

// Tightest upper-hypothesis matrix: m(a,b) = max_{i in pi_a} sum_{j in pi_b}
// c(i,j) for b < l, last column chosen so row a sums to max_{i in pi_a} r_i.
CanonicalM canonical_m(const Matrix& c, const Partition& p);

// Certified eigenvalue comparison for a full (C, C', P, Q, u, v) tuple.
// Checks, for the upper direction,
//   (i)   P C Q <= P C' Q entrywise (>= for the lower direction);
//   (ii)  C'(Qu) = lambda' (Qu)  with lambda' inferred by least squares;
//   (iii) (v^T P) C = lambda (v^T P), lambda inferred likewise;
//   (iv)  v^T P Q u > 0.
// If any check fails the certificate is invalid and no ordering is claimed.
// Otherwise lambda <= lambda' (resp. >=), with equality exactly when
// (PC'Q)(i,j) == (PCQ)(i,j) on the index set {(i,j): v_i != 0, u_j != 0}.
struct ComparisonReport {
    bool valid = false;
    std::vector<std::string> failures;
    BoundDirection direction = BoundDirection::upper;
    double lambda = 0.0;
    double lambda_prime = 0.0;
    bool equality = false;
    std::vector<std::pair<int, int>> equality_set;         // 1-based
    std::vector<std::pair<int, int>> equality_mismatches;  // subset of the set
};

ComparisonReport comparison_certificate(const Matrix& c, const Matrix& cp, const Matrix& pmat,
                                        const Matrix& q, const Vector& u, const Vector& v,
                                        BoundDirection direction);

// Parameters of the structured rooted family: diagonal d and off-diagonal f1
// on the leading block, bottom row f2, prescribed row sums r.
struct MnParams {
    int n = 2;
    double d = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    Vector r;
    void validate() const;
};

Matrix mn_matrix(const MnParams& params);

// Closed form for the largest real eigenvalue of mn_matrix(params):
//   (r_n + d - f2 + (n-2)(f1-f2))/2
//     + sqrt((r_n - d + f2 - (n-2)(f1-f2))^2 + 4 f2 sum_i (r_i - r_n)) / 2.
double mn_rho_closed_form(const MnParams& params);

struct DuanZhouReport {
    double bound = 0.0;
    int ell = 1;
    std::vector<int> permutation;  // 1-based; sorts row sums descending
    bool equality_known = false;   // false when c is reducible
    bool equality = false;
    std::string detail;
};

// Duan-Zhou row-sum bound at level ell, with d = max diagonal entry and
// f = max off-diagonal entry. Row sums are sorted descending internally.
DuanZhouReport duan_zhou_bound(const Matrix& c, int ell);

// Sharper variant with the maxima restricted to the first ell-1 (sorted)
// columns: f1 over all rows, f2 over rows ell..n, d over the leading
// diagonal. Coincides with duan_zhou_bound when the restricted maxima equal
// the global ones.
double refined_duan_zhou(const Matrix& c, int ell);

struct EntrySumReport {
    double bound = 0.0;
    double d = 0.0;
    double f = 0.0;
    double m = 0.0;
    bool equality = false;
    std::optional<int> k;  // block order when the equality structure is found
};

// (d - f + sqrt((d-f)^2 + 4 m f)) / 2 for entry sum m; equality exactly when
// some simultaneous permutation exhibits (f J_k + (d-f) I_k) + zero padding.
EntrySumReport entrysum_bound(const Matrix& c);

// (-1 + sqrt(1 + 8e)) / 2; integer exactly when e = k(k-1)/2.
double stanley_bound(long e);

}  // namespace rootbound
