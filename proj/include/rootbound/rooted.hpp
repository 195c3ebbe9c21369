#pragma once

#include "rootbound/matrix.hpp"

#include <optional>
#include <vector>

namespace rootbound {

// Identity with an all-ones last column, and its inverse. Conjugating by Q
// turns questions about rooted columns/row sums into nonnegativity.
Matrix q_matrix(int n);
Matrix q_matrix_inverse(int n);

// A vector v is rooted when v(i) >= v(n-1) >= 0 for every i < n-1, and
// strictly rooted when all of those inequalities are strict.
bool is_rooted_vector(const Vector& v);
bool is_strictly_rooted_vector(const Vector& v);

// Q^{-1} * cp * Q, computed entrywise: interior (i,j) = cp(i,j) - cp(n-1,j),
// last column holds the row-sum differences r(i) - r(n-1), the bottom row is
// kept, and the corner is r(n-1). Requires n >= 2.
Matrix q_transform(const Matrix& cp);

// Witness that cp is rooted: for the shift d, every column and the row-sum
// vector of cp + d*I are rooted, equivalently Q^{-1}(cp + d*I)Q >= 0.
struct RootedCertificate {
    double d = 0.0;
    Matrix transformed;
};

// One failed shift-independent requirement:
//   'a'  bottom-row entry cp(n,j) < 0                  (col = j, lhs = entry)
//   'b'  cp(i,j) < cp(n,j) for i != j, i,j <= n-1      (lhs/rhs = the two entries)
//   'c'  row sum r(i) < r(n)                           (col = 0)
// Indices are 1-based.
struct RootedViolation {
    char condition;
    int row;
    int col;
    double lhs;
    double rhs;
};

struct RootednessResult {
    std::optional<RootedCertificate> certificate;
    std::vector<RootedViolation> violations;
    bool rooted() const { return certificate.has_value(); }
};

// Decides rootedness in O(n^2). Only the diagonal comparisons and the sign of
// r(n) + d depend on d, so feasibility reduces to conditions (a)-(c) above;
// when they hold the returned witness is
//   d = max(0, -r(n), max_j (cp(n,j) - cp(j,j))).
RootednessResult is_rooted_matrix(const Matrix& cp);

}  // namespace rootbound
