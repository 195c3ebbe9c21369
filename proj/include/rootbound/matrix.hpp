#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace rootbound {

// Dense real carrier for every matrix in the library. Entries must stay
// finite; the IO and validation helpers below enforce that at the edges.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Text format: a "n_rows n_cols" header line followed by the entries in
// row-major order, whitespace separated. format_matrix prints with 17
// significant digits so a printed matrix re-parses bit-identically.
Matrix parse_matrix(std::istream& in);
Matrix parse_matrix_file(const std::string& path);
std::string format_matrix(const Matrix& m);
std::string format_double(double x);

Vector row_sums(const Matrix& c);

bool all_finite(const Matrix& m);
void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);
void require_nonnegative(const Matrix& m, const char* what);

double max_abs(const Matrix& m);

// Strong connectivity of the directed graph on the exact nonzero pattern
// (an edge i->j iff c(i,j) != 0).
bool pattern_strongly_connected(const Matrix& c);

}  // namespace rootbound
