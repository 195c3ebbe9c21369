#pragma once

#include "rootbound/matrix.hpp"

#include <string>
#include <vector>

namespace rootbound {

// Ordered set partition of {0,...,n-1}. Block order is significant (the last
// block plays a distinguished role downstream) and is never re-sorted.
// Indices are 0-based internally; all file formats and reports are 1-based.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    int size() const { return static_cast<int>(blocks.size()); }
    void validate() const;

    // Accepts 1-based block contents, e.g. from the JSON file format
    // {"n": 7, "blocks": [[1,2,3],[4,5],[6,7]]}.
    static Partition from_blocks_1based(int n, const std::vector<std::vector<int>>& blocks);
    static Partition identity(int n);
};

Partition parse_partition_json(const std::string& text);
Partition parse_partition_file(const std::string& path);

// n x l (0,1)-matrix with s(j,b) = 1 iff j lies in block b; one 1 per row.
Matrix characteristic_matrix(const Partition& p);

// l x l matrix of block-averaged row sums of the submatrices C[pi_a|pi_b].
Matrix quotient_matrix(const Matrix& c, const Partition& p);

struct EquitabilityViolation {
    int row;    // 1-based row index
    int block;  // 1-based block index
    double value;
    double expected;
};

struct EquitabilityReport {
    bool equitable = false;
    Matrix quotient;
    std::vector<EquitabilityViolation> violations;
};

double default_equitable_tol(const Matrix& c);

// Checks S * quotient == C * S entrywise within tol (block row sums constant).
EquitabilityReport is_equitable(const Matrix& c, const Partition& p, double tol);
EquitabilityReport is_equitable(const Matrix& c, const Partition& p);

Vector quotient_vector(const Vector& u, const Partition& p);
bool is_equitable_vector(const Vector& u, const Partition& p, double tol);

}  // namespace rootbound
