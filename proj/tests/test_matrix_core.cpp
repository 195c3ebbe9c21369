#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rootbound/matrix.hpp"
#include "rootbound/partition.hpp"
#include "rootbound/spectral.hpp"
#include "support.hpp"

#include <sstream>

using namespace rootbound;
using testsupport::Rng;

namespace {

Matrix mat(int rows, int cols, std::initializer_list<double> vals) {
    Matrix m(rows, cols);
    int k = 0;
    for (double v : vals) m(k / cols, k % cols) = v, ++k;
    return m;
}

// 7x7 worked example used across the suites.
Matrix c7() {
    return mat(7, 7,
               {2, 1, 3, 3, 3, 12, 0,
                4, 2, 1, 4, 2, 6, 4,
                2, 3, 1, 4, 1, 8, 3,
                3, 5, 3, 1, 1, 3, 4,
                5, 6, 1, 1, 0, 3, 3,
                0, 2, 1, 2, 2, 6, 0,
                2, 2, 0, 2, 1, 1, 4});
}

Matrix c7_equitable() {
    return mat(7, 7,
               {2, 2, 3, 3, 3, 12, -1,
                4, 2, 1, 4, 2, 6, 5,
                2, 3, 2, 4, 2, 8, 3,
                4, 5, 3, 1, 1, 3, 3,
                5, 6, 1, 1, 1, 3, 3,
                1, 2, 1, 2, 2, 6, -1,
                2, 2, 0, 2, 2, 1, 4});
}

Matrix c7_star() {
    return mat(7, 7,
               {2, 2, 3, 3, 3, 12, 0,
                4, 2, 1, 4, 2, 6, 6,
                2, 3, 2, 4, 2, 8, 4,
                4, 5, 3, 1, 1, 3, 4,
                5, 6, 1, 1, 1, 3, 4,
                1, 2, 1, 2, 2, 6, 0,
                2, 2, 0, 2, 2, 2, 4});
}

Partition pi7() { return Partition::from_blocks_1based(7, {{1, 2, 3}, {4, 5}, {6, 7}}); }

}  // namespace

TEST_CASE("characteristic matrix is the block indicator") {
    Partition p = Partition::from_blocks_1based(3, {{1, 2}, {3}});
    CHECK(characteristic_matrix(p) == mat(3, 2, {1, 0, 1, 0, 0, 1}));

    Partition id3 = Partition::identity(3);
    CHECK(characteristic_matrix(id3) == Matrix::Identity(3, 3));

    Matrix s = characteristic_matrix(pi7());
    CHECK(s.rows() == 7);
    CHECK(s.cols() == 3);
    Vector colsums = s.colwise().sum();
    CHECK(colsums(0) == 3);
    CHECK(colsums(1) == 2);
    CHECK(colsums(2) == 2);
    for (int i = 0; i < 7; ++i) CHECK(s.row(i).sum() == 1);
}

TEST_CASE("partition validation rejects malformed block systems") {
    CHECK_THROWS_AS(Partition::from_blocks_1based(3, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks_1based(3, {{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks_1based(3, {{1, 2, 3}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks_1based(3, {{1, 2, 4}}), std::invalid_argument);
}

TEST_CASE("quotient matrix averages block row sums") {
    Partition p = Partition::from_blocks_1based(4, {{1, 2}, {3, 4}});
    CHECK(quotient_matrix(Matrix::Ones(4, 4), p) == mat(2, 2, {2, 2, 2, 2}));

    Matrix q = quotient_matrix(c7_star(), pi7());
    CHECK((q - mat(3, 3, {7, 6, 12, 12, 2, 7, 4, 4, 6})).cwiseAbs().maxCoeff() < 1e-12);

    Rng rng7(7);
    Matrix c = testsupport::random_nonneg(rng7, 5);
    CHECK((quotient_matrix(c, Partition::identity(5)) - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quotient matrix equals (S^T S)^{-1} S^T C S") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Matrix c = testsupport::random_nonneg(rng, n, 4.0);
        Partition p = testsupport::random_partition(rng, n);
        Matrix s = characteristic_matrix(p);
        Matrix sts = s.transpose() * s;
        Matrix expect = sts.inverse() * s.transpose() * c * s;
        CHECK((quotient_matrix(c, p) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("equitability of the 7x7 example") {
    Partition p = pi7();

    EquitabilityReport eq = is_equitable(c7_equitable(), p);
    CHECK(eq.equitable);
    CHECK((eq.quotient - mat(3, 3, {7, 6, 11, 12, 2, 6, 4, 4, 5})).cwiseAbs().maxCoeff() < 1e-12);

    EquitabilityReport neq = is_equitable(c7(), p);
    CHECK_FALSE(neq.equitable);
    bool row1_flagged = false;
    for (const auto& v : neq.violations)
        if (v.row == 1) row1_flagged = true;
    CHECK(row1_flagged);

    Rng rng3(3);
    CHECK(is_equitable(Matrix::Ones(6, 6), testsupport::random_partition(rng3, 6)).equitable);
}

TEST_CASE("identity partition is equitable with quotient equal to the matrix") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        Matrix c = testsupport::random_nonneg(rng, n, 2.0);
        Partition id = Partition::identity(n);
        EquitabilityReport eq = is_equitable(c, id, 0.0);
        CHECK(eq.equitable);
        CHECK((eq.quotient - c).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("quotient vectors and vector equitability") {
    Partition p = Partition::from_blocks_1based(4, {{1, 2}, {3, 4}});
    Vector u(4);
    u << 1, 1, 2, 2;
    Vector q = quotient_vector(u, p);
    CHECK(q(0) == 1.0);
    CHECK(q(1) == 2.0);
    CHECK(is_equitable_vector(u, p, 1e-12));

    Vector v(4);
    v << 1, 3, 2, 2;
    Vector qv = quotient_vector(v, p);
    CHECK(qv(0) == 2.0);
    CHECK(qv(1) == 2.0);
    CHECK_FALSE(is_equitable_vector(v, p, 1e-12));

    // u = S w is always equitable with quotient w
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        Partition pr = testsupport::random_partition(rng, n);
        Vector w(pr.size());
        for (int a = 0; a < pr.size(); ++a) w(a) = static_cast<double>(rng() % 9);
        Vector su = characteristic_matrix(pr) * w;
        CHECK(is_equitable_vector(su, pr, 1e-12));
        CHECK((quotient_vector(su, pr) - w).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("row sums") {
    Vector r = row_sums(c7());
    Vector expect(7);
    expect << 24, 23, 22, 20, 19, 13, 12;
    CHECK((r - expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK(row_sums(Matrix::Ones(3, 3)).isApproxToConstant(3.0));
    CHECK(row_sums(Matrix::Zero(2, 2)).isApproxToConstant(0.0));
}

TEST_CASE("equitable partitions multiply: quotient of product is product of quotients") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Partition p = testsupport::random_partition(rng, n);
        Matrix c1 = testsupport::random_equitable(rng, p);
        Matrix c2 = testsupport::random_equitable(rng, p);
        REQUIRE(is_equitable(c1, p, 1e-9).equitable);
        REQUIRE(is_equitable(c2, p, 1e-9).equitable);

        Matrix prod = c1 * c2;
        EquitabilityReport eq = is_equitable(prod, p, 1e-8 * (1.0 + max_abs(prod)));
        CHECK(eq.equitable);
        Matrix lhs = quotient_matrix(prod, p);
        Matrix rhs = quotient_matrix(c1, p) * quotient_matrix(c2, p);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("equitable partitions preserve the spectral radius") {
    Rng rng(102);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Partition p = testsupport::random_partition(rng, n);
        Matrix c = testsupport::random_equitable(rng, p);
        REQUIRE(is_equitable(c, p, 1e-9).equitable);
        double full = spectral_radius_nonneg(c).value;
        double reduced = spectral_radius_nonneg(quotient_matrix(c, p)).value;
        CHECK(std::abs(full - reduced) <= 1e-8);
    }
}

TEST_CASE("matrix text format round-trips") {
    Matrix c = c7() / 7.0;
    std::istringstream in(format_matrix(c));
    Matrix back = parse_matrix(in);
    CHECK(back.rows() == c.rows());
    CHECK((back - c).cwiseAbs().maxCoeff() == 0.0);

    std::istringstream bad("2 2\n1 2 3");
    CHECK_THROWS_AS(parse_matrix(bad), std::invalid_argument);
    std::istringstream bad_dims("0 2\n");
    CHECK_THROWS_AS(parse_matrix(bad_dims), std::invalid_argument);
}

TEST_CASE("partition JSON parses 1-based blocks") {
    Partition p = parse_partition_json(R"({"n": 7, "blocks": [[1,2,3],[4,5],[6,7]]})");
    CHECK(p.n == 7);
    CHECK(p.size() == 3);
    CHECK(p.blocks[0] == std::vector<int>{0, 1, 2});
    CHECK(p.blocks[2] == std::vector<int>{5, 6});
    CHECK_THROWS_AS(parse_partition_json("{\"n\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition_json("not json"), std::invalid_argument);
}

TEST_CASE("strong connectivity of the nonzero pattern") {
    CHECK(pattern_strongly_connected(c7()));
    Matrix upper = mat(2, 2, {1, 1, 0, 1});
    CHECK_FALSE(pattern_strongly_connected(upper));
    CHECK(pattern_strongly_connected(Matrix::Zero(1, 1)));
    CHECK_FALSE(pattern_strongly_connected(Matrix::Zero(2, 2)));
}
