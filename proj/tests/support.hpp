#pragma once

#include "rootbound/matrix.hpp"
#include "rootbound/partition.hpp"
#include "rootbound/rooted.hpp"

#include <functional>
#include <random>

namespace testsupport {

using rootbound::Matrix;
using rootbound::Partition;
using rootbound::Vector;

using Rng = std::mt19937_64;

inline Matrix random_nonneg(Rng& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(0.0, scale);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

inline Matrix random_nonneg_int(Rng& rng, int n, int max_entry) {
    std::uniform_int_distribution<int> dist(0, max_entry);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

inline Partition random_partition(Rng& rng, int n) {
    std::uniform_int_distribution<int> pick_l(1, n);
    int l = pick_l(rng);
    std::vector<std::vector<int>> blocks(static_cast<size_t>(l));
    for (int b = 0; b < l; ++b) blocks[static_cast<size_t>(b)].push_back(b);  // keep all nonempty
    std::uniform_int_distribution<int> pick_b(0, l - 1);
    for (int j = l; j < n; ++j) blocks[static_cast<size_t>(pick_b(rng))].push_back(j);
    Partition p;
    p.n = n;
    p.blocks = std::move(blocks);
    p.validate();
    return p;
}

// Matrix with the given partition equitable by construction: every row of a
// block has block sums equal to a random nonnegative quotient entry.
inline Matrix random_equitable(Rng& rng, const Partition& p, double scale = 3.0) {
    std::uniform_real_distribution<double> qdist(0.0, scale);
    std::uniform_real_distribution<double> wdist(0.05, 1.0);
    Matrix c = Matrix::Zero(p.n, p.n);
    for (size_t a = 0; a < p.blocks.size(); ++a) {
        for (size_t b = 0; b < p.blocks.size(); ++b) {
            double target = qdist(rng);
            for (int i : p.blocks[a]) {
                double total = 0.0;
                std::vector<double> w(p.blocks[b].size());
                for (double& x : w) total += (x = wdist(rng));
                size_t k = 0;
                for (int j : p.blocks[b]) c(i, j) = target * w[k++] / total;
            }
        }
    }
    return c;
}

// Random rooted matrix: conjugating a nonnegative matrix back through Q keeps
// the first n-1 columns and the row-sum vector rooted with shift 0.
inline Matrix random_rooted(Rng& rng, int n, double scale = 2.0) {
    Matrix nonneg = random_nonneg(rng, n, scale);
    return rootbound::q_matrix(n) * nonneg * rootbound::q_matrix_inverse(n);
}

// Bisection on [lo, hi]; the bracket must change sign. Independent root
// oracle for frozen polynomial values.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace testsupport
