#include "rootbound/extremal.hpp"

#include "rootbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rootbound {

namespace {

constexpr double kRhoTieTol = 1e-10;

Matrix zero_padded(const Matrix& block, int n) {
    Matrix a = Matrix::Zero(n, n);
    a.topLeftCorner(block.rows(), block.cols()) = block;
    return a;
}

long ones_count(const Matrix& a) { return static_cast<long>(std::lround(a.sum())); }

}  // namespace

void ExtremalParams::validate() const {
    if (c < 1) throw std::invalid_argument("ExtremalParams: c must be >= 1");
    const int t_max = zero_trace ? 2 * c - 1 : 2 * c;
    if (t < 0 || t > t_max)
        throw std::invalid_argument("ExtremalParams: t=" + std::to_string(t) +
                                    " out of range 0.." + std::to_string(t_max));
    const int e_expect = zero_trace ? c * (c - 1) + t : c * c + t;
    if (e != e_expect)
        throw std::invalid_argument("ExtremalParams: e=" + std::to_string(e) +
                                    " does not match c,t (expected " + std::to_string(e_expect) +
                                    ")");
    const int n_min = t >= 1 ? c + 1 : c;
    if (n < n_min)
        throw std::invalid_argument("ExtremalParams: n must be >= " + std::to_string(n_min));
}

ExtremalParams ExtremalParams::from_edges(int n, int e, bool zero_trace) {
    for (int c = 1; static_cast<long>(c) * c <= 2L * e + 4; ++c) {
        int base = zero_trace ? c * (c - 1) : c * c;
        int t = e - base;
        int t_max = zero_trace ? 2 * c - 1 : 2 * c;
        if (t >= 2 && t <= t_max) {
            ExtremalParams p{n, e, c, t, zero_trace};
            p.validate();
            return p;
        }
    }
    throw std::invalid_argument("no split e = " +
                                std::string(zero_trace ? "c(c-1)+t" : "c^2+t") + " with 2 <= t <= " +
                                std::string(zero_trace ? "2c-1" : "2c") + " exists for e=" +
                                std::to_string(e));
}

Matrix construct_a0(const ExtremalParams& params) {
    params.validate();
    if (params.t < 2)
        throw std::invalid_argument("construct_a0: requires t >= 2 (use small_t_extremal)");
    const int c = params.c;
    Matrix block = Matrix::Zero(c + 1, c + 1);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (!(params.zero_trace && i == j)) block(i, j) = 1.0;
    for (int i = 0; i < params.t / 2; ++i) block(i, c) = 1.0;
    for (int j = 0; j < (params.t + 1) / 2; ++j) block(c, j) = 1.0;
    Matrix a = zero_padded(block, params.n);
    if (ones_count(a) != params.e) throw std::logic_error("construct_a0: ones count mismatch");
    return a;
}

Matrix construct_a0_prime(int c, int n) {
    if (c < 3) throw std::invalid_argument("construct_a0_prime: c must be >= 3");
    if (n < c + 1) throw std::invalid_argument("construct_a0_prime: n must be >= c+1");
    Matrix block = Matrix::Ones(c + 1, c + 1);
    block.bottomRightCorner(2, 2).setZero();
    return zero_padded(block, n);
}

std::vector<Matrix> small_t_extremal(const ExtremalParams& params) {
    params.validate();
    if (params.t != 0 && params.t != 1)
        throw std::invalid_argument("small_t_extremal: t must be 0 or 1");
    const int c = params.c;
    Matrix core = Matrix::Ones(c, c);
    if (params.zero_trace) core -= Matrix::Identity(c, c);
    Matrix a = zero_padded(core, params.n);
    std::vector<Matrix> out;
    if (params.t == 1) a(0, c) = 1.0;
    out.push_back(a);
    if (params.zero_trace && params.e == 3) {
        Matrix cyc = Matrix::Zero(3, 3);
        cyc(0, 1) = cyc(1, 2) = cyc(2, 0) = 1.0;
        out.push_back(zero_padded(cyc, params.n));
    }
    for (const Matrix& m : out)
        if (ones_count(m) != params.e) throw std::logic_error("small_t_extremal: ones mismatch");
    return out;
}

bool is_staircase(const Matrix& a, bool zero_trace) {
    require_square(a, "is_staircase");
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = a(i, j);
            if (x != 0.0 && x != 1.0) return false;
            if (zero_trace && i == j && x != 0.0) return false;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (a(i, j) != 1.0) continue;
            for (int h = 0; h <= i; ++h)
                for (int k = 0; k <= j; ++k) {
                    if (zero_trace && h == k) continue;
                    if (a(h, k) != 1.0) return false;
                }
        }
    return true;
}

namespace {

// Staircase rows are column prefixes (skipping the diagonal in the zero-trace
// class), so a matrix is encoded by the per-row reach m_i: row i holds ones
// exactly on [1..m_i] \ {i}. Canonical encoding avoids m_i == i, which would
// duplicate m_i == i-1.
struct StaircaseEnum {
    int n;
    long e;
    bool zero_trace;
    long cap;                  // stop once this many matrices were produced
    const std::function<bool(const Matrix&)>* visit;  // may be null (count only)
    long produced = 0;
    bool stopped = false;
    std::vector<int> reach;    // m_i per row, canonical
    std::vector<uint32_t> row_mask;

    int row_len(int i /*0-based*/, int m) const {
        if (!zero_trace) return m;
        return m - (i + 1 <= m ? 1 : 0);
    }

    bool admissible(int i /*0-based*/, int m) const {
        if (zero_trace && m == i + 1) return false;  // canonical encoding
        uint32_t prefix = m >= 32 ? ~0u : ((1u << m) - 1u);
        for (int h = 0; h < i; ++h) {
            uint32_t needed = prefix & ~(1u << h);
            if (needed & ~row_mask[static_cast<size_t>(h)]) return false;
        }
        if (!zero_trace && i > 0 && m > reach[static_cast<size_t>(i - 1)]) return false;
        return true;
    }

    void emit() {
        ++produced;
        if (produced > cap) {
            stopped = true;
            return;
        }
        if (!visit) return;
        Matrix a = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < reach[static_cast<size_t>(i)]; ++j)
                if (!(zero_trace && i == j)) a(i, j) = 1.0;
        if (!(*visit)(a)) stopped = true;
    }

    void rec(int i, long used, int min_len) {
        if (stopped) return;
        if (i == n) {
            if (used == e) emit();
            return;
        }
        for (int m = n; m >= 0; --m) {
            if (zero_trace && m == i + 1) continue;
            int len = row_len(i, m);
            long remaining = e - used - len;
            if (remaining < 0) continue;
            int future_len_cap = std::min(zero_trace ? n - 1 : n,
                                          zero_trace ? std::min(min_len, len) + 1 : len);
            if (remaining > static_cast<long>(n - i - 1) * future_len_cap) continue;
            if (!admissible(i, m)) continue;
            reach[static_cast<size_t>(i)] = m;
            uint32_t prefix = m >= 32 ? ~0u : ((1u << m) - 1u);
            row_mask[static_cast<size_t>(i)] = zero_trace ? (prefix & ~(1u << i)) : prefix;
            rec(i + 1, used + len, std::min(min_len, len));
            if (stopped) return;
        }
    }

    long run() {
        reach.assign(static_cast<size_t>(n), 0);
        row_mask.assign(static_cast<size_t>(n), 0);
        rec(0, 0, n);
        return std::min(produced, cap);
    }
};

long staircase_enumerate_impl(int n, int e, bool zero_trace, long cap,
                              const std::function<bool(const Matrix&)>* visit) {
    if (n < 1 || n > 31) throw std::invalid_argument("staircase: order must be in 1..31");
    const long e_max = zero_trace ? static_cast<long>(n) * (n - 1) : static_cast<long>(n) * n;
    if (e < 0 || e > e_max)
        throw std::invalid_argument("staircase: e=" + std::to_string(e) + " out of range 0.." +
                                    std::to_string(e_max));
    StaircaseEnum en{n, e, zero_trace, cap, visit, 0, false, {}, {}};
    return en.run();
}

}  // namespace

long staircase_count(int n, int e, bool zero_trace) {
    if (n < 1) throw std::invalid_argument("staircase_count: order must be >= 1");
    const long e_max = zero_trace ? static_cast<long>(n) * (n - 1) : static_cast<long>(n) * n;
    if (e < 0 || e > e_max) throw std::invalid_argument("staircase_count: e out of range");
    if (zero_trace)
        return staircase_enumerate_impl(n, e, true, std::numeric_limits<long>::max(), nullptr);

    // Partitions of e inside an n x n box: box(a, b, s) counts partitions of s
    // with at most a parts, each at most b; either there are fewer than a
    // parts, or stripping one unit from each of the a parts shrinks the box.
    const long cap = std::numeric_limits<long>::max() / 4;
    std::vector<std::vector<long>> box(static_cast<size_t>(n) + 1,
                                       std::vector<long>(static_cast<size_t>(e) + 1, 0));
    for (size_t b = 0; b <= static_cast<size_t>(n); ++b) box[b][0] = 1;  // a = 0 layer
    for (int a = 1; a <= n; ++a) {
        std::vector<std::vector<long>> next(static_cast<size_t>(n) + 1,
                                            std::vector<long>(static_cast<size_t>(e) + 1, 0));
        for (int b = 0; b <= n; ++b) {
            next[static_cast<size_t>(b)][0] = 1;
            for (int s = 1; s <= e; ++s) {
                long v = box[static_cast<size_t>(b)][static_cast<size_t>(s)];
                if (b >= 1 && s >= a)
                    v += next[static_cast<size_t>(b - 1)][static_cast<size_t>(s - a)];
                next[static_cast<size_t>(b)][static_cast<size_t>(s)] = std::min(v, cap);
            }
        }
        box = std::move(next);
    }
    return box[static_cast<size_t>(n)][static_cast<size_t>(e)];
}

long enumerate_staircase(int n, int e, bool zero_trace,
                         const std::function<bool(const Matrix&)>& visit) {
    return staircase_enumerate_impl(n, e, zero_trace, std::numeric_limits<long>::max(), &visit);
}

BlockStatistics block_statistics(const Matrix& a, int c, bool zero_trace) {
    if (!is_staircase(a, zero_trace))
        throw std::invalid_argument("block_statistics: input is not a staircase matrix");
    const int n = static_cast<int>(a.rows());
    if (c + 1 > n) throw std::invalid_argument("block_statistics: c+1 must be <= n");
    Vector r = row_sums(a);
    const long e = ones_count(a);
    const double base = zero_trace ? c - 1 : c;

    BlockStatistics st;
    st.t = static_cast<int>(e - (zero_trace ? static_cast<long>(c) * (c - 1)
                                            : static_cast<long>(c) * c));
    st.s = static_cast<int>(std::lround(r(c)));
    // The corner statistics split rows 1..c at position s; they collapse when
    // the (c+1)-th row is empty or reaches past the corner.
    st.degenerate = st.s == 0 || st.s > c;
    for (int i = 0; i < std::min(st.s, n); ++i) st.a += r(i) - base;
    for (int i = st.s; i < c; ++i) st.b += r(i) - base;
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) {
            if (zero_trace && i == j) continue;
            if (a(i, j) == 0.0) ++st.r;
        }

    if (st.s <= c) {
        double tail = 0.0;
        for (int i = c + 1; i < n; ++i) tail += r(i);
        if (std::abs(st.a + st.b + st.s + tail - st.t) > 1e-9)
            throw std::logic_error("block_statistics: corner identity violated");
    }
    return st;
}

double Polynomial::eval(double x) const {
    double y = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) y = y * x + coeffs[i];
    return y;
}

std::optional<double> Polynomial::largest_real_root() const {
    size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
    if (deg <= 1) return std::nullopt;  // constant (or empty) polynomial
    const size_t k = deg - 1;
    Matrix companion = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (size_t i = 1; i < k; ++i) companion(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(i - 1)) = 1.0;
    const double lead = coeffs[k];
    for (size_t i = 0; i < k; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1)) =
            -coeffs[i] / lead;
    RhoR r = rho_r_general(companion);
    if (!r.value) return std::nullopt;
    return *r.value;
}

ConjecturePolynomials conjecture_polynomials(int c, int t, int s, double a, double b,
                                             bool zero_trace) {
    const double fl = std::floor(t / 2.0);
    const double ce = std::ceil(t / 2.0);
    ConjecturePolynomials out;
    if (!zero_trace) {
        out.f.coeffs = {a * (c - s) - s * b, -a, -static_cast<double>(c), 1.0};
        out.g.coeffs = {fl * (c - ce), -fl, -static_cast<double>(c), 1.0};
        out.h.coeffs = {s * (c - 1.0 - s), s * (c - 1.0 - s), 1.0 - c - s,
                        -(c - 1.0), 1.0};
    } else {
        out.f.coeffs = {a * (c - s - 1.0) - s * b, 1.0 - c - a, -(c - 2.0), 1.0};
        out.g.coeffs = {fl * (c - ce - 1.0), 1.0 - c - fl, -(c - 2.0), 1.0};
        out.h.coeffs = {-s * (s - c + 2.0), (c - 2.0) * (s - 1.0) - s * s,
                        4.0 - 2.0 * c - s, -(c - 3.0), 1.0};
    }
    return out;
}

Matrix quotient_matrices_corner(int c, int s, double a, double b, bool zero_trace) {
    if (s < 1 || s > c) throw std::invalid_argument("quotient_matrices_corner: need 1 <= s <= c");
    if (s == c) {
        Matrix m(2, 2);
        m << (zero_trace ? c - 1.0 : c), 1.0, a, 0.0;
        return m;
    }
    Matrix m(3, 3);
    if (!zero_trace)
        m << s, c - s, 1.0, s, c - s, 0.0, a, b, 0.0;
    else
        m << s - 1.0, c - s, 1.0, s, c - s - 1.0, 0.0, a, b, 0.0;
    return m;
}

Matrix corner_bound_matrix(int c, int s, double a, double b, bool zero_trace) {
    if (s < 1 || s > c) throw std::invalid_argument("corner_bound_matrix: need 1 <= s <= c");
    if (s == c && b != 0.0)
        throw std::invalid_argument("corner_bound_matrix: b must vanish when s == c");
    Matrix m = Matrix::Zero(c + 1, c + 1);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (!(zero_trace && i == j)) m(i, j) = 1.0;
    for (int i = 0; i < s; ++i) m(i, c) = a / s;
    for (int i = s; i < c; ++i) m(i, c) = b / (c - s);
    for (int j = 0; j < s; ++j) m(c, j) = 1.0;
    return m;
}

Matrix canonical_staircase(const Matrix& a) {
    require_square(a, "canonical_staircase");
    Matrix at = a.transpose();
    Vector r = row_sums(a);
    Vector rt = row_sums(at);
    for (Eigen::Index i = 0; i < r.size(); ++i)
        if (r(i) != rt(i)) return r(i) > rt(i) ? a : at;
    // Equal row-sum vectors: break the tie on the entries themselves so that
    // a and a^T normalize to the same representative.
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != at(i, j)) return a(i, j) > at(i, j) ? a : at;
    return a;
}

namespace {

bool same_matrix(const Matrix& x, const Matrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x - y).cwiseAbs().maxCoeff() == 0.0;
}

void add_dedup(std::vector<Matrix>& set, const Matrix& m) {
    for (const Matrix& x : set)
        if (same_matrix(x, m)) return;
    set.push_back(m);
}

bool contains_matrix(const std::vector<Matrix>& set, const Matrix& m) {
    for (const Matrix& x : set)
        if (same_matrix(x, m)) return true;
    return false;
}

}  // namespace

SearchReport verify_conjecture(const ExtremalParams& params, long budget) {
    params.validate();
    if (params.t < 2) throw std::invalid_argument("verify_conjecture: requires t >= 2");
    long count = staircase_enumerate_impl(params.n, params.e, params.zero_trace, budget + 1,
                                          nullptr);
    if (count > budget)
        throw std::runtime_error("verify_conjecture: candidate count exceeds budget " +
                                 std::to_string(budget));

    const Matrix a0 = canonical_staircase(construct_a0(params));
    std::optional<Matrix> a0_prime;
    if (!params.zero_trace && params.c >= 3 && params.t == 2 * params.c - 3)
        a0_prime = canonical_staircase(construct_a0_prime(params.c, params.n));

    SearchReport rep;
    double max_rho = -1.0, runner_rho = -1.0;
    std::vector<Matrix> max_set, runner_set;

    enumerate_staircase(params.n, params.e, params.zero_trace, [&](const Matrix& a) {
        ++rep.candidates_examined;
        double rho = spectral_radius_nonneg(a).value;
        if (rho > max_rho + kRhoTieTol) {
            runner_rho = max_rho;
            runner_set = std::move(max_set);
            max_rho = rho;
            max_set.clear();
            max_set.push_back(canonical_staircase(a));
        } else if (rho >= max_rho - kRhoTieTol) {
            max_rho = std::max(max_rho, rho);
            add_dedup(max_set, canonical_staircase(a));
        } else if (rho > runner_rho + kRhoTieTol) {
            runner_rho = rho;
            runner_set.clear();
            runner_set.push_back(canonical_staircase(a));
        } else if (rho >= runner_rho - kRhoTieTol) {
            runner_rho = std::max(runner_rho, rho);
            add_dedup(runner_set, canonical_staircase(a));
        }
        return true;
    });

    if (max_set.empty()) throw std::logic_error("verify_conjecture: empty candidate class");
    rep.max_rho = max_rho;
    rep.maximizer = max_set.front();
    rep.co_maximizers = max_set;
    rep.matches_a0 = max_set.size() == 1 && same_matrix(max_set.front(), a0);
    rep.matches_a0_prime =
        a0_prime && max_set.size() == 1 && same_matrix(max_set.front(), *a0_prime);
    if (!runner_set.empty()) {
        rep.runner_up_rho = runner_rho;
        rep.runner_up = runner_set.front();
        rep.runner_up_matches_a0 = contains_matrix(runner_set, a0);
    }
    return rep;
}

double full_search_max_rho(int n, int e, bool zero_trace) {
    if (n < 1 || n > 3) throw std::invalid_argument("full_search_max_rho: n must be in 1..3");
    const int cells = n * n;
    double best = -1.0;
    for (uint32_t mask = 0; mask < (1u << cells); ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) != e) continue;
        Matrix a = Matrix::Zero(n, n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n; ++j)
                if (mask & (1u << (i * n + j))) {
                    if (zero_trace && i == j) {
                        ok = false;
                        break;
                    }
                    a(i, j) = 1.0;
                }
        if (!ok) continue;
        best = std::max(best, spectral_radius_nonneg(a).value);
    }
    if (best < 0.0) throw std::invalid_argument("full_search_max_rho: no candidate has e ones");
    return best;
}

}  // namespace rootbound
