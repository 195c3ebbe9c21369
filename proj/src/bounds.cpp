#include "rootbound/bounds.hpp"

#include "rootbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rootbound {

namespace {

double block_sum(const Matrix& c, const std::vector<int>& block, int i) {
    double s = 0.0;
    for (int j : block) s += c(i, j);
    return s;
}

void require_bound_inputs(const Matrix& c, const Partition& p, const Matrix& m,
                          const char* what) {
    require_square(c, what);
    require_nonnegative(c, what);
    p.validate();
    if (c.rows() != p.n)
        throw std::invalid_argument(std::string(what) + ": matrix order " +
                                    std::to_string(c.rows()) + " does not match partition n=" +
                                    std::to_string(p.n));
    require_square(m, what);
    require_finite(m, what);
    if (m.rows() != p.size())
        throw std::invalid_argument(std::string(what) + ": m order " + std::to_string(m.rows()) +
                                    " does not match the partition block count " +
                                    std::to_string(p.size()));
}

double hypothesis_tol(const Matrix& c, const Matrix& m) {
    return 1e-12 * (1.0 + std::max(max_abs(c), max_abs(m)));
}

HypothesisReport check_hypotheses(const Matrix& c, const Partition& p, const Matrix& m,
                                  BoundDirection dir) {
    const int l = p.size();
    const double tol = hypothesis_tol(c, m);
    Vector r = row_sums(c);
    HypothesisReport rep;
    for (int a = 0; a < l; ++a) {
        const auto& rows = p.blocks[static_cast<size_t>(a)];
        for (int b = 0; b + 1 < l; ++b) {
            const auto& cols = p.blocks[static_cast<size_t>(b)];
            double extreme = dir == BoundDirection::upper
                                 ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity();
            for (int i : rows) {
                double s = block_sum(c, cols, i);
                extreme = dir == BoundDirection::upper ? std::max(extreme, s)
                                                       : std::min(extreme, s);
            }
            bool ok = dir == BoundDirection::upper ? extreme <= m(a, b) + tol
                                                   : extreme >= m(a, b) - tol;
            if (!ok) rep.violations.push_back({a + 1, b + 1, extreme, m(a, b)});
        }
        double extreme_r = dir == BoundDirection::upper
                               ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
        for (int i : rows)
            extreme_r = dir == BoundDirection::upper ? std::max(extreme_r, r(i))
                                                     : std::min(extreme_r, r(i));
        double msum = m.row(a).sum();
        bool ok = dir == BoundDirection::upper ? extreme_r <= msum + tol
                                               : extreme_r >= msum - tol;
        if (!ok) rep.violations.push_back({a + 1, 0, extreme_r, msum});
    }
    rep.ok = rep.violations.empty();
    return rep;
}

bool rho_r_is_simple(const Matrix& m, double rho) {
    auto evs = dense_eigenvalues(m);
    const double tol = 1e-7 * (1.0 + std::abs(rho));
    int hits = 0;
    for (const auto& ev : evs)
        if (std::abs(ev - std::complex<double>(rho, 0.0)) <= tol) ++hits;
    return hits <= 1;
}

BoundReport quotient_bound(const Matrix& c, const Partition& p, const Matrix& m,
                           BoundDirection dir) {
    const char* what = dir == BoundDirection::upper ? "upper_bound" : "lower_bound";
    require_bound_inputs(c, p, m, what);

    BoundReport rep;
    rep.direction = dir;
    rep.m_used = m;

    RootednessResult rr = is_rooted_matrix(m);
    rep.m_rooted = rr.rooted();
    rep.m_violations = rr.violations;
    rep.hypotheses = check_hypotheses(c, p, m, dir);
    if (!rep.m_rooted || !rep.hypotheses.ok) {
        rep.equality_detail = !rep.m_rooted ? "m is not rooted" : "hypotheses violated";
        return rep;
    }

    RhoR rho = rho_r_rooted(m);
    rep.bound = *rho.value;
    rep.eigenvector_u = *rho.eigenvector;

    const int l = p.size();
    const Vector& u = rep.eigenvector_u;

    // Eigenvector-free form: positive bottom row and strictly rooted row sums.
    bool bottom_positive = true;
    for (int j = 0; j + 1 < l; ++j)
        if (!(m(l - 1, j) > 0.0)) bottom_positive = false;
    if (bottom_positive && is_strictly_rooted_vector(row_sums(m)) &&
        pattern_strongly_connected(c)) {
        rep.equitable_form_applicable = true;
        EquitabilityReport eq = is_equitable(c, p);
        double eqtol = 1e-9 * (1.0 + std::max(max_abs(c), max_abs(m)));
        bool quotient_matches = eq.equitable && (eq.quotient - m).cwiseAbs().maxCoeff() <= eqtol;
        rep.equitable_form_equality = quotient_matches;
    }

    if (!pattern_strongly_connected(c)) {
        rep.equality = EqualityDiagnosis::undetermined;
        rep.equality_detail = "c is reducible";
        return rep;
    }
    // The equality characterization is an iff for the specific rooted
    // eigenvector used, so the computed u must actually be one.
    {
        double resid = (m * u - *rep.bound * u).cwiseAbs().maxCoeff();
        if (resid > 1e-8 * (1.0 + std::abs(*rep.bound) + max_abs(m))) {
            rep.equality = EqualityDiagnosis::undetermined;
            rep.equality_detail = "eigenvector certificate for m did not converge";
            return rep;
        }
    }

    const double utol = 1e-10;
    const double eqtol = 1e-9 * (1.0 + std::max(max_abs(c), max_abs(m)));
    Vector r = row_sums(c);
    std::ostringstream detail;
    bool equal = true;

    if (u(l - 1) > utol) {
        for (int a = 0; a < l && equal; ++a) {
            double msum = m.row(a).sum();
            for (int i : p.blocks[static_cast<size_t>(a)]) {
                if (std::abs(r(i) - msum) > eqtol) {
                    equal = false;
                    detail << "row " << i + 1 << " sum " << format_double(r(i))
                           << " != " << format_double(msum);
                    break;
                }
            }
        }
    }
    for (int b = 0; b + 1 < l && equal; ++b) {
        if (!(u(b) > u(l - 1) + utol)) continue;
        const auto& cols = p.blocks[static_cast<size_t>(b)];
        for (int a = 0; a < l && equal; ++a) {
            for (int i : p.blocks[static_cast<size_t>(a)]) {
                double s = block_sum(c, cols, i);
                if (std::abs(s - m(a, b)) > eqtol) {
                    equal = false;
                    detail << "block sum (" << i + 1 << ", block " << b + 1 << ") "
                           << format_double(s) << " != " << format_double(m(a, b));
                    break;
                }
            }
        }
    }

    rep.equality = equal ? EqualityDiagnosis::equality : EqualityDiagnosis::strict;
    rep.equality_detail = equal ? "row and block sums meet m wherever required" : detail.str();
    if (!rho_r_is_simple(m, *rep.bound))
        rep.equality_detail += "; largest real eigenvalue of m is not simple "
                               "(diagnosis uses the computed rooted eigenvector)";
    return rep;
}

}  // namespace

HypothesisReport check_upper_hypotheses(const Matrix& c, const Partition& p, const Matrix& m) {
    require_bound_inputs(c, p, m, "check_upper_hypotheses");
    return check_hypotheses(c, p, m, BoundDirection::upper);
}

HypothesisReport check_lower_hypotheses(const Matrix& c, const Partition& p, const Matrix& m) {
    require_bound_inputs(c, p, m, "check_lower_hypotheses");
    return check_hypotheses(c, p, m, BoundDirection::lower);
}

BoundReport upper_bound(const Matrix& c, const Partition& p, const Matrix& m) {
    return quotient_bound(c, p, m, BoundDirection::upper);
}

BoundReport lower_bound(const Matrix& c, const Partition& p, const Matrix& m) {
    return quotient_bound(c, p, m, BoundDirection::lower);
}

CanonicalM canonical_m(const Matrix& c, const Partition& p) {
    require_square(c, "canonical_m");
    require_nonnegative(c, "canonical_m");
    p.validate();
    if (c.rows() != p.n) throw std::invalid_argument("canonical_m: partition size mismatch");

    const int l = p.size();
    Vector r = row_sums(c);
    CanonicalM out;
    out.m = Matrix::Zero(l, l);
    for (int a = 0; a < l; ++a) {
        const auto& rows = p.blocks[static_cast<size_t>(a)];
        double row_max = 0.0;
        for (int i : rows) row_max = std::max(row_max, r(i));
        double partial = 0.0;
        for (int b = 0; b + 1 < l; ++b) {
            double s = 0.0;
            for (int i : rows) s = std::max(s, block_sum(c, p.blocks[static_cast<size_t>(b)], i));
            out.m(a, b) = s;
            partial += s;
        }
        out.m(a, l - 1) = row_max - partial;
    }
    out.rootedness = is_rooted_matrix(out.m);
    return out;
}

ComparisonReport comparison_certificate(const Matrix& c, const Matrix& cp, const Matrix& pmat,
                                        const Matrix& q, const Vector& u, const Vector& v,
                                        BoundDirection direction) {
    require_square(c, "comparison_certificate");
    require_finite(c, "comparison_certificate");
    const Eigen::Index n = c.rows();
    for (const Matrix* mx : {&cp, &pmat, &q}) {
        require_square(*mx, "comparison_certificate");
        require_finite(*mx, "comparison_certificate");
        if (mx->rows() != n)
            throw std::invalid_argument("comparison_certificate: all matrices must share order");
    }
    if (u.size() != n || v.size() != n)
        throw std::invalid_argument("comparison_certificate: vector length mismatch");

    ComparisonReport rep;
    rep.direction = direction;

    for (Eigen::Index i = 0; i < n; ++i) {
        if (u(i) < 0.0) rep.failures.push_back("u(" + std::to_string(i + 1) + ") is negative");
        if (v(i) < 0.0) rep.failures.push_back("v(" + std::to_string(i + 1) + ") is negative");
    }

    Matrix pcq = pmat * c * q;
    Matrix pcpq = pmat * cp * q;
    const double scale = 1.0 + std::max(max_abs(pcq), max_abs(pcpq));
    const double side_tol = 1e-12 * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double gap = direction == BoundDirection::upper ? pcpq(i, j) - pcq(i, j)
                                                            : pcq(i, j) - pcpq(i, j);
            if (gap < -side_tol) {
                rep.failures.push_back("entrywise comparison fails at (" + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) + ")");
                i = n;
                break;
            }
        }
    }

    Vector qu = q * u;
    double qu_norm2 = qu.squaredNorm();
    if (qu_norm2 == 0.0) {
        rep.failures.push_back("Qu is the zero vector");
    } else {
        rep.lambda_prime = (cp * qu).dot(qu) / qu_norm2;
        double resid = (cp * qu - rep.lambda_prime * qu).cwiseAbs().maxCoeff();
        if (resid > 1e-8 * std::max(1.0, qu.cwiseAbs().maxCoeff()))
            rep.failures.push_back("Qu is not an eigenvector of cp (residual " +
                                   format_double(resid) + ")");
    }

    Vector vp = pmat.transpose() * v;  // (v^T P)^T
    double vp_norm2 = vp.squaredNorm();
    if (vp_norm2 == 0.0) {
        rep.failures.push_back("v^T P is the zero vector");
    } else {
        rep.lambda = (c.transpose() * vp).dot(vp) / vp_norm2;
        double resid = (c.transpose() * vp - rep.lambda * vp).cwiseAbs().maxCoeff();
        if (resid > 1e-8 * std::max(1.0, vp.cwiseAbs().maxCoeff()))
            rep.failures.push_back("v^T P is not a left eigenvector of c (residual " +
                                   format_double(resid) + ")");
    }

    if (!(vp.dot(qu) > 0.0)) rep.failures.push_back("v^T P Q u is not positive");

    if (!rep.failures.empty()) return rep;
    rep.valid = true;

    const double u_zero = 1e-12 * (1.0 + u.cwiseAbs().maxCoeff());
    const double v_zero = 1e-12 * (1.0 + v.cwiseAbs().maxCoeff());
    const double eqtol = 1e-9 * scale;
    rep.equality = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(v(i)) <= v_zero) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(u(j)) <= u_zero) continue;
            rep.equality_set.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
            if (std::abs(pcpq(i, j) - pcq(i, j)) > eqtol) {
                rep.equality = false;
                rep.equality_mismatches.emplace_back(static_cast<int>(i) + 1,
                                                     static_cast<int>(j) + 1);
            }
        }
    }
    return rep;
}

void MnParams::validate() const {
    if (n < 2) throw std::invalid_argument("MnParams: n must be >= 2");
    if (!(d >= 0.0 && f1 >= 0.0 && f2 >= 0.0))
        throw std::invalid_argument("MnParams: d, f1, f2 must be nonnegative");
    if (f1 < f2) throw std::invalid_argument("MnParams: f1 must be >= f2");
    if (r.size() != n) throw std::invalid_argument("MnParams: r must have length n");
    if (!(r(n - 1) >= 0.0)) throw std::invalid_argument("MnParams: r(n) must be >= 0");
    for (int j = 0; j + 1 < n; ++j)
        if (r(j) < r(n - 1))
            throw std::invalid_argument("MnParams: r(" + std::to_string(j + 1) +
                                        ") must be >= r(n)");
}

Matrix mn_matrix(const MnParams& params) {
    params.validate();
    const int n = params.n;
    Matrix m(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) m(i, j) = i == j ? params.d : params.f1;
        m(i, n - 1) = params.r(i) - params.d - (n - 2) * params.f1;
    }
    for (int j = 0; j + 1 < n; ++j) m(n - 1, j) = params.f2;
    m(n - 1, n - 1) = params.r(n - 1) - (n - 1) * params.f2;
    return m;
}

double mn_rho_closed_form(const MnParams& params) {
    params.validate();
    const int n = params.n;
    const double rn = params.r(n - 1);
    double spread = 0.0;
    for (int i = 0; i + 1 < n; ++i) spread += params.r(i) - rn;
    const double shift = params.d - params.f2 + (n - 2) * (params.f1 - params.f2);
    return 0.5 * (rn + shift) +
           0.5 * std::sqrt((rn - shift) * (rn - shift) + 4.0 * params.f2 * spread);
}

namespace {

struct SortedView {
    std::vector<int> perm;  // 0-based; row i of the sorted view is perm[i] of c
    Vector r_sorted;
    Matrix c_sorted;
};

SortedView sort_rows_descending(const Matrix& c) {
    const Eigen::Index n = c.rows();
    Vector r = row_sums(c);
    SortedView sv;
    sv.perm.resize(static_cast<size_t>(n));
    std::iota(sv.perm.begin(), sv.perm.end(), 0);
    std::stable_sort(sv.perm.begin(), sv.perm.end(),
                     [&](int x, int y) { return r(x) > r(y); });
    sv.r_sorted.resize(n);
    sv.c_sorted.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sv.r_sorted(i) = r(sv.perm[static_cast<size_t>(i)]);
        for (Eigen::Index j = 0; j < n; ++j)
            sv.c_sorted(i, j) = c(sv.perm[static_cast<size_t>(i)], sv.perm[static_cast<size_t>(j)]);
    }
    return sv;
}

double two_level_root(double r_ell, double d, double f1, double f2, int ell, double spread) {
    const double shift = d - f2 + (ell - 2) * (f1 - f2);
    return 0.5 * (r_ell + shift) +
           0.5 * std::sqrt((r_ell - shift) * (r_ell - shift) + 4.0 * f2 * spread);
}

}  // namespace

DuanZhouReport duan_zhou_bound(const Matrix& c, int ell) {
    require_square(c, "duan_zhou_bound");
    require_nonnegative(c, "duan_zhou_bound");
    const int n = static_cast<int>(c.rows());
    if (ell < 1 || ell > n)
        throw std::invalid_argument("duan_zhou_bound: ell " + std::to_string(ell) +
                                    " out of range 1.." + std::to_string(n));

    SortedView sv = sort_rows_descending(c);
    double d = 0.0, f = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) (i == j ? d : f) = std::max(i == j ? d : f, c(i, j));

    DuanZhouReport rep;
    rep.ell = ell;
    for (int i : sv.perm) rep.permutation.push_back(i + 1);

    double spread = 0.0;
    for (int i = 0; i + 1 < ell; ++i) spread += sv.r_sorted(i) - sv.r_sorted(ell - 1);
    rep.bound = ell == 1 ? sv.r_sorted(0)
                         : two_level_root(sv.r_sorted(ell - 1), d, f, f, ell, spread);

    if (!pattern_strongly_connected(c)) {
        rep.equality_known = false;
        rep.detail = "c is reducible";
        return rep;
    }
    rep.equality_known = true;

    const double tie = 1e-12 * (1.0 + max_abs(c)) * n;
    if (std::abs(sv.r_sorted(0) - sv.r_sorted(n - 1)) <= tie) {
        rep.equality = true;
        rep.detail = "constant row sums";
        return rep;
    }
    int t = 0;  // 0-based least index with r_t == r_ell
    while (std::abs(sv.r_sorted(t) - sv.r_sorted(ell - 1)) > tie) ++t;
    if (std::abs(sv.r_sorted(t) - sv.r_sorted(n - 1)) > tie) {
        rep.equality = false;
        rep.detail = "r_t != r_n";
        return rep;
    }
    bool pattern = true;
    for (int i = 0; i < n && pattern; ++i)
        for (int j = 0; j < t && pattern; ++j) {
            double want = i == j ? d : f;
            if (std::abs(sv.c_sorted(i, j) - want) > tie) pattern = false;
        }
    rep.equality = pattern;
    rep.detail = pattern ? "leading block carries the extremal d/f pattern"
                         : "leading block entries differ from the d/f pattern";
    return rep;
}

double refined_duan_zhou(const Matrix& c, int ell) {
    require_square(c, "refined_duan_zhou");
    require_nonnegative(c, "refined_duan_zhou");
    const int n = static_cast<int>(c.rows());
    if (ell < 1 || ell > n)
        throw std::invalid_argument("refined_duan_zhou: ell " + std::to_string(ell) +
                                    " out of range 1.." + std::to_string(n));
    SortedView sv = sort_rows_descending(c);
    if (ell == 1) return sv.r_sorted(0);

    double d = 0.0, f1 = 0.0, f2 = 0.0;
    for (int i = 0; i + 1 < ell; ++i) d = std::max(d, sv.c_sorted(i, i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < ell; ++j)
            if (i != j) f1 = std::max(f1, sv.c_sorted(i, j));
    for (int i = ell - 1; i < n; ++i)
        for (int j = 0; j + 1 < ell; ++j) f2 = std::max(f2, sv.c_sorted(i, j));

    double spread = 0.0;
    for (int i = 0; i + 1 < ell; ++i) spread += sv.r_sorted(i) - sv.r_sorted(ell - 1);
    return two_level_root(sv.r_sorted(ell - 1), d, f1, f2, ell, spread);
}

EntrySumReport entrysum_bound(const Matrix& c) {
    require_square(c, "entrysum_bound");
    require_nonnegative(c, "entrysum_bound");
    const int n = static_cast<int>(c.rows());
    EntrySumReport rep;
    rep.m = c.sum();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) (i == j ? rep.d : rep.f) = std::max(i == j ? rep.d : rep.f,
                                                                        c(i, j));
    if (rep.f == 0.0) {
        rep.bound = rep.d;
        rep.equality = true;  // diagonal matrix: rho(C) = d
        return rep;
    }
    rep.bound = 0.5 * (rep.d - rep.f +
                       std::sqrt((rep.d - rep.f) * (rep.d - rep.f) + 4.0 * rep.m * rep.f));

    // Equality structure: sort indices by (diagonal, row sum) descending, then
    // demand the leading block be exactly f J_k + (d-f) I_k with zeros outside.
    Vector r = row_sums(c);
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (c(x, x) != c(y, y)) return c(x, x) > c(y, y);
        return r(x) > r(y);
    });
    int k = 0;
    while (k < n) {
        int i = order[static_cast<size_t>(k)];
        bool active = c(i, i) != 0.0 || r(i) != 0.0;
        if (!active) break;
        ++k;
    }
    bool match = k >= 1;
    for (int a = 0; a < n && match; ++a) {
        for (int b = 0; b < n && match; ++b) {
            double got = c(order[static_cast<size_t>(a)], order[static_cast<size_t>(b)]);
            double want = (a < k && b < k) ? (a == b ? rep.d : rep.f) : 0.0;
            if (got != want) match = false;
        }
    }
    rep.equality = match;
    if (match) rep.k = k;
    return rep;
}

double stanley_bound(long e) {
    if (e < 0) throw std::invalid_argument("stanley_bound: e must be >= 0");
    return 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(e)));
}

}  // namespace rootbound
