#include "extremal/linalg.hpp"

#include <limits>
#include <numeric>

namespace extremal {

void Tolerances::check() const {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(rank_rel) || !ok(pos_abs) || !ok(geom_abs) || !(rank_rel < 1.0)) {
        throw std::invalid_argument("tolerances must be positive and rank_rel < 1");
    }
}

Vector multiply(const Matrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch in multiply");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

ComplexVector multiply(const Matrix& a, std::span<const Complex> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch in multiply");
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch in multiply");
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

namespace {

template <class T>
double vec_norm_inf(std::span<const T> v) {
    double m = 0.0;
    for (const T& x : v) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
}

template <class T>
std::vector<T> solve_checked(const DenseMatrix<T>& a, std::span<const T> b, const Tolerances& tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve requires a square matrix");
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side has wrong length");
    LuFactors<T> lu(a, tol.rank_rel);
    if (lu.singular()) throw SingularMatrix();
    std::vector<T> x = lu.template solve<T>(b);
    double resid = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s = -b[i];
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        resid = std::max(resid, static_cast<double>(std::abs(s)));
    }
    const double xn = vec_norm_inf<T>(x);
    if (!std::isfinite(xn) || resid > 10.0 * tol.rank_rel * a.norm_inf() * xn) {
        throw SingularMatrix();
    }
    return x;
}

}  // namespace

Vector solve_real(const Matrix& a, std::span<const double> b, const Tolerances& tol) {
    return solve_checked<double>(a, b, tol);
}

ComplexVector solve_complex(const ComplexMatrix& a, std::span<const Complex> b,
                            const Tolerances& tol) {
    return solve_checked<Complex>(a, b, tol);
}

std::size_t rank(std::span<const Vector> vectors, const Tolerances& tol) {
    if (vectors.empty()) return 0;
    const std::size_t dim = vectors.front().size();
    double longest = 0.0;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw std::invalid_argument("rank: vectors differ in length");
        longest = std::max(longest, norm2(v));
    }
    if (longest == 0.0) return 0;

    std::vector<Vector> rows;
    for (const auto& v : vectors) {
        const double n = norm2(v);
        if (n <= tol.rank_rel * longest) continue;
        Vector u(v);
        for (double& x : u) x /= n;
        rows.push_back(std::move(u));
    }
    const std::size_t m = rows.size();
    std::vector<std::size_t> col(dim);
    std::iota(col.begin(), col.end(), 0);

    std::size_t r = 0;
    for (; r < std::min(m, dim); ++r) {
        std::size_t pi = r, pj = r;
        double best = 0.0;
        for (std::size_t i = r; i < m; ++i) {
            for (std::size_t j = r; j < dim; ++j) {
                const double a = std::abs(rows[i][col[j]]);
                if (a > best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (best <= tol.rank_rel) break;
        std::swap(rows[r], rows[pi]);
        std::swap(col[r], col[pj]);
        const double piv = rows[r][col[r]];
        for (std::size_t i = r + 1; i < m; ++i) {
            const double f = rows[i][col[r]] / piv;
            if (f == 0.0) continue;
            for (std::size_t j = r; j < dim; ++j) rows[i][col[j]] -= f * rows[r][col[j]];
        }
    }
    return r;
}

Matrix orthonormal_basis(std::span<const Vector> vectors, const Tolerances& tol) {
    if (vectors.empty()) throw ZeroSpan();
    const std::size_t dim = vectors.front().size();
    double longest = 0.0;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw std::invalid_argument("orthonormal_basis: vectors differ in length");
        longest = std::max(longest, norm2(v));
    }
    std::vector<Vector> basis;
    for (const auto& v : vectors) {
        const double n0 = norm2(v);
        if (n0 == 0.0 || n0 <= tol.rank_rel * longest) continue;
        Vector w(v);
        // two Gram-Schmidt sweeps
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const double c = dot(q, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * q[i];
            }
        }
        const double n = norm2(w);
        if (n <= tol.rank_rel * n0) continue;
        for (double& x : w) x /= n;
        basis.push_back(std::move(w));
    }
    if (basis.empty()) throw ZeroSpan();
    Matrix q(basis.size(), dim);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::copy(basis[i].begin(), basis[i].end(), q.row(i).begin());
    }
    return q;
}

namespace lp {

namespace {

constexpr double kPivotEps = 1e-12;

struct Tableau {
    std::size_t m = 0;
    std::size_t ncols = 0;
    Matrix t;                 // m x ncols constraint coefficients
    Vector rhs;               // m
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c) {
        const double p = t(r, c);
        for (std::size_t j = 0; j < ncols; ++j) t(r, j) /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = t(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) t(i, j) -= f * t(r, j);
            rhs[i] -= f * rhs[r];
            if (std::abs(rhs[i]) < 1e-15) rhs[i] = 0.0;
        }
        basis[r] = c;
    }

    double objective(std::span<const double> cost) const {
        double v = 0.0;
        for (std::size_t i = 0; i < m; ++i) v += cost[basis[i]] * rhs[i];
        return v;
    }

    /// Bland's rule; columns >= allowed_cols never enter.
    Status run(std::span<const double> cost, std::size_t allowed_cols) {
        const std::size_t max_iter = 50000;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                double rc = cost[j];
                for (std::size_t i = 0; i < m; ++i) rc -= cost[basis[i]] * t(i, j);
                if (rc > 1e-11) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) return Status::Optimal;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, enter) > kPivotEps) best_ratio = std::min(best_ratio, rhs[i] / t(i, enter));
            }
            if (!std::isfinite(best_ratio)) return Status::Unbounded;
            // ties go to the smallest basic variable index
            std::size_t leave = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, enter) > kPivotEps && rhs[i] / t(i, enter) <= best_ratio + 1e-14 &&
                    (leave == m || basis[i] < basis[leave])) {
                    leave = i;
                }
            }
            pivot(leave, enter);
        }
        throw LinalgError("simplex iteration limit reached");
    }
};

}  // namespace

Result maximize(std::span<const double> c, const Matrix& a, std::span<const double> b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (c.size() != n || b.size() != m) throw std::invalid_argument("lp::maximize: dimension mismatch");

    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0.0) art_rows.push_back(i);
    }
    const std::size_t k = art_rows.size();

    Tableau tab;
    tab.m = m;
    tab.ncols = n + m + k;
    tab.t = Matrix(m, tab.ncols);
    tab.rhs.assign(m, 0.0);
    tab.basis.assign(m, 0);
    std::size_t next_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tab.t(i, j) = sign * a(i, j);
        tab.t(i, n + i) = sign;
        tab.rhs[i] = sign * b[i];
        if (sign < 0.0) {
            tab.t(i, n + m + next_art) = 1.0;
            tab.basis[i] = n + m + next_art;
            ++next_art;
        } else {
            tab.basis[i] = n + i;
        }
    }

    if (k > 0) {
        Vector phase1(tab.ncols, 0.0);
        for (std::size_t j = n + m; j < tab.ncols; ++j) phase1[j] = -1.0;
        tab.run(phase1, tab.ncols);
        double scale = 1.0;
        for (std::size_t i : art_rows) scale = std::max(scale, std::abs(b[i]));
        if (tab.objective(phase1) < -1e-9 * scale) return {Status::Infeasible, {}, 0.0};
        // drive remaining artificials out of the basis
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis[i] < n + m) continue;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (std::abs(tab.t(i, j)) > 1e-9) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    Vector cost(tab.ncols, 0.0);
    std::copy(c.begin(), c.end(), cost.begin());
    const Status st = tab.run(cost, n + m);
    if (st == Status::Unbounded) return {Status::Unbounded, {}, 0.0};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.rhs[i];
    }
    res.value = dot(c, res.x);
    return res;
}

}  // namespace lp

InteriorPoint interior_point(std::span<const Halfspace> halfspaces, const Tolerances& tol) {
    if (halfspaces.empty()) throw std::invalid_argument("interior_point: no halfspaces");
    const std::size_t d = halfspaces.front().dim();
    // variables: x+ (d), x- (d), r; the cap on r keeps the LP bounded for
    // unbounded inputs
    constexpr double kRadiusCap = 1e9;
    const std::size_t nv = 2 * d + 1;
    const std::size_t m = halfspaces.size() + 1;
    Matrix a(m, nv);
    Vector b(m);
    for (std::size_t k = 0; k < halfspaces.size(); ++k) {
        const auto& h = halfspaces[k];
        if (h.dim() != d) throw std::invalid_argument("interior_point: mixed dimensions");
        for (std::size_t i = 0; i < d; ++i) {
            a(k, i) = -h.normal[i];
            a(k, d + i) = h.normal[i];
        }
        a(k, 2 * d) = norm2(h.normal);
        b[k] = h.offset;
    }
    a(m - 1, 2 * d) = 1.0;
    b[m - 1] = kRadiusCap;
    Vector c(nv, 0.0);
    c[2 * d] = 1.0;

    const lp::Result res = lp::maximize(c, a, b);
    if (res.status != lp::Status::Optimal) throw Infeasible(true);
    InteriorPoint ip;
    ip.point.resize(d);
    for (std::size_t i = 0; i < d; ++i) ip.point[i] = res.x[i] - res.x[d + i];
    ip.radius = res.x[2 * d];
    if (!(ip.radius > tol.pos_abs)) throw Infeasible(false);
    return ip;
}

std::optional<Vector> recession_direction(std::span<const Vector> normals, const Tolerances& tol) {
    if (normals.empty()) throw std::invalid_argument("recession_direction: no normals");
    const std::size_t d = normals.front().size();
    const std::size_t nk = normals.size();

    auto extract = [d](const lp::Result& r) {
        Vector v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = r.x[i] - r.x[d + i];
        return v;
    };

    // variables v+ (d), v- (d), t; rows: t - N v <= 0, box on v+ and v-
    {
        const std::size_t nv = 2 * d + 1;
        Matrix a(nk + 2 * d, nv);
        Vector b(nk + 2 * d, 0.0);
        for (std::size_t k = 0; k < nk; ++k) {
            if (normals[k].size() != d) throw std::invalid_argument("recession_direction: mixed dimensions");
            for (std::size_t i = 0; i < d; ++i) {
                a(k, i) = -normals[k][i];
                a(k, d + i) = normals[k][i];
            }
            a(k, 2 * d) = 1.0;
        }
        for (std::size_t i = 0; i < 2 * d; ++i) {
            a(nk + i, i) = 1.0;
            b[nk + i] = 1.0;
        }
        Vector c(nv, 0.0);
        c[2 * d] = 1.0;
        const lp::Result r = lp::maximize(c, a, b);
        if (r.status == lp::Status::Optimal && r.value > tol.pos_abs) return extract(r);
    }

    // No direction strictly inside every halfspace; probe each signed axis
    // for a nonzero direction on the boundary of the cone.
    const std::size_t nv = 2 * d;
    Matrix a(nk + 2 * d, nv);
    Vector b(nk + 2 * d, 0.0);
    for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            a(k, i) = -normals[k][i];
            a(k, d + i) = normals[k][i];
        }
    }
    for (std::size_t i = 0; i < 2 * d; ++i) {
        a(nk + i, i) = 1.0;
        b[nk + i] = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vector c(nv, 0.0);
            c[i] = sign;
            c[d + i] = -sign;
            const lp::Result r = lp::maximize(c, a, b);
            if (r.status == lp::Status::Optimal && r.value > tol.pos_abs) return extract(r);
        }
    }
    return std::nullopt;
}

}  // namespace extremal
