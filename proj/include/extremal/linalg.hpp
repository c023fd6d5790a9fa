/**
 * Small dense linear algebra: real/complex LU solves, numerical rank,
 * Gram-Schmidt bases and a textbook simplex method for the two linear
 * programs the polytope code needs (Chebyshev center, recession cone).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "extremal/halfspace.hpp"

namespace extremal {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Numerical thresholds threaded explicitly through every geometric routine.
struct Tolerances {
    double rank_rel = 1e-9;  ///< relative pivot cutoff for rank / singularity
    double pos_abs = 1e-9;   ///< strict positivity threshold
    double geom_abs = 1e-9;  ///< containment slack

    static Tolerances uniform(double t) { return {t, t, t}; }

    /// Throws std::invalid_argument unless all values are positive and rank_rel < 1.
    void check() const;
};

class LinalgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public LinalgError {
public:
    SingularMatrix() : LinalgError("matrix is singular to working precision") {}
};

class ZeroSpan : public LinalgError {
public:
    ZeroSpan() : LinalgError("input vectors span the zero subspace") {}
};

/// Raised by interior_point. empty() distinguishes an empty set from a
/// nonempty set without interior.
class Infeasible : public LinalgError {
public:
    explicit Infeasible(bool empty)
        : LinalgError(empty ? "halfspace system is infeasible"
                            : "halfspace system has empty interior"),
          empty_(empty) {}
    bool empty() const { return empty_; }

private:
    bool empty_;
};

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const T> data() const { return data_; }

    /// max_i sum_j |a_ij|
    double norm_inf() const {
        double best = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs() const {
        double best = 0.0;
        for (const T& v : data_) best = std::max(best, static_cast<double>(std::abs(v)));
        return best;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

/**
 * LU factorization with partial pivoting, kept for repeated solves.
 *
 * A pivot whose magnitude falls below rank_rel * max|a_ij| marks the
 * matrix singular. A real factorization accepts complex right-hand sides
 * (the solve is linear, so real and imaginary parts go through the same
 * factors).
 */
template <class T>
class LuFactors {
public:
    LuFactors() = default;
    LuFactors(DenseMatrix<T> a, double rank_rel) : lu_(std::move(a)), perm_(lu_.rows()) {
        if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU requires a square matrix");
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        const double cutoff = rank_rel * lu_.max_abs();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(lu_(i, k)) > best) {
                    best = std::abs(lu_(i, k));
                    p = i;
                }
            }
            if (!(best > cutoff)) {
                singular_ = true;
                return;
            }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const T f = lu_(i, k) / lu_(k, k);
                lu_(i, k) = f;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    bool singular() const { return singular_; }
    std::size_t size() const { return lu_.rows(); }

    template <class U>
    std::vector<U> solve(std::span<const U> b) const {
        if (singular_) throw SingularMatrix();
        const std::size_t n = lu_.rows();
        if (b.size() != n) throw std::invalid_argument("right-hand side has wrong length");
        std::vector<U> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            U s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            U s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
            x[i] = s / lu_(i, i);
        }
        return x;
    }

private:
    DenseMatrix<T> lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

Vector multiply(const Matrix& a, std::span<const double> x);
ComplexVector multiply(const Matrix& a, std::span<const Complex> x);
ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

/// Solves A x = b; throws SingularMatrix on a small pivot or a residual above
/// 10 * rank_rel * ||A||_inf * ||x||_inf.
Vector solve_real(const Matrix& a, std::span<const double> b, const Tolerances& tol = {});
ComplexVector solve_complex(const ComplexMatrix& a, std::span<const Complex> b,
                            const Tolerances& tol = {});

/// Numerical rank of a list of vectors of common length. Vectors shorter than
/// rank_rel times the longest one count as zero; the rest are normalized
/// before complete-pivoting elimination, so the result does not depend on
/// scaling or order of the inputs.
std::size_t rank(std::span<const Vector> vectors, const Tolerances& tol = {});

/// Orthonormal rows spanning the inputs (Gram-Schmidt in input order,
/// dependent vectors skipped). Throws ZeroSpan if nothing survives.
Matrix orthonormal_basis(std::span<const Vector> vectors, const Tolerances& tol = {});

struct InteriorPoint {
    Vector point;
    double radius = 0.0;
};

/// Chebyshev center of {x : n_k.x + b_k >= 0}: maximizes r with
/// n_k.x + b_k >= r ||n_k||. Throws Infeasible when the set is empty or the
/// optimal radius is not above pos_abs.
InteriorPoint interior_point(std::span<const Halfspace> halfspaces, const Tolerances& tol = {});

/// Some v != 0 with n_k.v >= 0 for every k, or nullopt when the cone
/// {v : N v >= 0} is trivial.
std::optional<Vector> recession_direction(std::span<const Vector> normals,
                                          const Tolerances& tol = {});

namespace lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Vector x;
    double value = 0.0;
};

/// maximize c.x subject to A x <= b, x >= 0. Two-phase tableau simplex with
/// Bland's rule.
Result maximize(std::span<const double> c, const Matrix& a, std::span<const double> b);

}  // namespace lp

}  // namespace extremal
