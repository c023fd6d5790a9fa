/**
 * Extremal function evaluation.
 *
 * For a simplex S with barycentric coordinates lambda(z) (extended to
 * complex z by linearity), V_S(z) = log h(|lambda_0| + ... + |lambda_d|)
 * with h(s) = s + sqrt(s^2 - 1). A strip is handled by projecting z onto
 * the span of its normals and evaluating the cross-section simplex there.
 * For a polytope K, V_K is the maximum of V_S over its supports.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "extremal/linalg.hpp"
#include "extremal/supports.hpp"

namespace extremal {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// log h(s) = arccosh(s) for s >= 1. Values in [1 - 1e-12, 1) are clamped to
/// 1; anything below 1 - 1e-9 throws DomainError.
double inv_joukowski_log(double s);

/// log h(1 + e) for e >= 0, accurate for small e.
double log_h_excess(double e);

/// Prefactored barycentric system for a simplex with apexes p_0..p_j in R^j:
/// [p_0 ... p_j; 1 ... 1] lambda = [z; 1].
class BarycentricFrame {
public:
    BarycentricFrame() = default;
    explicit BarycentricFrame(std::span<const Vector> apexes, const Tolerances& tol = {});

    std::size_t dim() const { return dim_; }
    ComplexVector coordinates(std::span<const Complex> z) const;

private:
    std::size_t dim_ = 0;
    LuFactors<double> lu_;
};

ComplexVector barycentric(const BarycentricFrame& frame, std::span<const Complex> z);

/// Sum_k |lambda_k| - 1, computed termwise as |lambda_k| - Re(lambda_k) so
/// that no cancellation against 1 happens.
double barycentric_excess(std::span<const Complex> lambda);

double eval_simplex(const BarycentricFrame& frame, std::span<const Complex> z);
double eval_simplex(const SimplexSupport& s, std::span<const Complex> z);

double eval_strip(const StripSupport& s, const BarycentricFrame& cross, std::span<const Complex> z);
double eval_strip(const StripSupport& s, std::span<const Complex> z);

struct EvalResult {
    double value = 0.0;
    std::size_t argmax = 0;
    std::optional<std::vector<double>> per_support;
};

/// Evaluation-ready copy of a SupportSet (frames factored once).
class Evaluator {
public:
    explicit Evaluator(const SupportSet& set);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    double support_value(std::size_t i, std::span<const Complex> z) const;
    EvalResult evaluate(std::span<const Complex> z, bool diagnostics = false) const;

private:
    struct Entry {
        std::optional<Matrix> basis;  // set for strips
        BarycentricFrame frame;
    };
    std::size_t dim_ = 0;
    std::vector<Entry> entries_;
};

EvalResult eval_extremal(const Evaluator& ev, std::span<const Complex> z, bool diagnostics = false);
EvalResult eval_extremal(const SupportSet& set, std::span<const Complex> z, bool diagnostics = false);

/// Extremal function of the real ball of radius R in C^d (Lundin).
double lundin_ball(std::span<const Complex> z, double radius);

/// Green's function of [a, b] with pole at infinity; independent of the
/// barycentric code path.
double eval_interval(double a, double b, Complex t);

}  // namespace extremal
