#include "extremal/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extremal {

namespace {

// Barycentric sums within this relative distance above 1 are roundoff from
// the solve; log h has infinite slope at 1, so they are snapped to 1.
constexpr double kExcessSnapRel = 1e-14;

}  // namespace

double log_h_excess(double e) {
    if (!(e > 0.0)) return 0.0;
    if (e > 1e150) return std::log(2.0) + std::log1p(e);
    return std::log1p(e + std::sqrt(e * (2.0 + e)));
}

double inv_joukowski_log(double s) {
    if (std::isnan(s) || s < 1.0 - 1e-9) {
        throw DomainError("inverse Joukowski argument below 1");
    }
    if (s <= 1.0) return 0.0;
    return log_h_excess(s - 1.0);
}

BarycentricFrame::BarycentricFrame(std::span<const Vector> apexes, const Tolerances& tol) {
    if (apexes.empty()) throw std::invalid_argument("BarycentricFrame: no apexes");
    dim_ = apexes.front().size();
    if (apexes.size() != dim_ + 1) throw std::invalid_argument("BarycentricFrame: need dim+1 apexes");
    Matrix a(dim_ + 1, dim_ + 1);
    for (std::size_t k = 0; k <= dim_; ++k) {
        if (apexes[k].size() != dim_) throw std::invalid_argument("BarycentricFrame: apex length mismatch");
        for (std::size_t i = 0; i < dim_; ++i) a(i, k) = apexes[k][i];
        a(dim_, k) = 1.0;
    }
    lu_ = LuFactors<double>(std::move(a), tol.rank_rel);
    if (lu_.singular()) throw SingularMatrix();
}

ComplexVector BarycentricFrame::coordinates(std::span<const Complex> z) const {
    if (z.size() != dim_) throw std::invalid_argument("barycentric: dimension mismatch");
    ComplexVector rhs(dim_ + 1);
    std::copy(z.begin(), z.end(), rhs.begin());
    rhs[dim_] = 1.0;
    return lu_.solve<Complex>(rhs);
}

ComplexVector barycentric(const BarycentricFrame& frame, std::span<const Complex> z) {
    return frame.coordinates(z);
}

double barycentric_excess(std::span<const Complex> lambda) {
    double e = 0.0;
    for (const Complex& l : lambda) {
        const double re = l.real();
        const double a = std::abs(l);
        if (re >= 0.0) {
            const double den = a + re;
            if (den > 0.0) e += l.imag() * l.imag() / den;
        } else {
            e += a - re;
        }
    }
    return e;
}

double eval_simplex(const BarycentricFrame& frame, std::span<const Complex> z) {
    const ComplexVector lambda = frame.coordinates(z);
    const double e = barycentric_excess(lambda);
    if (e <= kExcessSnapRel * (1.0 + e)) return 0.0;
    return log_h_excess(e);
}

double eval_simplex(const SimplexSupport& s, std::span<const Complex> z) {
    return eval_simplex(BarycentricFrame(s.simplex.apexes), z);
}

double eval_strip(const StripSupport& s, const BarycentricFrame& cross, std::span<const Complex> z) {
    if (z.size() != s.basis.cols()) throw std::invalid_argument("eval_strip: dimension mismatch");
    const ComplexVector w = multiply(s.basis, z);
    return eval_simplex(cross, w);
}

double eval_strip(const StripSupport& s, std::span<const Complex> z) {
    return eval_strip(s, BarycentricFrame(s.cross_section.apexes), z);
}

Evaluator::Evaluator(const SupportSet& set) : dim_(set.polytope.dim()) {
    if (set.supports.empty()) throw std::invalid_argument("Evaluator: empty support set");
    const Tolerances& tol = set.polytope.tol();
    entries_.reserve(set.supports.size());
    for (const auto& sup : set.supports) {
        if (const auto* simplex = std::get_if<SimplexSupport>(&sup)) {
            entries_.push_back({std::nullopt, BarycentricFrame(simplex->simplex.apexes, tol)});
        } else {
            const auto& strip = std::get<StripSupport>(sup);
            entries_.push_back({strip.basis, BarycentricFrame(strip.cross_section.apexes, tol)});
        }
    }
}

double Evaluator::support_value(std::size_t i, std::span<const Complex> z) const {
    const Entry& e = entries_.at(i);
    if (e.basis) return eval_simplex(e.frame, multiply(*e.basis, z));
    return eval_simplex(e.frame, z);
}

EvalResult Evaluator::evaluate(std::span<const Complex> z, bool diagnostics) const {
    if (z.size() != dim_) throw std::invalid_argument("evaluate: dimension mismatch");
    EvalResult r;
    r.value = -std::numeric_limits<double>::infinity();
    if (diagnostics) r.per_support.emplace().reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const double v = support_value(i, z);
        if (diagnostics) r.per_support->push_back(v);
        if (v > r.value) {
            r.value = v;
            r.argmax = i;
        }
    }
    return r;
}

EvalResult eval_extremal(const Evaluator& ev, std::span<const Complex> z, bool diagnostics) {
    return ev.evaluate(z, diagnostics);
}

EvalResult eval_extremal(const SupportSet& set, std::span<const Complex> z, bool diagnostics) {
    return Evaluator(set).evaluate(z, diagnostics);
}

double lundin_ball(std::span<const Complex> z, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("lundin_ball: radius must be positive");
    double im2 = 0.0;   // sum Im(w_i)^2
    double abs2 = 0.0;  // |w|^2
    Complex sq{};       // w_1^2 + ... + w_d^2
    for (const Complex& zi : z) {
        const Complex w = zi / radius;
        im2 += w.imag() * w.imag();
        abs2 += std::norm(w);
        sq += w * w;
    }
    const double re_sq = sq.real();
    const double dist = std::abs(sq - 1.0);
    double e;
    if (re_sq <= 1.0) {
        // |w|^2 - Re(w^2) = 2 sum Im^2 and |c - 1| - (1 - Re c) = Im(c)^2 / (|c - 1| + 1 - Re c)
        const double den = dist + (1.0 - re_sq);
        e = 2.0 * im2 + (den > 0.0 ? sq.imag() * sq.imag() / den : 0.0);
    } else {
        e = abs2 + dist - 1.0;
    }
    return 0.5 * log_h_excess(e);
}

double eval_interval(double a, double b, Complex t) {
    if (!(a < b)) throw std::invalid_argument("eval_interval: need a < b");
    const Complex s = (2.0 * t - (a + b)) / (b - a);
    const Complex r = std::sqrt(s * s - 1.0);
    const double m = std::max(std::abs(s + r), std::abs(s - r));
    return std::max(0.0, std::log(m));
}

}  // namespace extremal
