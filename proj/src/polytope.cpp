#include "extremal/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "extremal/combinations.hpp"

namespace extremal {

namespace {

// Distinct vertices closer than this (max-norm) are merged.
constexpr double kVertexMergeAbs = 1e-7;
// Canonical halfspaces closer than this in every coefficient are duplicates.
constexpr double kDuplicateAbs = 1e-9;

std::vector<Vector> normals_of(std::span<const Halfspace> hs) {
    std::vector<Vector> n;
    n.reserve(hs.size());
    for (const auto& h : hs) n.push_back(h.normal);
    return n;
}

}  // namespace

const char* to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::ZeroNormal: return "ZeroNormal";
        case ValidationCode::Unbounded: return "Unbounded";
        case ValidationCode::NotFullDimensional: return "NotFullDimensional";
        case ValidationCode::RedundantHalfspace: return "RedundantHalfspace";
        case ValidationCode::Empty: return "Empty";
        case ValidationCode::Degenerate: return "Degenerate";
        case ValidationCode::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

CanonicalHalfspaces canonicalize_indexed(std::span<const Halfspace> raw, const Tolerances&) {
    CanonicalHalfspaces out;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const Halfspace& h = raw[k];
        const double n = norm2(h.normal);
        if (!std::isfinite(n) || !std::isfinite(h.offset)) {
            throw std::invalid_argument("halfspace " + std::to_string(k) + " has non-finite entries");
        }
        if (n == 0.0) {
            throw ValidationError(ValidationCode::ZeroNormal,
                                  "halfspace " + std::to_string(k) + " has a zero normal", k);
        }
        Halfspace c{h.normal, h.offset / n};
        for (double& x : c.normal) x /= n;

        const bool duplicate = std::any_of(out.halfspaces.begin(), out.halfspaces.end(),
                                           [&](const Halfspace& o) {
            if (std::abs(o.offset - c.offset) > kDuplicateAbs) return false;
            for (std::size_t i = 0; i < c.normal.size(); ++i) {
                if (std::abs(o.normal[i] - c.normal[i]) > kDuplicateAbs) return false;
            }
            return true;
        });
        if (duplicate) continue;
        out.halfspaces.push_back(std::move(c));
        out.source.push_back(k);
    }
    return out;
}

std::vector<Halfspace> canonicalize(std::span<const Halfspace> raw, const Tolerances& tol) {
    return canonicalize_indexed(raw, tol).halfspaces;
}

VertexEnumeration enumerate_vertices(std::span<const Halfspace> halfspaces, std::size_t dim,
                                     const Tolerances& tol) {
    VertexEnumeration out;
    if (dim == 0 || halfspaces.size() < dim) return out;

    for_each_combination(halfspaces.size(), dim, [&](std::span<const std::size_t> subset) {
        std::vector<Vector> normals;
        normals.reserve(dim);
        for (std::size_t k : subset) normals.push_back(halfspaces[k].normal);
        if (rank(normals, tol) < dim) return;

        Matrix a(dim, dim);
        Vector rhs(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            const Halfspace& h = halfspaces[subset[r]];
            std::copy(h.normal.begin(), h.normal.end(), a.row(r).begin());
            rhs[r] = -h.offset;
        }
        Vector x;
        try {
            x = solve_real(a, rhs, tol);
        } catch (const SingularMatrix&) {
            return;
        }
        for (const auto& h : halfspaces) {
            if (h.eval(x) < -tol.geom_abs) return;
        }
        for (const auto& v : out.vertices) {
            double diff = 0.0;
            for (std::size_t i = 0; i < dim; ++i) diff = std::max(diff, std::abs(v[i] - x[i]));
            if (diff <= kVertexMergeAbs) return;
        }
        out.vertices.push_back(std::move(x));
    });

    out.incidence.resize(out.vertices.size());
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
        for (std::size_t k = 0; k < halfspaces.size(); ++k) {
            if (std::abs(halfspaces[k].eval(out.vertices[v])) <= tol.geom_abs) {
                out.incidence[v].push_back(k);
            }
        }
    }
    return out;
}

PolytopeH validate(std::span<const Halfspace> raw, std::size_t dim, const Tolerances& tol,
                   const Limits& limits) {
    tol.check();
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    if (raw.empty()) throw ValidationError(ValidationCode::Unbounded, "no halfspaces given");
    for (const auto& h : raw) {
        if (h.dim() != dim) throw std::invalid_argument("halfspace normal length differs from dim");
    }

    CanonicalHalfspaces canon = canonicalize_indexed(raw, tol);
    const auto& hs = canon.halfspaces;
    const std::size_t n = hs.size();

    if (dim > limits.max_dim || n > limits.max_facets || binomial(n, dim) > limits.max_subsets) {
        throw ValidationError(ValidationCode::TooLarge,
                              "problem exceeds size limits (dim " + std::to_string(dim) +
                                  ", facets " + std::to_string(n) + ")");
    }

    const std::vector<Vector> normals = normals_of(hs);
    if (recession_direction(normals, tol)) {
        throw ValidationError(ValidationCode::Unbounded, "halfspaces do not bound a compact set");
    }

    InteriorPoint ip;
    try {
        ip = interior_point(hs, tol);
    } catch (const Infeasible& e) {
        if (e.empty()) throw ValidationError(ValidationCode::Empty, "halfspace system is empty");
        throw ValidationError(ValidationCode::NotFullDimensional, "polytope has empty interior");
    }

    VertexEnumeration ve = enumerate_vertices(hs, dim, tol);
    if (ve.vertices.empty()) throw ValidationError(ValidationCode::Empty, "no vertices found");

    // facet witness: active at >= dim vertices spanning a (dim-1)-flat
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<const Vector*> active;
        for (std::size_t v = 0; v < ve.vertices.size(); ++v) {
            const auto& inc = ve.incidence[v];
            if (std::binary_search(inc.begin(), inc.end(), k)) active.push_back(&ve.vertices[v]);
        }
        bool ok = active.size() >= dim;
        if (ok && dim > 1) {
            std::vector<Vector> diffs;
            for (std::size_t i = 1; i < active.size(); ++i) {
                Vector w(dim);
                for (std::size_t c = 0; c < dim; ++c) w[c] = (*active[i])[c] - (*active[0])[c];
                diffs.push_back(std::move(w));
            }
            ok = rank(diffs, tol) == dim - 1;
        }
        if (!ok) {
            const std::size_t src = canon.source[k];
            throw ValidationError(ValidationCode::RedundantHalfspace,
                                  "halfspace " + std::to_string(src) + " does not support a facet",
                                  src);
        }
    }

    PolytopeH p;
    p.dim_ = dim;
    p.halfspaces_ = std::move(canon.halfspaces);
    p.source_ = std::move(canon.source);
    p.vertices_ = std::move(ve.vertices);
    p.incidence_ = std::move(ve.incidence);
    p.interior_ = std::move(ip.point);
    p.radius_ = ip.radius;
    p.tol_ = tol;
    p.limits_ = limits;
    return p;
}

bool contains(const PolytopeH& k, std::span<const double> x) {
    if (x.size() != k.dim()) throw std::invalid_argument("contains: dimension mismatch");
    for (const auto& h : k.halfspaces()) {
        if (h.eval(x) < -k.tol().geom_abs) return false;
    }
    return true;
}

std::vector<Vector> convex_hull_2d(std::span<const Vector> points) {
    std::vector<Vector> pts(points.begin(), points.end());
    for (const auto& p : pts) {
        if (p.size() != 2) throw std::invalid_argument("convex_hull_2d expects planar points");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vector> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

PolytopeH from_vertices_2d(std::span<const Vector> points, const Tolerances& tol,
                           const Limits& limits) {
    if (points.size() < 3) {
        throw ValidationError(ValidationCode::Degenerate, "need at least three points");
    }
    const std::vector<Vector> hull = convex_hull_2d(points);
    if (hull.size() < 3) throw ValidationError(ValidationCode::Degenerate, "points are collinear");

    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vector& a = hull[i];
        const Vector& b = hull[(i + 1) % hull.size()];
        Vector n{-(b[1] - a[1]), b[0] - a[0]};
        hs.push_back({n, -(n[0] * a[0] + n[1] * a[1])});
    }
    return validate(hs, 2, tol, limits);
}

}  // namespace extremal
