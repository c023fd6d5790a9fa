#include "extremal/supports.hpp"

#include <algorithm>
#include <cmath>

#include "extremal/combinations.hpp"

namespace extremal {

namespace {

void reject(Rejection* why, Rejection r) {
    if (why) *why = r;
}

std::vector<Vector> normals_at(const PolytopeH& k, std::span<const std::size_t> subset) {
    std::vector<Vector> out;
    out.reserve(subset.size());
    for (std::size_t i : subset) {
        if (i >= k.facet_count()) throw std::out_of_range("facet index out of range");
        out.push_back(k.halfspaces()[i].normal);
    }
    return out;
}

bool all_subsets_full_rank(std::span<const Vector> normals, std::size_t size, const Tolerances& tol) {
    bool ok = true;
    for_each_combination(normals.size(), size, [&](std::span<const std::size_t> sub) {
        if (!ok) return;
        std::vector<Vector> pick;
        for (std::size_t i : sub) pick.push_back(normals[i]);
        if (rank(pick, tol) != size) ok = false;
    });
    return ok;
}

}  // namespace

const std::vector<std::size_t>& facet_indices(const Support& s) {
    return std::visit([](const auto& v) -> const std::vector<std::size_t>& { return v.facet_indices; }, s);
}

bool is_simplex(const Support& s) { return std::holds_alternative<SimplexSupport>(s); }

std::optional<SimplexGeometry> certify_simplex(std::span<const Halfspace> halfspaces,
                                               const Tolerances& tol, Rejection* why) {
    if (halfspaces.empty()) throw std::invalid_argument("certify_simplex: no halfspaces");
    const std::size_t dim = halfspaces.front().dim();
    if (halfspaces.size() != dim + 1) {
        throw std::invalid_argument("certify_simplex: need exactly dim+1 halfspaces");
    }

    SimplexGeometry g;
    g.halfspaces.assign(halfspaces.begin(), halfspaces.end());
    for (std::size_t j = 0; j <= dim; ++j) {
        std::vector<Vector> normals;
        Matrix a(dim, dim);
        Vector rhs(dim);
        std::size_t r = 0;
        for (std::size_t k = 0; k <= dim; ++k) {
            if (k == j) continue;
            normals.push_back(halfspaces[k].normal);
            std::copy(halfspaces[k].normal.begin(), halfspaces[k].normal.end(), a.row(r).begin());
            rhs[r] = -halfspaces[k].offset;
            ++r;
        }
        if (rank(normals, tol) != dim) {
            reject(why, Rejection::RankDeficient);
            return std::nullopt;
        }
        Vector p;
        try {
            p = solve_real(a, rhs, tol);
        } catch (const SingularMatrix&) {
            reject(why, Rejection::SolveFailed);
            return std::nullopt;
        }
        const double scale = std::max(1.0, norm_inf(p));
        for (std::size_t k = 0; k <= dim; ++k) {
            if (k != j && std::abs(halfspaces[k].eval(p)) > tol.geom_abs * scale) {
                reject(why, Rejection::SolveFailed);
                return std::nullopt;
            }
        }
        if (!(halfspaces[j].eval(p) > tol.pos_abs)) {
            reject(why, Rejection::NotPositive);
            return std::nullopt;
        }
        g.apexes.push_back(std::move(p));
    }
    return g;
}

std::optional<SimplexSupport> try_simplex(const PolytopeH& k, std::span<const std::size_t> subset,
                                          Rejection* why) {
    if (subset.size() != k.dim() + 1) throw std::invalid_argument("try_simplex: subset must have d+1 facets");
    normals_at(k, subset);  // range check

    std::vector<Halfspace> hs;
    for (std::size_t i : subset) hs.push_back(k.halfspaces()[i]);
    auto g = certify_simplex(hs, k.tol(), why);
    if (!g) return std::nullopt;

    SimplexSupport s;
    s.facet_indices.assign(subset.begin(), subset.end());
    s.simplex = std::move(*g);
    return s;
}

std::optional<StripSupport> try_strip(const PolytopeH& k, std::span<const std::size_t> subset,
                                      Rejection* why) {
    const std::size_t d = k.dim();
    if (subset.size() < 2 || subset.size() > d) {
        throw std::invalid_argument("try_strip: subset size must lie in [2, d]");
    }
    const std::size_t j = subset.size() - 1;
    const std::vector<Vector> normals = normals_at(k, subset);
    const Tolerances& tol = k.tol();

    if (rank(normals, tol) != j) {
        reject(why, Rejection::WrongSpan);
        return std::nullopt;
    }
    if (!all_subsets_full_rank(normals, j, tol)) {
        reject(why, Rejection::RankDeficient);
        return std::nullopt;
    }
    Matrix q = orthonormal_basis(normals, tol);
    if (q.rows() != j) {
        reject(why, Rejection::WrongSpan);
        return std::nullopt;
    }

    std::vector<Halfspace> projected;
    for (std::size_t idx = 0; idx < subset.size(); ++idx) {
        projected.push_back({multiply(q, normals[idx]), k.halfspaces()[subset[idx]].offset});
    }
    auto g = certify_simplex(projected, tol, why);
    if (!g) return std::nullopt;

    StripSupport s;
    s.facet_indices.assign(subset.begin(), subset.end());
    s.cross_dim = j;
    s.basis = std::move(q);
    s.cross_section = std::move(*g);
    return s;
}

std::size_t SupportSet::simplex_count() const {
    return static_cast<std::size_t>(std::count_if(supports.begin(), supports.end(), is_simplex));
}

std::size_t SupportSet::strip_count() const { return supports.size() - simplex_count(); }

SupportSet enumerate_supports(const PolytopeH& k) {
    const std::size_t d = k.dim();
    const std::size_t n = k.facet_count();

    std::uint64_t total = 0;
    for (std::size_t s = 2; s <= d + 1; ++s) {
        const std::uint64_t c = binomial(n, s);
        total = (c > k.limits().max_subsets || total + c > k.limits().max_subsets) ? k.limits().max_subsets + 1
                                                                                 : total + c;
    }
    if (total > k.limits().max_subsets) {
        throw ValidationError(ValidationCode::TooLarge, "too many facet subsets to certify");
    }

    SupportSet set{k, {}};
    for (std::size_t s = 2; s <= d + 1; ++s) {
        for_each_combination(n, s, [&](std::span<const std::size_t> subset) {
            if (s == d + 1) {
                if (auto sup = try_simplex(k, subset)) set.supports.emplace_back(std::move(*sup));
            } else {
                if (auto sup = try_strip(k, subset)) set.supports.emplace_back(std::move(*sup));
            }
        });
    }
    std::stable_sort(set.supports.begin(), set.supports.end(),
                     [](const Support& a, const Support& b) { return facet_indices(a) < facet_indices(b); });

    std::vector<bool> covered(n, false);
    for (const auto& sup : set.supports) {
        for (std::size_t f : facet_indices(sup)) covered[f] = true;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (!covered[f]) throw NoCover(f);
    }
    return set;
}

bool check_minimality(const PolytopeH& k, const SimplexSupport& s, std::span<const double> b) {
    if (b.size() != k.dim()) throw std::invalid_argument("check_minimality: dimension mismatch");
    if (!(norm2(b) > 0.0)) throw std::invalid_argument("check_minimality: translation must be nonzero");
    Vector shifted(k.dim());
    for (const auto& v : k.vertices()) {
        for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] + b[i];
        for (const auto& h : s.simplex.halfspaces) {
            if (h.eval(shifted) < 0.0) return true;
        }
    }
    return false;
}

}  // namespace extremal
