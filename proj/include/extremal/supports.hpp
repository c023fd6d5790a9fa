/**
 * Supporting simplices and strips of a polytope.
 *
 * A subset of d+1 facets defines a supporting simplex when, for each j,
 * the other d facet hyperplanes meet in a single point p_j and l_j(p_j) > 0.
 * A subset of j+1 facets (j < d) whose normals span a j-dimensional space,
 * with every j of them independent, defines a strip: after projecting onto
 * that span the same test must hold in R^j.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "extremal/linalg.hpp"
#include "extremal/polytope.hpp"

namespace extremal {

/// Simplex given both ways: its facet halfspaces and its apexes, with
/// apexes[j] opposite halfspaces[j].
struct SimplexGeometry {
    std::vector<Halfspace> halfspaces;
    std::vector<Vector> apexes;

    std::size_t dim() const { return apexes.empty() ? 0 : apexes.front().size(); }
};

struct SimplexSupport {
    std::vector<std::size_t> facet_indices;
    SimplexGeometry simplex;
};

struct StripSupport {
    std::vector<std::size_t> facet_indices;
    std::size_t cross_dim = 0;
    Matrix basis;                  ///< cross_dim x d, orthonormal rows
    SimplexGeometry cross_section;  ///< expressed in basis coordinates
};

using Support = std::variant<SimplexSupport, StripSupport>;

const std::vector<std::size_t>& facet_indices(const Support& s);
bool is_simplex(const Support& s);

enum class Rejection {
    RankDeficient,     ///< some d-subset of normals is dependent
    WrongSpan,         ///< strip normals do not span exactly j dimensions
    SolveFailed,
    NotPositive,       ///< l_j(p_j) <= pos_abs for some j
};

/// Condition check shared by simplices and strip cross-sections.
std::optional<SimplexGeometry> certify_simplex(std::span<const Halfspace> halfspaces,
                                               const Tolerances& tol = {},
                                               Rejection* why = nullptr);

std::optional<SimplexSupport> try_simplex(const PolytopeH& k, std::span<const std::size_t> subset,
                                          Rejection* why = nullptr);

std::optional<StripSupport> try_strip(const PolytopeH& k, std::span<const std::size_t> subset,
                                      Rejection* why = nullptr);

class NoCover : public std::runtime_error {
public:
    explicit NoCover(std::size_t facet)
        : std::runtime_error("facet " + std::to_string(facet) + " lies in no supporting simplex or strip"),
          facet_(facet) {}
    std::size_t facet() const { return facet_; }

private:
    std::size_t facet_;
};

struct SupportSet {
    PolytopeH polytope;
    std::vector<Support> supports;  ///< sorted lexicographically by facet indices

    std::size_t size() const { return supports.size(); }
    std::size_t simplex_count() const;
    std::size_t strip_count() const;
};

/// Certifies every facet subset of size 2..d+1. Throws NoCover if some
/// facet ends up in no support, ValidationError{TooLarge} beyond the subset
/// guard.
SupportSet enumerate_supports(const PolytopeH& k);

/// True iff some vertex v of K and some facet of S have l(v + b) < 0.
bool check_minimality(const PolytopeH& k, const SimplexSupport& s, std::span<const double> b);

}  // namespace extremal
