/**
 * Compact convex polytopes in halfspace form.
 *
 * A PolytopeH is only ever produced by validate() (or from_vertices_2d(),
 * which ends in validate()), so holding one means the polytope is bounded,
 * full-dimensional and every halfspace carries a facet.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "extremal/halfspace.hpp"
#include "extremal/linalg.hpp"

namespace extremal {

enum class ValidationCode {
    ZeroNormal,
    Unbounded,
    NotFullDimensional,
    RedundantHalfspace,
    Empty,
    Degenerate,
    TooLarge,
};

const char* to_string(ValidationCode code);

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationCode code, std::string what,
                    std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::move(what)), code_(code), index_(index) {}

    ValidationCode code() const { return code_; }
    /// Offending halfspace (position in the caller's input list), when one applies.
    std::optional<std::size_t> index() const { return index_; }

private:
    ValidationCode code_;
    std::optional<std::size_t> index_;
};

/// Problem-size guards for the exhaustive enumerations.
struct Limits {
    std::size_t max_facets = 24;
    std::size_t max_dim = 5;
    std::size_t max_subsets = 2'000'000;
};

/// Per vertex, the sorted indices of the halfspaces active there.
using VertexIncidence = std::vector<std::vector<std::size_t>>;

struct VertexEnumeration {
    std::vector<Vector> vertices;
    VertexIncidence incidence;
};

class PolytopeH {
public:
    std::size_t dim() const { return dim_; }
    std::size_t facet_count() const { return halfspaces_.size(); }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Vector>& vertices() const { return vertices_; }
    const VertexIncidence& incidence() const { return incidence_; }
    const Vector& interior() const { return interior_; }
    double chebyshev_radius() const { return radius_; }
    const Tolerances& tol() const { return tol_; }
    const Limits& limits() const { return limits_; }

    /// Input position of each canonical halfspace.
    const std::vector<std::size_t>& source_index() const { return source_; }

private:
    friend PolytopeH validate(std::span<const Halfspace>, std::size_t, const Tolerances&,
                              const Limits&);
    PolytopeH() = default;

    std::size_t dim_ = 0;
    std::vector<Halfspace> halfspaces_;
    std::vector<std::size_t> source_;
    std::vector<Vector> vertices_;
    VertexIncidence incidence_;
    Vector interior_;
    double radius_ = 0.0;
    Tolerances tol_;
    Limits limits_;
};

struct CanonicalHalfspaces {
    std::vector<Halfspace> halfspaces;
    std::vector<std::size_t> source;  ///< input index of each survivor
};

/// Unit-normalizes every halfspace and collapses duplicates (first occurrence
/// wins). Throws ValidationError{ZeroNormal}.
CanonicalHalfspaces canonicalize_indexed(std::span<const Halfspace> raw, const Tolerances& tol = {});
std::vector<Halfspace> canonicalize(std::span<const Halfspace> raw, const Tolerances& tol = {});

/// Solves every d-subset of full normal rank and keeps the feasible,
/// deduplicated intersection points.
VertexEnumeration enumerate_vertices(std::span<const Halfspace> halfspaces, std::size_t dim,
                                     const Tolerances& tol = {});

PolytopeH validate(std::span<const Halfspace> raw, std::size_t dim, const Tolerances& tol = {},
                   const Limits& limits = {});

bool contains(const PolytopeH& k, std::span<const double> x);

/// Convex hull (monotone chain) of planar points, one inward halfspace per
/// hull edge, then validate(). Throws ValidationError{Degenerate} for
/// collinear or too few points.
PolytopeH from_vertices_2d(std::span<const Vector> points, const Tolerances& tol = {},
                           const Limits& limits = {});

/// Counter-clockwise convex hull with collinear points dropped.
std::vector<Vector> convex_hull_2d(std::span<const Vector> points);

}  // namespace extremal
