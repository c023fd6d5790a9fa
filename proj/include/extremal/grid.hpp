/**
 * Sweeps of V_K over a 2-D real slice of C^d.
 *
 * The 2d real coordinates of z are ordered (re1, im1, re2, im2, ...). Two of
 * them vary over the grid, the rest are held at fixed values.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/evaluate.hpp"

namespace extremal {

struct GridSpec {
    std::size_t dim = 0;
    std::size_t u_coord = 0;  ///< index into the interleaved real coordinates
    std::size_t v_coord = 2;
    Vector fixed;             ///< remaining 2d - 2 coordinates, in interleaved order
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;
    std::size_t resolution = 2;

    /// Throws std::invalid_argument when the grid settings are inconsistent.
    void check() const;

    /// The complex point at grid node (iu, iv).
    ComplexVector point(std::size_t iu, std::size_t iv) const;
    double u_at(std::size_t iu) const;
    double v_at(std::size_t iv) const;
};

/// "re1", "im2", ... -> interleaved index; throws std::invalid_argument.
std::size_t parse_coordinate_name(std::string_view name, std::size_t dim);
std::string coordinate_name(std::size_t index);

/// Parses "<u>,<v>[:f1,f2,...]" (fixed values default to 0) into the plane
/// part of a GridSpec.
void parse_plane(std::string_view spec, GridSpec& grid);

struct GridSample {
    double u = 0.0;
    double v = 0.0;
    double value = 0.0;
    std::size_t argmax = 0;
};

/// Row-major with u fastest. Work is split across `jobs` threads; output
/// does not depend on the split.
std::vector<GridSample> evaluate_grid(const Evaluator& ev, const GridSpec& grid, std::size_t jobs = 1);

/// `header_comment`, when nonempty, is written as a leading "# ..." line.
void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples,
                    const std::string& header_comment = {});
void write_grid_json(std::ostream& os, const GridSpec& grid, const std::vector<GridSample>& samples,
                     const std::string& generated = {});

}  // namespace extremal
