#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pdsim/dubins.hpp"
#include "pdsim/geometry.hpp"

namespace pdsim {

/// Square cell grid: `resolution` x `resolution` cells covering the box
/// [center - half_extent, center + half_extent]^2. Field values live at
/// cell centers.
struct GridSpec {
    Vec2 center;
    double half_extent;
    int resolution;  // cells per axis, >= 16

    GridSpec(Vec2 c, double h, int res) : center(c), half_extent(h), resolution(res) {
        if (res < 16 || !(h > 0.0))
            throw std::invalid_argument("GridSpec: resolution >= 16 and half_extent > 0 required");
    }

    double cell_size() const { return 2.0 * half_extent / resolution; }

    Vec2 cell_center(int ix, int iy) const {
        const double cs = cell_size();
        return {center.x - half_extent + (ix + 0.5) * cs,
                center.y - half_extent + (iy + 0.5) * cs};
    }

    /// Cell indices containing `p`, clamped to the grid.
    std::pair<int, int> clamped_cell_of(Vec2 p) const;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
    }

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * resolution + ix;
    }
};

/// Minimum free-heading arrival time from `source`, evaluated closed-form at
/// every cell center (no propagation error).
struct TimeField {
    GridSpec grid;
    std::vector<double> values;  // row-major, index = iy * resolution + ix
    Configuration source;
    Kinematics kin;

    double at(int ix, int iy) const { return values[grid.index(ix, iy)]; }
};

/// A cell-membership set plus its contoured boundary. Closed polylines repeat
/// the first vertex at the end; chains clipped by the grid edge stay open.
struct Region {
    GridSpec grid;
    std::vector<std::uint8_t> membership;
    std::vector<std::vector<Vec2>> boundary;

    bool cell_member(int ix, int iy) const { return membership[grid.index(ix, iy)] != 0; }
    std::size_t member_count() const;
    bool empty() const { return member_count() == 0; }
};

struct ApolloniusDisk {
    Vec2 center;
    double radius;
};

TimeField time_field(const Configuration& source, const Kinematics& kin, const GridSpec& grid);

/// Cells reachable within time T: membership = (arrival time <= T), boundary
/// contoured at (T - arrival time) = 0.
Region reach_set(const Configuration& source, const Kinematics& kin, double T,
                 const GridSpec& grid);

/// The intruder's dominance region {x : t_A(x) <= t_D(x)}. The intruder time
/// is the turn-constrained free-heading time from xi_A; the defender time is
/// the straight-line bound ||x - x_D|| / speed_D (its turn constraint applies
/// to its rendered motion, not to the region ownership test). Membership is
/// the connected component containing the intruder.
Region dominance_region(const Configuration& xi_A, const Kinematics& kin_A,
                        const Configuration& xi_D, const Kinematics& kin_D,
                        const GridSpec& grid);

/// Holonomic-limit dominance circle; `nu` is the intruder/defender speed ratio.
ApolloniusDisk apollonius_disk(Vec2 x_A, Vec2 x_D, double nu);

/// True iff the region (member cells, refined by the boundary polylines)
/// meets the closed disk.
bool region_intersects_disk(const Region& region, Vec2 center, double radius);

/// Maximum distance of any boundary vertex from the origin.
double region_max_norm(const Region& region);

/// Per-cell debug dump: x, y, value columns (RFC-4180).
void write_time_field_csv(std::ostream& os, const TimeField& field);

/// Boundary polylines as a JSON array of [[x, y], ...] arrays.
void write_boundary_json(std::ostream& os, const Region& region);

namespace detail {
/// Contours `field` (values at cell centers) at level 0 with inside = value >= 0.
/// Quads with no corner in `component_mask` are skipped when a mask is given.
std::vector<std::vector<Vec2>> contour_polylines(const GridSpec& grid,
                                                 const std::vector<double>& field,
                                                 const std::vector<std::uint8_t>* component_mask);
}  // namespace detail

}  // namespace pdsim
