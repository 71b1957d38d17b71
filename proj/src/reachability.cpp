#include "pdsim/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "pdsim/errors.hpp"
#include "pdsim/parallel.hpp"

namespace pdsim {

std::pair<int, int> GridSpec::clamped_cell_of(Vec2 p) const {
    const double cs = cell_size();
    int ix = static_cast<int>(std::floor((p.x - (center.x - half_extent)) / cs));
    int iy = static_cast<int>(std::floor((p.y - (center.y - half_extent)) / cs));
    ix = std::clamp(ix, 0, resolution - 1);
    iy = std::clamp(iy, 0, resolution - 1);
    return {ix, iy};
}

std::size_t Region::member_count() const {
    std::size_t n = 0;
    for (auto m : membership) n += m;
    return n;
}

TimeField time_field(const Configuration& source, const Kinematics& kin, const GridSpec& grid) {
    TimeField field{grid, std::vector<double>(grid.cell_count()), source, kin};
    const int res = grid.resolution;
    parallel_for(static_cast<std::size_t>(res), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t iy = lo; iy < hi; ++iy)
            for (int ix = 0; ix < res; ++ix)
                field.values[grid.index(ix, static_cast<int>(iy))] =
                    time_to_point(source, grid.cell_center(ix, static_cast<int>(iy)), kin);
    });
    return field;
}

namespace detail {

namespace {

struct EdgeKey {
    std::size_t id;
    bool operator==(const EdgeKey&) const = default;
};

struct Chainer {
    const GridSpec& grid;
    std::vector<std::pair<std::size_t, std::size_t>> segments;  // edge-key pairs
    std::unordered_map<std::size_t, Vec2> points;               // edge key -> contour point

    std::size_t h_key(int i, int j) const {
        return static_cast<std::size_t>(j) * (grid.resolution - 1) + i;
    }
    std::size_t v_key(int i, int j) const {
        const std::size_t h_count =
            static_cast<std::size_t>(grid.resolution) * (grid.resolution - 1);
        return h_count + static_cast<std::size_t>(j) * grid.resolution + i;
    }
};

Vec2 interp(const GridSpec& grid, int ix0, int iy0, int ix1, int iy1, double g0, double g1) {
    double t = 0.5;
    const double denom = g0 - g1;
    if (std::abs(denom) > 0.0) t = std::clamp(g0 / denom, 0.0, 1.0);
    const Vec2 a = grid.cell_center(ix0, iy0);
    const Vec2 b = grid.cell_center(ix1, iy1);
    return a + t * (b - a);
}

double signed_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) s += poly[k].cross(poly[k + 1]);
    return 0.5 * s;
}

}  // namespace

std::vector<std::vector<Vec2>> contour_polylines(const GridSpec& grid,
                                                 const std::vector<double>& field,
                                                 const std::vector<std::uint8_t>* mask) {
    const int res = grid.resolution;
    Chainer ch{grid, {}, {}};
    auto g = [&](int i, int j) { return field[grid.index(i, j)]; };
    auto in_mask = [&](int i, int j) { return mask == nullptr || (*mask)[grid.index(i, j)] != 0; };

    for (int j = 0; j + 1 < res; ++j) {
        for (int i = 0; i + 1 < res; ++i) {
            const double g00 = g(i, j), g10 = g(i + 1, j);
            const double g11 = g(i + 1, j + 1), g01 = g(i, j + 1);
            const bool b0 = g00 >= 0.0, b1 = g10 >= 0.0, b2 = g11 >= 0.0, b3 = g01 >= 0.0;
            const int code = (b0 ? 1 : 0) | (b1 ? 2 : 0) | (b2 ? 4 : 0) | (b3 ? 8 : 0);
            if (code == 0 || code == 15) continue;
            if (!(in_mask(i, j) || in_mask(i + 1, j) || in_mask(i + 1, j + 1) ||
                  in_mask(i, j + 1)))
                continue;

            // quad edges: e0 bottom, e1 right, e2 top, e3 left
            auto emit = [&](int ea, int eb) {
                auto edge_of = [&](int e) -> std::pair<std::size_t, Vec2> {
                    switch (e) {
                        case 0:
                            return {ch.h_key(i, j), interp(grid, i, j, i + 1, j, g00, g10)};
                        case 1:
                            return {ch.v_key(i + 1, j),
                                    interp(grid, i + 1, j, i + 1, j + 1, g10, g11)};
                        case 2:
                            return {ch.h_key(i, j + 1),
                                    interp(grid, i, j + 1, i + 1, j + 1, g01, g11)};
                        default:
                            return {ch.v_key(i, j), interp(grid, i, j, i, j + 1, g00, g01)};
                    }
                };
                auto [ka, pa] = edge_of(ea);
                auto [kb, pb] = edge_of(eb);
                ch.points.emplace(ka, pa);
                ch.points.emplace(kb, pb);
                ch.segments.emplace_back(ka, kb);
            };

            switch (code) {
                case 1: emit(0, 3); break;
                case 2: emit(0, 1); break;
                case 3: emit(3, 1); break;
                case 4: emit(1, 2); break;
                case 6: emit(0, 2); break;
                case 7: emit(3, 2); break;
                case 8: emit(3, 2); break;
                case 9: emit(0, 2); break;
                case 11: emit(1, 2); break;
                case 12: emit(3, 1); break;
                case 13: emit(0, 1); break;
                case 14: emit(0, 3); break;
                case 5: {
                    const bool center_in = (g00 + g10 + g11 + g01) >= 0.0;
                    if (center_in) { emit(0, 1); emit(2, 3); }
                    else { emit(0, 3); emit(1, 2); }
                    break;
                }
                case 10: {
                    const bool center_in = (g00 + g10 + g11 + g01) >= 0.0;
                    if (center_in) { emit(0, 3); emit(1, 2); }
                    else { emit(0, 1); emit(2, 3); }
                    break;
                }
                default: break;
            }
        }
    }

    // chain segments into polylines via shared edge keys
    std::unordered_map<std::size_t, std::vector<std::size_t>> adj;  // edge key -> segment ids
    for (std::size_t s = 0; s < ch.segments.size(); ++s) {
        adj[ch.segments[s].first].push_back(s);
        adj[ch.segments[s].second].push_back(s);
    }
    std::vector<bool> used(ch.segments.size(), false);
    std::vector<std::vector<Vec2>> polylines;

    for (std::size_t s0 = 0; s0 < ch.segments.size(); ++s0) {
        if (used[s0]) continue;
        std::deque<std::size_t> keys{ch.segments[s0].first, ch.segments[s0].second};
        used[s0] = true;
        // grow at both ends until stuck or closed
        for (const bool front : {false, true}) {
            while (true) {
                const std::size_t end_key = front ? keys.front() : keys.back();
                const std::size_t other_end = front ? keys.back() : keys.front();
                if (keys.size() > 2 && end_key == other_end) break;  // closed
                const auto it = adj.find(end_key);
                std::size_t next_seg = std::numeric_limits<std::size_t>::max();
                for (const std::size_t s : it->second)
                    if (!used[s]) { next_seg = s; break; }
                if (next_seg == std::numeric_limits<std::size_t>::max()) break;
                used[next_seg] = true;
                const auto [a, b] = ch.segments[next_seg];
                const std::size_t nk = (a == end_key) ? b : a;
                if (front) keys.push_front(nk); else keys.push_back(nk);
            }
        }
        std::vector<Vec2> poly;
        poly.reserve(keys.size());
        for (const std::size_t k : keys) poly.push_back(ch.points.at(k));
        if (keys.size() > 2 && keys.front() == keys.back() && signed_area(poly) < 0.0)
            std::reverse(poly.begin(), poly.end());
        polylines.push_back(std::move(poly));
    }
    return polylines;
}

}  // namespace detail

namespace {

std::vector<std::uint8_t> flood_component(const GridSpec& grid,
                                          const std::vector<std::uint8_t>& membership,
                                          Vec2 seed_pos) {
    const int res = grid.resolution;
    auto [sx, sy] = grid.clamped_cell_of(seed_pos);
    if (membership[grid.index(sx, sy)] == 0) {
        // nearest member cell to the seed position
        double best = std::numeric_limits<double>::infinity();
        int bx = -1, by = -1;
        for (int iy = 0; iy < res; ++iy)
            for (int ix = 0; ix < res; ++ix)
                if (membership[grid.index(ix, iy)]) {
                    const double d2 = (grid.cell_center(ix, iy) - seed_pos).squared_norm();
                    if (d2 < best) { best = d2; bx = ix; by = iy; }
                }
        if (bx < 0) return std::vector<std::uint8_t>(grid.cell_count(), 0);
        sx = bx; sy = by;
    }
    std::vector<std::uint8_t> comp(grid.cell_count(), 0);
    std::deque<std::pair<int, int>> queue{{sx, sy}};
    comp[grid.index(sx, sy)] = 1;
    while (!queue.empty()) {
        auto [ix, iy] = queue.front();
        queue.pop_front();
        const int nbr[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
        for (const auto& n : nbr) {
            if (n[0] < 0 || n[0] >= res || n[1] < 0 || n[1] >= res) continue;
            const std::size_t k = grid.index(n[0], n[1]);
            if (membership[k] && !comp[k]) {
                comp[k] = 1;
                queue.emplace_back(n[0], n[1]);
            }
        }
    }
    return comp;
}

}  // namespace

Region reach_set(const Configuration& source, const Kinematics& kin, double T,
                 const GridSpec& grid) {
    const TimeField field = time_field(source, kin, grid);
    std::vector<double> level(field.values.size());
    std::vector<std::uint8_t> membership(field.values.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
        level[k] = T - field.values[k];
        membership[k] = level[k] >= 0.0 ? 1 : 0;
    }
    Region region{grid, std::move(membership), {}};
    region.boundary = detail::contour_polylines(grid, level, nullptr);
    return region;
}

Region dominance_region(const Configuration& xi_A, const Kinematics& kin_A,
                        const Configuration& xi_D, const Kinematics& kin_D,
                        const GridSpec& grid) {
    if ((xi_A.position - xi_D.position).norm() == 0.0) throw CollocatedError{};
    const TimeField t_a = time_field(xi_A, kin_A, grid);
    const int res = grid.resolution;
    std::vector<double> gap(grid.cell_count());
    std::vector<std::uint8_t> membership(grid.cell_count());
    for (int iy = 0; iy < res; ++iy) {
        for (int ix = 0; ix < res; ++ix) {
            const std::size_t k = grid.index(ix, iy);
            const double t_d = (grid.cell_center(ix, iy) - xi_D.position).norm() / kin_D.speed;
            gap[k] = t_d - t_a.values[k];
            membership[k] = gap[k] >= 0.0 ? 1 : 0;
        }
    }
    auto component = flood_component(grid, membership, xi_A.position);
    Region region{grid, std::move(component), {}};
    if (!region.empty())
        region.boundary = detail::contour_polylines(grid, gap, &region.membership);
    return region;
}

ApolloniusDisk apollonius_disk(Vec2 x_A, Vec2 x_D, double nu) {
    if (!(nu > 0.0) || !(nu < 1.0)) throw SpeedRatioError(nu);
    const double alpha = 1.0 / (1.0 - nu * nu);
    const double beta = nu * nu * alpha;
    const double gamma = nu * alpha;
    return {alpha * x_A - beta * x_D, gamma * (x_A - x_D).norm()};
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squared_norm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

bool region_intersects_disk(const Region& region, Vec2 center, double radius) {
    const GridSpec& grid = region.grid;
    // member cell centers inside the disk (scan restricted to the disk's bbox)
    const auto [ix_lo, iy_lo] = grid.clamped_cell_of(center - Vec2{radius, radius});
    const auto [ix_hi, iy_hi] = grid.clamped_cell_of(center + Vec2{radius, radius});
    const double r2 = radius * radius;
    for (int iy = iy_lo; iy <= iy_hi; ++iy)
        for (int ix = ix_lo; ix <= ix_hi; ++ix)
            if (region.cell_member(ix, iy) &&
                (grid.cell_center(ix, iy) - center).squared_norm() <= r2)
                return true;
    // the cell holding the disk center (covers disks smaller than a cell)
    const auto [cx, cy] = grid.clamped_cell_of(center);
    if (region.cell_member(cx, cy)) return true;
    // sub-cell refinement against the boundary polylines
    for (const auto& poly : region.boundary) {
        for (std::size_t k = 0; k < poly.size(); ++k) {
            if ((poly[k] - center).squared_norm() <= r2) return true;
            if (k + 1 < poly.size() &&
                point_segment_distance(center, poly[k], poly[k + 1]) <= radius)
                return true;
        }
    }
    return false;
}

double region_max_norm(const Region& region) {
    if (region.empty()) throw EmptyRegionError{};
    double best = 0.0;
    bool have_vertex = false;
    for (const auto& poly : region.boundary)
        for (const Vec2& v : poly) {
            best = std::max(best, v.norm());
            have_vertex = true;
        }
    if (!have_vertex) {
        // no contour (e.g. the whole grid is member): fall back to cell centers
        for (int iy = 0; iy < region.grid.resolution; ++iy)
            for (int ix = 0; ix < region.grid.resolution; ++ix)
                if (region.cell_member(ix, iy))
                    best = std::max(best, region.grid.cell_center(ix, iy).norm());
    }
    return best;
}

void write_time_field_csv(std::ostream& os, const TimeField& field) {
    os << "x,y,value\r\n";
    char buf[96];
    for (int iy = 0; iy < field.grid.resolution; ++iy)
        for (int ix = 0; ix < field.grid.resolution; ++ix) {
            const Vec2 c = field.grid.cell_center(ix, iy);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\r\n", c.x, c.y, field.at(ix, iy));
            os << buf;
        }
}

void write_boundary_json(std::ostream& os, const Region& region) {
    char buf[64];
    os << "[";
    for (std::size_t p = 0; p < region.boundary.size(); ++p) {
        if (p) os << ",";
        os << "[";
        const auto& poly = region.boundary[p];
        for (std::size_t k = 0; k < poly.size(); ++k) {
            if (k) os << ",";
            std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", poly[k].x, poly[k].y);
            os << buf;
        }
        os << "]";
    }
    os << "]";
}

}  // namespace pdsim
