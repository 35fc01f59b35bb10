#include "pqw/contour.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <utility>

#include "pqw/errors.hpp"

namespace pqw {

namespace {

using EdgeKey = std::int64_t;

struct Segment {
    EdgeKey from;
    EdgeKey to;
};

}  // namespace

std::vector<ContourLine> zero_contour(const Grid2D& grid) {
    const std::size_t nx = grid.xs.size();
    const std::size_t ny = grid.ys.size();
    if (grid.values.size() != nx * ny) throw DomainError("contour grid value count does not match its axes");
    if (nx < 2 || ny < 2) return {};

    // Edge keys: horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
    auto h_key = [&](std::size_t i, std::size_t j) { return static_cast<EdgeKey>(2 * (j * nx + i)); };
    auto v_key = [&](std::size_t i, std::size_t j) { return static_cast<EdgeKey>(2 * (j * nx + i) + 1); };

    std::map<EdgeKey, ContourPoint> crossing;
    auto edge_point = [&](EdgeKey key) -> ContourPoint {
        if (auto it = crossing.find(key); it != crossing.end()) return it->second;
        const auto base = static_cast<std::size_t>(key / 2);
        const std::size_t i = base % nx;
        const std::size_t j = base / nx;
        const bool horizontal = key % 2 == 0;
        const std::size_t i1 = horizontal ? i + 1 : i;
        const std::size_t j1 = horizontal ? j : j + 1;
        const double v0 = grid.at(i, j);
        const double v1 = grid.at(i1, j1);
        const double t = v0 / (v0 - v1);
        const ContourPoint p{grid.xs[i] + t * (grid.xs[i1] - grid.xs[i]), grid.ys[j] + t * (grid.ys[j1] - grid.ys[j])};
        crossing.emplace(key, p);
        return p;
    };

    std::vector<Segment> segments;
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            // corners counter-clockwise from bottom-left; edge k joins corner k and k+1
            const std::array<double, 4> v{grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1), grid.at(i, j + 1)};
            const std::array<EdgeKey, 4> e{h_key(i, j), v_key(i + 1, j), h_key(i, j + 1), v_key(i, j)};
            std::array<bool, 4> pos{};
            for (int k = 0; k < 4; ++k) pos[k] = v[k] >= 0.0;

            std::array<int, 4> cut{};
            int n_cut = 0;
            for (int k = 0; k < 4; ++k) {
                if (pos[k] != pos[(k + 1) % 4]) cut[n_cut++] = k;
            }
            if (n_cut == 2) {
                segments.push_back({e[cut[0]], e[cut[1]]});
            } else if (n_cut == 4) {
                const bool centre_pos = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= 0.0;
                if (centre_pos == pos[0]) {
                    // corners 0 and 2 are joined through the centre; isolate 1 and 3
                    segments.push_back({e[0], e[1]});
                    segments.push_back({e[2], e[3]});
                } else {
                    segments.push_back({e[3], e[0]});
                    segments.push_back({e[1], e[2]});
                }
            }
        }
    }

    // Each crossing point is shared by at most two segments.
    std::map<EdgeKey, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s].from].push_back(s);
        incident[segments[s].to].push_back(s);
    }

    std::vector<bool> used(segments.size(), false);
    std::vector<ContourLine> lines;
    auto trace = [&](std::size_t first, EdgeKey start) {
        ContourLine line;
        line.points.push_back(edge_point(start));
        EdgeKey at = start;
        std::size_t seg = first;
        for (;;) {
            used[seg] = true;
            const EdgeKey next = segments[seg].from == at ? segments[seg].to : segments[seg].from;
            line.points.push_back(edge_point(next));
            at = next;
            if (at == start) {
                line.closed = true;
                break;
            }
            std::size_t following = segments.size();
            for (std::size_t cand : incident[at]) {
                if (!used[cand]) following = cand;
            }
            if (following == segments.size()) break;
            seg = following;
        }
        lines.push_back(std::move(line));
    };

    // Open lines start at crossings with a single segment (grid boundary).
    for (const auto& [key, segs] : incident) {
        if (segs.size() == 1 && !used[segs[0]]) trace(segs[0], key);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s]) trace(s, segments[s].from);
    }
    return lines;
}

}  // namespace pqw
