#pragma once

#include <vector>

namespace pqw {

/// Scalar field sampled on a rectilinear grid. values[j * xs.size() + i] is the
/// sample at (xs[i], ys[j]).
struct Grid2D {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[j * xs.size() + i]; }
};

struct ContourPoint {
    double x = 0.0;
    double y = 0.0;
};

struct ContourLine {
    std::vector<ContourPoint> points;
    bool closed = false;
};

/// Marching-squares level set of value = 0 with linear interpolation along cell
/// edges. Samples >= 0 count as the non-negative side; saddle cells are split by
/// the sign of the cell-centre average. Segments are chained into polylines;
/// a grid with no sign change yields an empty set.
std::vector<ContourLine> zero_contour(const Grid2D& grid);

}  // namespace pqw
