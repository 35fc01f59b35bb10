#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pqw/contour.hpp"
#include "pqw/output.hpp"
#include "pqw/sweep.hpp"

using namespace pqw;

namespace {

Grid2D sample(std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1, auto&& f) {
    Grid2D g;
    for (std::size_t i = 0; i < nx; ++i) g.xs.push_back(x0 + static_cast<double>(i) * (x1 - x0) / static_cast<double>(nx - 1));
    for (std::size_t j = 0; j < ny; ++j) g.ys.push_back(y0 + static_cast<double>(j) * (y1 - y0) / static_cast<double>(ny - 1));
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) g.values.push_back(f(g.xs[i], g.ys[j]));
    }
    return g;
}

}  // namespace

TEST_CASE("constant grid has no contour") {
    CHECK(zero_contour(sample(10, 10, 0, 1, 0, 1, [](double, double) { return 1.0; })).empty());
    CHECK(zero_contour(sample(10, 10, 0, 1, 0, 1, [](double, double) { return -2.0; })).empty());
}

TEST_CASE("linear field gives a vertical line at x = 0.5") {
    const auto lines = zero_contour(sample(11, 7, 0, 1, 0, 1, [](double x, double) { return x - 0.5; }));
    REQUIRE(lines.size() == 1);
    CHECK_FALSE(lines[0].closed);
    CHECK(lines[0].points.size() == 7);
    for (const auto& p : lines[0].points) CHECK(std::abs(p.x - 0.5) < 0.1);
    CHECK(lines[0].points.front().y != lines[0].points.back().y);
}

TEST_CASE("off-node crossing is linearly interpolated") {
    const auto lines = zero_contour(sample(5, 3, 0, 1, 0, 1, [](double x, double) { return x - 0.3; }));
    REQUIRE(lines.size() == 1);
    for (const auto& p : lines[0].points) CHECK(p.x == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("bump gives one closed loop near the circle") {
    const auto lines =
        zero_contour(sample(41, 41, -1, 1, -1, 1, [](double x, double y) { return 0.25 - (x * x + y * y); }));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].closed);
    CHECK(lines[0].points.front().x == lines[0].points.back().x);
    for (const auto& p : lines[0].points) CHECK(std::abs(std::hypot(p.x, p.y) - 0.5) < 0.02);
}

TEST_CASE("two separate bumps give two loops and saddles stay consistent") {
    auto f = [](double x, double y) { return std::sin(3.0 * x) * std::sin(3.0 * y); };
    const auto lines = zero_contour(sample(33, 33, -2, 2, -2, 2, f));
    CHECK_FALSE(lines.empty());
    std::size_t points = 0;
    for (const auto& l : lines) {
        CHECK(l.points.size() >= 2);
        points += l.points.size();
        for (const auto& p : l.points) {
            CHECK(p.x >= -2.0);
            CHECK(p.x <= 2.0);
        }
    }
    CHECK(points > 50);

    const auto loops = zero_contour(sample(60, 30, 0, 2, 0, 1, [](double x, double y) {
        const double a = std::hypot(x - 0.5, y - 0.5);
        const double b = std::hypot(x - 1.5, y - 0.5);
        return 0.3 - std::min(a, b);
    }));
    REQUIRE(loops.size() == 2);
    CHECK(loops[0].closed);
    CHECK(loops[1].closed);
}

TEST_CASE("mismatched grid is rejected and single-row grids have no contour") {
    Grid2D g;
    g.xs = {0, 1};
    g.ys = {0, 1};
    g.values = {1, 2, 3};
    CHECK_THROWS(zero_contour(g));
    g.ys = {0};
    g.values = {1, -1};
    CHECK(zero_contour(g).empty());
}

TEST_CASE("initial-state scan for ABB has a closed zero contour in the lower-left quadrant") {
    const Preset p = preset("initial-state-scan");
    const SweepResult abb = run_sweep(p.panels[3], 0);
    REQUIRE(abb.spec.game.sequence == "ABB");
    const auto lines = zero_contour(expectation_grid(abb));
    bool found = false;
    for (const auto& l : lines) {
        if (!l.closed) continue;
        bool inside = true;
        for (const auto& pt : l.points) inside = inside && pt.x < kPi / 2.0 && pt.y < kPi;
        found = found || inside;
    }
    CHECK(found);
}
