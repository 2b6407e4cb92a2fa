#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bubblekit/errors.hpp"
#include "bubblekit/numeric_verify.hpp"
#include "doctest.h"
#include "numeric_support.hpp"

using namespace bubblekit;
using namespace bubblekit::test;

namespace {

FamilyConfig plane(std::initializer_list<const char*> texts, std::vector<Rat> betas) {
    std::vector<Germ> points;
    for (const char* t : texts) points.push_back(Germ::parse(t));
    return FamilyConfig{std::move(points), AngleVector(std::move(betas)), Ambient::Plane};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_spaced(int from, int to) {
    std::vector<double> out;
    for (int k = from; k <= to; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
}



}  // namespace

TEST_CASE("path_length closed forms") {
    const Complex unit[2] = {0.0, 1.0};
    CHECK(rel(path_length({{0.0}, {0.3}}, unit), 1 / 0.3) < 1e-8);
    const Complex long_segment[2] = {Complex(1, 1), Complex(4, 5)};
    CHECK(rel(path_length({}, long_segment), 5.0) < 1e-12);

    // (1 - x^2)^{-1/4} on (-1, 1) against the Beta function and tanh-sinh.
    const ConeConfiguration pair{{-1.0, 1.0}, {0.75, 0.75}};
    const Complex across[2] = {-1.0, 1.0};
    const double value = path_length(pair, across);
    const double beta_form = std::tgamma(0.5) * std::tgamma(0.75) / std::tgamma(1.25);
    boost::math::quadrature::tanh_sinh<double> oracle;
    // xc is the distance to the nearer endpoint, so 1 - x^2 = |xc| (2 - |xc|).
    const double ts = oracle.integrate(
        [](double, double xc) { return std::pow(std::abs(xc) * (2 - std::abs(xc)), -0.25); }, -1.0, 1.0);
    CHECK(rel(beta_form, ts) < 1e-10);
    CHECK(rel(value, beta_form) < 1e-8);

    // Two cone points at the ends of a segment of length L.
    const ConeConfiguration ends{{Complex(0.5, -1), Complex(2, 1)}, {0.35, 0.8}};
    const Complex seg[2] = {ends.positions[0], ends.positions[1]};
    const double length = std::abs(seg[1] - seg[0]);
    CHECK(rel(path_length(ends, seg), std::pow(length, 0.15) * std::beta(0.35, 0.8)) < 1e-8);
}

TEST_CASE("path_length additivity and reparameterization") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 10; ++trial) {
        const ConeConfiguration c = random_plane(rng);
        const Complex a{rng.real(-3, 3), rng.real(-3, 3)};
        const Complex b{rng.real(-3, 3), rng.real(-3, 3)};
        const Complex m = a + 0.37 * (b - a);
        const Complex whole[2] = {a, b};
        const Complex split[3] = {a, m, b};
        const Complex reversed[2] = {b, a};
        QuadratureSpec spec;
        spec.rel_tol = 1e-12;
        const double l = path_length(c, whole, spec);
        CHECK(rel(path_length(c, split, spec), l) < 1e-10);
        CHECK(rel(path_length(c, reversed, spec), l) < 1e-10);
    }
    // A segment through a cone point.
    const ConeConfiguration c{{0.0}, {0.5}};
    const Complex through[2] = {-1.0, 1.0};
    CHECK(rel(path_length(c, through), 4.0) < 1e-8);
}

TEST_CASE("quadrature limits") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    spec.max_depth = 1;
    const ConeConfiguration wiggly{{Complex(0.5, 1e-3), Complex(0.25, -1e-3)}, {0.2, 0.3}};
    const Complex seg[2] = {0.0, 1.0};
    CHECK_THROWS_AS(path_length(wiggly, seg, spec), MaxDepthExceeded);
    spec.rel_tol = 0.5;
    CHECK_THROWS_AS(spec.validate(), InvalidArgument);
}

TEST_CASE("cone_angle_probe") {
    const double radii[3] = {0.1, 0.05, 0.025};
    CHECK(std::abs(cone_angle_probe({{0.0}, {2.0 / 3}}, 0.0, radii) - 2.0 / 3) < 1e-9);

    const ConeConfiguration c{{0.0, Complex(1, 0.5), Complex(-0.7, 1)}, {0.8, 0.9, 0.85}};
    CHECK(std::abs(cone_angle_probe(c, Complex(0.3, -0.6), radii) - 1) < 1e-3);
    CHECK(std::abs(cone_angle_probe(c, c.positions[1], radii) - 0.9) < 1e-3);

    const double too_big[3] = {0.8, 0.4, 0.2};
    CHECK_THROWS_AS(cone_angle_probe(c, 0.0, too_big), RadiiTooLarge);

    const double far[4] = {20, 40, 80, 160};
    CHECK(std::abs(cone_angle_at_infinity(c, far) - 0.55) < 1e-2);
}

TEST_CASE("cone_angle_probe on random configurations") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 5; ++trial) {
        const ConeConfiguration c = random_plane(rng);
        for (std::size_t i = 0; i < c.positions.size(); ++i) {
            const double m = min_separation(c, i);
            const double radii[3] = {m / 8, m / 16, m / 32};
            CHECK(std::abs(cone_angle_probe(c, c.positions[i], radii) - c.angles[i]) < 1e-3);
        }
    }
}

TEST_CASE("distance surrogate") {
    const ConeConfiguration c{{Complex(0, 0.1)}, {0.4}};
    const Complex a = -1.0, b = 1.0;
    const Complex seg[2] = {a, b};
    const double straight = path_length(c, seg);
    const double ab = distance_surrogate(c, a, b);
    const double ba = distance_surrogate(c, b, a);
    CHECK(ab <= straight);
    // Bending toward the cone point shortens the path.
    CHECK(ab < 0.99 * straight);
    CHECK(rel(ab, ba) < 1e-3);
    CHECK(rel(distance_surrogate({}, a, b), 2.0) < 1e-10);
}

TEST_CASE("scaling_slope") {
    const auto t = log_spaced(4, 12);
    const auto pair = plane({"t", "-t"}, {Rat(7, 10), Rat(6, 10)});
    const SlopeFit fit = scaling_slope(pair, Germ::parse("t"), Germ::parse("-t"), t);
    CHECK(std::abs(fit.slope - 0.3) < 0.3 * 0.02);
    CHECK(fit.r2 > 0.999);

    const auto shifted = plane({"t", "-t"}, {Rat(7, 10), Rat(6, 10)});
    const SlopeFit flat = scaling_slope(shifted, Germ::parse("3"), Germ::parse("4"), t);
    CHECK(std::abs(flat.slope) < 1e-2);

    const auto ex = plane({"t + O(t^8)", "t - t^4 + O(t^8)", "t + t^4 + O(t^8)", "t^2 + O(t^8)"}, std::vector<Rat>(4, Rat(9, 10)));
    const Germ p2 = Germ::parse("t - t^4 + O(t^8)");
    const Germ p3 = Germ::parse("t + t^4 + O(t^8)");
    const SectionAnalysis analysis = alpha_exponents(ex, p2);
    std::optional<Rat> predicted;
    for (const Breakpoint* b : analysis.levels())
        if (b->depth == 4) predicted = b->alpha;
    REQUIRE(predicted);
    CHECK(*predicted == Rat(27, 10));
    const SlopeFit deep = scaling_slope(ex, p2, p3, log_spaced(3, 7));
    CHECK(std::abs(deep.slope - predicted->to_double()) < 0.02 * predicted->to_double());

    std::ostringstream csv;
    write_csv(csv, fit);
    CHECK(csv.str().rfind("log_t,log_value\n", 0) == 0);
    const double few[3] = {1, 2, 3};
    CHECK_THROWS_AS(fit_log_log(few, few), InvalidArgument);
}

TEST_CASE("sphere_area") {
    // Three cone points of angle 2pi/3 on a line: the double of an equilateral triangle.
    const ConeConfiguration tri{{0.0, 1.0, 3.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    const Complex side[2] = {0.0, 1.0};
    const double l = path_length(tri, side);
    const double area = sphere_area(tri);
    CHECK(area > 0);
    CHECK(rel(area, std::sqrt(3.0) / 2 * l * l) < 1e-6);

    // Four right angles: the double of a rectangle.
    const ConeConfiguration pillow{{-1.0, 0.0, 0.5, 2.0}, {0.5, 0.5, 0.5, 0.5}};
    const Complex s1[2] = {-1.0, 0.0};
    const Complex s2[2] = {0.0, 0.5};
    CHECK(rel(sphere_area(pillow), 2 * path_length(pillow, s1) * path_length(pillow, s2)) < 1e-6);

    ConeConfiguration doubled = pillow;
    for (auto& p : doubled.positions) p *= 2;
    CHECK(rel(sphere_area(doubled), sphere_area(pillow) / 4) < 1e-7);

    QuadratureSpec coarse;
    coarse.rel_tol = 1e-6;
    CHECK(rel(sphere_area(tri, coarse), area) < 1e-5);
}

TEST_CASE("curvature blow-up slope") {
    const MonopoleFamily eh{{Germ::parse("t + O(t^4)"), Germ::parse("-t + O(t^4)")}, Germ::parse("0 + O(t^4)")};
    const SlopeFit fit = curvature_blowup_slope(eh, log_spaced(2, 6));
    CHECK(std::abs(fit.slope + 3) < 1e-3);
}
