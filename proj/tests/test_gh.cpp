#include <cmath>

#include "bubblekit/errors.hpp"
#include "bubblekit/gibbons_hawking.hpp"
#include "doctest.h"
#include "random_source.hpp"
#include "taylor_jet.hpp"

using namespace bubblekit;
using bubblekit::test::Jet;

namespace {

// 1/4 Laplacian^2 (1/f) by Taylor-mode differentiation of the closed form.
double jet_curvature(const std::vector<std::pair<Point3, double>>& monopoles, const Point3& x) {
    Jet f;
    for (const auto& [p, m] : monopoles) {
        Jet q;
        for (int k = 0; k < 3; ++k) {
            const Jet d = Jet::variable(k, x[k] - p[k]);
            q = q + d * d;
        }
        f = f + (0.5 * m) * q.power(-0.5);
    }
    return 0.25 * f.power(-1.0).bilaplacian();
}

MonopoleConfig eguchi_hanson() { return MonopoleConfig::planar({{GaussRat(1), 1u}, {GaussRat(-1), 1u}}); }

std::vector<Germ> germs(std::initializer_list<const char*> texts) {
    std::vector<Germ> out;
    for (const char* t : texts) out.push_back(Germ::parse(t));
    return out;
}

}  // namespace

TEST_CASE("potential") {
    const auto one = MonopoleConfig::planar({{GaussRat(0), 1u}});
    CHECK(potential(one, {1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(potential(eguchi_hanson(), {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    const auto three = MonopoleConfig::planar({{GaussRat(0), 3u}});
    CHECK(potential(three, {0, 0, 2}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(potential(one, {0, 0, 0}), SingularPoint);
    CHECK_THROWS_AS(MonopoleConfig::planar({{GaussRat(0), 1u}, {GaussRat(0), 2u}}), InvalidArgument);
}

TEST_CASE("potential scales inversely with the configuration") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<GaussRat, unsigned>> pts;
        for (int k = 0; k < 3; ++k) pts.emplace_back(GaussRat(Rat(k * 3 + 1), rng.rat()), 1 + k);
        const auto c = MonopoleConfig::planar(pts);
        const Rat lambda(rng.integer(1, 9), rng.integer(1, 9));
        const double l = lambda.to_double();
        const Point3 x{rng.real(-3, 3), rng.real(-3, 3), rng.real(0.5, 3)};
        const double lhs = potential(c.scaled(lambda), {l * x[0], l * x[1], l * x[2]});
        const double rhs = potential(c, x) / l;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("curvature_norm matches Taylor-mode differentiation") {
    CHECK(std::abs(jet_curvature({{{0, 0, 0}, 1.0}}, {1, 0, 0})) < 1e-12);
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::pair<GaussRat, unsigned>> pts;
        std::vector<std::pair<Point3, double>> numeric;
        const int n = static_cast<int>(rng.integer(1, 4));
        for (int k = 0; k < n; ++k) {
            const GaussRat z(Rat(2 * k), rng.rat(2, 2));
            const unsigned m = static_cast<unsigned>(rng.integer(1, 3));
            pts.emplace_back(z, m);
            numeric.push_back({{z.re.to_double(), z.im.to_double(), 0.0}, double(m)});
        }
        const auto c = MonopoleConfig::planar(pts);
        const Point3 x{rng.real(-1, 2 * n), rng.real(-2, 2), rng.real(0.3, 2)};
        const double expected = jet_curvature(numeric, x);
        const double got = curvature_norm(c, x);
        CAPTURE(expected);
        const double dist = nearest_monopole(c, x);
        CHECK(std::abs(got - expected) <= 1e-5 * std::abs(expected) + 5e-8 / (dist * dist * dist));
    }
}

TEST_CASE("curvature of the flat and Eguchi-Hanson spaces") {
    const auto one = MonopoleConfig::planar({{GaussRat(0), 1u}});
    CHECK(std::abs(curvature_norm(one, {1, 0, 0})) < 1e-6);
    const double origin = curvature_norm(eguchi_hanson(), {0, 0, 0});
    CHECK(origin > 0);
    CHECK(origin == doctest::Approx(jet_curvature({{{1, 0, 0}, 1.0}, {{-1, 0, 0}, 1.0}}, {0, 0, 0})).epsilon(1e-6));
    CHECK_THROWS_AS(curvature_norm(one, {1e-12, 0, 0}), StepUnderflow);
}

TEST_CASE("defining_equation") {
    CHECK(defining_equation(MonopoleConfig::planar({{GaussRat(0), 1u}})).to_string() == "u*v - z");
    CHECK(defining_equation(MonopoleConfig::planar({{GaussRat(0), 2u}})) ==
          PolyFamily::parse("u*v - z^2", {"u", "v", "z"}));
    CHECK(defining_equation(MonopoleConfig::planar({{GaussRat(0), 1u}, {GaussRat(1), 1u}})) ==
          PolyFamily::parse("u*v - z*(z - 1)", {"u", "v", "z"}));
    const MonopoleConfig lifted({Monopole{{Rat(0), Rat(0), Rat(1)}, 1}});
    CHECK_THROWS_AS(defining_equation(lifted), NonPlanar);
}

TEST_CASE("ak_rescaled_limits examples") {
    const auto r = ak_rescaled_limits({germs({"t + O(t^3)", "-t + O(t^3)", "t^2 + O(t^3)", "-t^2 + O(t^3)"}),
                                       Germ::parse("0 + O(t^3)")});
    REQUIRE(r.breakpoints.size() == 2);
    const auto& b1 = r.breakpoints[0];
    CHECK(b1.alpha == Rat(1, 2));
    CHECK(b1.model.config.to_string() == "{1:1, -1:1, 0:2}");
    CHECK(b1.model.basepoint_type() == "A_1");
    CHECK(b1.bubble);
    const auto& b2 = r.breakpoints[1];
    CHECK(b2.alpha == Rat(1));
    CHECK(b2.model.config.to_string() == "{1:1, -1:1}");
    CHECK(b2.model.basepoint_type() == "smooth");
    REQUIRE(r.cones.size() == 3);
    CHECK(r.cones[0].order == 4);
    CHECK(r.cones[1].order == 2);
    CHECK(r.cones[2].order == 1);

    const auto single = ak_rescaled_limits({germs({"t + O(t^2)"}), Germ::parse("0 + O(t^2)")});
    REQUIRE(single.breakpoints.size() == 1);
    CHECK(single.breakpoints[0].alpha == Rat(1, 2));
    CHECK_FALSE(single.breakpoints[0].bubble);
    CHECK(single.breakpoints[0].model.basepoint_type() == "smooth");

    const auto on = ak_rescaled_limits({germs({"t + O(t^2)", "-t + O(t^2)"}), Germ::parse("t + O(t^2)")});
    REQUIRE(on.breakpoints.size() == 1);
    CHECK(on.breakpoints[0].model.basepoint_type() == "A_0 (smooth)");
    CHECK(on.breakpoints[0].model.config.to_string() == "{0:1, -2:1}");
    CHECK(on.terminal == SectionTerminal{SectionTerminal::Kind::MatchesGerm, 0});
}

TEST_CASE("every interior node is a breakpoint for the section through its jet") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 60; ++trial) {
        const auto paths = rng.colliding_germs(static_cast<std::size_t>(rng.integer(2, 8)), 6);
        const VanishingTree T = build_tree(paths);
        for (NodeId v : T.interior_nodes()) {
            const auto& node = T.node(v);
            const unsigned d = *node.split_order;
            const Germ section = paths[node.members.front()].truncated(d);
            const auto report = ak_rescaled_limits({paths, Germ(section.coefficients(), 6)});
            const AkBreakpoint* hit = nullptr;
            for (const auto& b : report.breakpoints)
                if (b.node == v) hit = &b;
            REQUIRE(hit != nullptr);
            CHECK(hit->alpha == Rat(d) / Rat(2));
            CHECK(hit->bubble);
            CHECK(hit->model.config.total_multiplicity() == node.members.size());
            REQUIRE(hit->model.config.points().size() == node.children.size());
            for (std::size_t k = 0; k < node.children.size(); ++k) {
                const auto& w = T.node(node.children[k]);
                CHECK(hit->model.config.points()[k].multiplicity == w.members.size());
                CHECK(hit->model.config.planar_position(k) == paths[w.members.front()].coefficient(d));
            }
        }
    }
}
