#include <functional>

#include "bubblekit/errors.hpp"
#include "bubblekit/moduli.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "moduli_support.hpp"

using namespace bubblekit;
using namespace bubblekit::test;

namespace {

AngleVector av(std::initializer_list<Rat> b) { return AngleVector(std::vector<Rat>(b)); }




}  // namespace

TEST_CASE("non_collapse_check") {
    CHECK_FALSE(non_collapse_check(av({Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)})));
    CHECK(non_collapse_check(wall(Rat(7, 10))));
    CHECK_THROWS_AS(non_collapse_check(av({Rat(1, 2)})), GaussBonnetViolation);
}

TEST_CASE("is_beta_stable") {
    CHECK(is_beta_stable(collision(5, {}), wall(Rat(7, 10))));
    CHECK(is_beta_stable(collision(5, {0, 1, 2}), wall(Rat(7, 10))));
    CHECK_FALSE(is_beta_stable(collision(5, {0, 1, 2}), wall(Rat(6, 10))));
}

TEST_CASE("node weights, principal component and resolution") {
    const AngleVector b = av({Rat(9, 10), Rat(8, 10), Rat(1, 4), Rat(1, 20)});
    const NodalCurve two({{0, {0, 1}}, {1, {2, 3}}}, {{0, 1}});
    const NodeWeighting w = node_weights(two, b);
    CHECK(w.at(0, 1) == Rat(17, 10));
    CHECK(w.at(1, 0) == Rat(3, 10));
    CHECK(principal_component(two, b) == 1);
    const MarkedTuple r = resolve(two, b);
    CHECK(r.labels[0] == r.labels[1]);
    CHECK(r.labels[2] != r.labels[3]);
    CHECK(is_beta_stable(r, b));

    const NodalCurve one({{0, {0, 1, 2, 3}}}, {});
    CHECK(node_weights(one, b).weights.empty());
    CHECK(principal_component(one, b) == 0);
    CHECK(resolve(one, b).blocks().size() == 4);

    const AngleVector halves = av({Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(node_weights(two, halves), WeightOne);

    // Star: a centre with three petals of two marks each.
    const AngleVector six = av({Rat(2, 3), Rat(2, 3), Rat(2, 3), Rat(2, 3), Rat(2, 3), Rat(2, 3)});
    const NodalCurve star({{0, {}}, {1, {0, 1}}, {2, {2, 3}}, {3, {4, 5}}}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(principal_component(star, six) == 0);
    CHECK(resolve(star, six).blocks() == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}, {4, 5}});

    CHECK_THROWS_AS(NodalCurve({{0, {0, 1}}, {1, {2}}}, {{0, 1}}), InvalidCurve);
    CHECK_THROWS_AS(NodalCurve({{0, {0, 1, 2}}, {1, {3, 4, 5}}}, {}), InvalidCurve);
}

TEST_CASE("random stable curves resolve to stable tuples") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 100; ++trial) {
        const NodalCurve curve = bubblekit::test::random_stable_curve(rng, 6);
        const AngleVector b = bubblekit::test::random_noncollapsing(rng, curve.marked_count());
        const auto expected = brute_force_principal(curve, b);
        REQUIRE(expected.size() == 1);
        CHECK(principal_component(curve, b) == expected.front());
        const NodeWeighting w = node_weights(curve, b);
        for (auto [x, y] : curve.edges()) {
            CHECK(w.at(x, y) + w.at(y, x) == Rat(2));
            CHECK((w.at(x, y) < Rat(1)) != (w.at(y, x) < Rat(1)));
        }
        CHECK(is_beta_stable(resolve(curve, b), b));
    }
}

TEST_CASE("bubble trees and nodal curves") {
    auto g = [](const char* s) { return Germ::parse(s); };
    FamilyConfig none{{g("0"), g("1"), g("2")}, av({Rat(1, 3), Rat(1, 3), Rat(1, 3)}), Ambient::Sphere};
    const NodalCurve c0 = bubbletree_to_nodal_curve(none);
    CHECK(c0.components().size() == 1);

    FamilyConfig pair{{g("t"), g("-t"), g("1"), g("2")}, av({Rat(3, 4), Rat(3, 4), Rat(1, 4), Rat(1, 4)}),
                      Ambient::Sphere};
    const NodalCurve c1 = bubbletree_to_nodal_curve(pair);
    REQUIRE(c1.components().size() == 2);
    CHECK(c1.component(0).marks == std::vector<std::size_t>{2, 3});
    CHECK(c1.component(1).marks == std::vector<std::size_t>{0, 1});

    const Rat n(9, 10), f(1, 5);
    FamilyConfig ex{{g("t + O(t^6)"), g("t - t^4 + O(t^6)"), g("t + t^4 + O(t^6)"), g("t^2 + O(t^6)"), g("1"),
                     g("2")},
                    av({n, n, n, n, f, f}), Ambient::Sphere};
    const NodalCurve c2 = bubbletree_to_nodal_curve(ex);
    CHECK(c2.components().size() == 3);
    CHECK(principal_component(c2, ex.angles) == 0);
    CHECK(nodal_curve_to_bubbletree_shape(c2, ex.angles) == bubble_shape(ex));
}

TEST_CASE("bubble tree round trip on random sphere families") {
    bubblekit::test::RandomSource rng;
    int tested = 0;
    while (tested < 50) {
        const auto family = bubblekit::test::random_sphere_family(rng);
        if (!family) continue;
        const FamilyConfig& config = *family;
        ++tested;
        const NodalCurve curve = bubbletree_to_nodal_curve(config);
        CHECK(principal_component(curve, config.angles) == 0);
        const BubbleShape a = bubble_shape(config), b = nodal_curve_to_bubbletree_shape(curve, config.angles);
        CAPTURE(a.to_string());
        CAPTURE(b.to_string());
        CHECK(a == b);
    }
}

TEST_CASE("stability wall of the five-point family") {
    const auto triple = collision(5, {0, 1, 2});
    Rat lo = Rat(2, 3) - Rat(1, 1000), hi = Rat(2, 3) + Rat(1, 1000);
    REQUIRE_FALSE(is_beta_stable(triple, wall(lo)));
    REQUIRE(is_beta_stable(triple, wall(hi)));
    for (int step = 0; step < 40; ++step) {
        const Rat mid = (lo + hi) / Rat(2);
        (is_beta_stable(triple, wall(mid)) ? hi : lo) = mid;
    }
    CHECK(lo == Rat(2, 3));
    CHECK(hi > Rat(2, 3));
}
