#include "bubblekit/errors.hpp"
#include "bubblekit/weighted_rescale.hpp"
#include "doctest.h"
#include "random_source.hpp"

using namespace bubblekit;

namespace {

const std::vector<std::string> kCusp{"w", "z"};
const std::vector<std::string> kAk{"x1", "x2", "x3", "x0"};

PolyFamily cusp_family() { return PolyFamily::parse("w^2 - z^3 - t*z", kCusp); }
PolyFamily ak_family() {
    return PolyFamily::parse("x1^2 + x2^2 + x3^2 - x0*(x0 + t)*(x0 + t + t^2)*(x0 + t^3)*(x0 + t^3 + t^4)", kAk);
}

// (z, w) weights written in the variable order (w, z).
WeightVector zw(const Rat& z, const Rat& w) { return WeightVector({w, z}); }

}  // namespace

TEST_CASE("rescale reproduces the cusp bubbles") {
    const auto r = rescale(cusp_family(), zw(Rat(1), Rat(3, 2)), Rat(1, 2));
    CHECK(r.limit == PolyFamily::parse("w^2 - z^3 - z", kCusp));
    CHECK(r.limit.to_string() == "w^2 - z^3 - z");
    CHECK(r.dropped.is_zero());

    const auto p = rescale(cusp_family(), zw(Rat(1), Rat(1)), Rat(1));
    CHECK(p.limit == PolyFamily::parse("w^2 - z", kCusp));
    CHECK(p.dropped == PolyFamily::parse("-t*z^3", kCusp));

    CHECK(breakpoints(cusp_family(), zw(Rat(1), Rat(3, 2))) == std::vector<Rat>{Rat(1, 2)});
    CHECK(breakpoints(PolyFamily::parse("t*w^2", kCusp), zw(Rat(1), Rat(1))).empty());
}

TEST_CASE("rescale reproduces the first A_4 bubble") {
    const auto r = rescale(ak_family(), WeightVector({Rat(2), Rat(2), Rat(2), Rat(1)}), Rat(2));
    CHECK(r.limit == PolyFamily::parse("x1^2 + x2^2 + x3^2 - x0^3", kAk));
    const auto b = breakpoints(ak_family(), WeightVector({Rat(2), Rat(2), Rat(2), Rat(1)}));
    CHECK(std::find(b.begin(), b.end(), Rat(2)) != b.end());
}

TEST_CASE("cascade on the A_4 family") {
    const auto stages = iterate_cascade(ak_family(), {WeightVector({Rat(2), Rat(2), Rat(2), Rat(1)}),
                                                      WeightVector({Rat(3), Rat(3), Rat(3), Rat(2)})});
    REQUIRE(stages.size() == 2);
    CHECK(stages[0].result.c_used == Rat(2));
    CHECK(stages[0].result.limit == PolyFamily::parse("x1^2 + x2^2 + x3^2 - x0^3", kAk));
    CHECK(stages[1].result.c_used == Rat(1, 2));
    CHECK(stages[1].result.limit == PolyFamily::parse("x1^2 + x2^2 + x3^2 - x0*(x0 + 1)^2", kAk));

    CHECK_THROWS_AS(iterate_cascade(PolyFamily::parse("3", kAk), {WeightVector({Rat(1), Rat(1), Rat(1), Rat(1)})}),
                    EmptyBreakpoints);

    // uv = prod (z - z_i t): one stage at c = 1/2 gives uv = prod (z - z_i).
    const std::vector<std::string> uvz{"u", "v", "z"};
    const auto ansatz = iterate_cascade(PolyFamily::parse("u*v - (z - t)*(z + t)*(z - 2*t)", uvz),
                                        {WeightVector({Rat(3), Rat(3), Rat(2)})});
    CHECK(ansatz[0].result.c_used == Rat(1, 2));
    CHECK(ansatz[0].result.limit == PolyFamily::parse("u*v - (z - 1)*(z + 1)*(z - 2)", uvz));
}

TEST_CASE("rescale composes additively in c") {
    bubblekit::test::RandomSource rng;
    const std::vector<std::string> vars{"x", "y"};
    for (int trial = 0; trial < 100; ++trial) {
        PolyFamily f(vars);
        const long terms = rng.integer(1, 6);
        for (long k = 0; k < terms; ++k)
            f.add_term({Rat(rng.integer(0, 6), rng.integer(1, 2)),
                        {static_cast<unsigned>(rng.integer(0, 4)), static_cast<unsigned>(rng.integer(0, 4))}},
                       rng.gauss());
        if (f.is_zero()) continue;
        const WeightVector w({Rat(rng.integer(1, 4), rng.integer(1, 3)), Rat(rng.integer(1, 4), rng.integer(1, 3))});
        const Rat c1(rng.integer(1, 5), rng.integer(1, 4)), c2(rng.integer(1, 5), rng.integer(1, 4));
        CHECK(rescale(rescale(f, w, c1).rescaled, w, c2).rescaled == rescale(f, w, c1 + c2).rescaled);

        // The limit is constant between breakpoints and changes at each one.
        const auto bp = breakpoints(f, w);
        std::vector<Rat> edges{Rat(0)};
        edges.insert(edges.end(), bp.begin(), bp.end());
        edges.push_back(edges.back() + Rat(4));
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const Rat a = edges[k], b = edges[k + 1];
            const PolyFamily left = rescale(f, w, a + (b - a) / Rat(3)).limit;
            const PolyFamily right = rescale(f, w, a + (b - a) * Rat(2, 3)).limit;
            CHECK(left == right);
            if (k + 2 < edges.size()) {
                const PolyFamily at = rescale(f, w, b).limit;
                CHECK(at != right);
                CHECK(at != rescale(f, w, b + (edges[k + 2] - b) / Rat(3)).limit);
            }
        }
    }
}

TEST_CASE("cusp_classify") {
    CHECK(cusp_classify(Rat(1, 6)).kind == CuspClass::NotKlt);
    CHECK(cusp_classify(Rat(1, 6) + Rat(1, 1000000)).kind == CuspClass::Stable);
    CHECK(cusp_classify(Rat(5, 6) - Rat(1, 1000000)).kind == CuspClass::Stable);
    const auto ss = cusp_classify(Rat(5, 6));
    CHECK(ss.kind == CuspClass::StrictlySemistable);
    CHECK(ss.weights == std::pair{Rat(1), Rat(3, 2)});
    CHECK(stable_cusp_weights(Rat(5, 6)) == unstable_cusp_weights(Rat(5, 6)));
    const auto u = cusp_classify(Rat(9, 10));
    CHECK(u.kind == CuspClass::Unstable);
    CHECK(u.weights == std::pair{Rat(1), Rat(5, 4)});
    CHECK(cusp_classify(Rat(1, 2)).weights == std::pair{Rat(2), Rat(3)});
}

TEST_CASE("unstable weights degenerate the cusp to the double line") {
    for (long k = 1; k < 20; ++k) {
        const Rat beta = Rat(5, 6) + Rat(k, 120);
        if (beta >= Rat(1)) break;
        const auto [wz, ww] = unstable_cusp_weights(beta);
        CHECK(Rat(3) - Rat(2) / (Rat(2) * beta - Rat(1)) > Rat(0));
        const auto r = rescale(PolyFamily::parse("w^2 - z^3", kCusp), zw(wz, ww), Rat(1, 3));
        CHECK(r.limit == PolyFamily::parse("w^2", kCusp));
    }
}

TEST_CASE("ak_unstable_check") {
    CHECK(ak_unstable_check(3, 4));
    CHECK_FALSE(ak_unstable_check(3, 3));
    CHECK(ak_unstable_check(4, 3));
    CHECK_THROWS_AS(ak_unstable_check(2, 3), InvalidArgument);
}
