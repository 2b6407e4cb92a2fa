#include <algorithm>
#include <map>
#include <set>

#include "bubblekit/errors.hpp"
#include "bubblekit/vanishing_tree.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "random_source.hpp"

using namespace bubblekit;
using namespace bubblekit::test;

namespace {

std::vector<Germ> germs(std::initializer_list<const char*> texts) {
    std::vector<Germ> out;
    for (const char* t : texts) out.push_back(Germ::parse(t));
    return out;
}

std::vector<Germ> four_germs() { return germs({"t + O(t^6)", "t - t^4 + O(t^6)", "t + t^4 + O(t^6)", "t^2 + O(t^6)"}); }


}  // namespace

TEST_CASE("build_tree on the four-germ example") {
    const VanishingTree T = build_tree(four_germs());
    const auto& root = T.node(T.root());
    CHECK(root.members == MemberSet{0, 1, 2, 3});
    CHECK(root.split_order == 1u);
    REQUIRE(root.children.size() == 2);
    const auto& inner = T.node(root.children[0]);
    CHECK(inner.members == MemberSet{0, 1, 2});
    CHECK(inner.split_order == 4u);
    CHECK(inner.children.size() == 3);
    CHECK(T.node(root.children[1]).members == MemberSet{3});
    CHECK(T.size() == 6);
}

TEST_CASE("build_tree small cases") {
    const VanishingTree single = build_tree(germs({"t"}));
    CHECK(single.size() == 1);
    CHECK(single.node(0).is_leaf());

    const VanishingTree two = build_tree(germs({"0 + O(t^5)", "t^3 + O(t^5)"}));
    CHECK(two.node(0).split_order == 3u);
    CHECK(two.node(0).children.size() == 2);

    try {
        build_tree(germs({"t", "t + O(t^3)", "t^2"}));
        FAIL("expected AmbiguousTruncation");
    } catch (const AmbiguousTruncation& e) {
        CHECK(e.first() == 0);
        CHECK(e.second() == 1);
    }
}

TEST_CASE("build_tree agrees with the direct class computation") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 100; ++trial) {
        const auto S = rng.colliding_germs(static_cast<std::size_t>(rng.integer(1, 9)), 6);
        const VanishingTree T = build_tree(S);
        const auto expected = oracle_nodes(S);
        REQUIRE(T.size() == expected.size());
        CHECK(T.size() <= 2 * S.size() - 1);
        for (const auto& n : T.nodes()) {
            REQUIRE(expected.count(n.members) == 1);
            if (!n.is_leaf()) {
                CHECK(*n.split_order == expected.at(n.members));
                CHECK(n.children.size() >= 2);
                for (NodeId c : n.children)
                    if (T.node(c).split_order) CHECK(*T.node(c).split_order > *n.split_order);
            }
        }
    }
}

TEST_CASE("build_tree is invariant under affine reparameterization") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 50; ++trial) {
        auto S = rng.colliding_germs(static_cast<std::size_t>(rng.integer(2, 7)), 6);
        GaussRat a = rng.gauss();
        if (a.is_zero()) a = GaussRat(3);
        const Germ c = rng.germ(6);
        std::vector<Germ> moved;
        for (const auto& g : S) moved.push_back(a * g + c);
        const VanishingTree T1 = build_tree(S), T2 = build_tree(moved);
        REQUIRE(T1.size() == T2.size());
        for (NodeId id = 0; id < T1.size(); ++id) {
            CHECK(T1.node(id).members == T2.node(id).members);
            CHECK(T1.node(id).split_order == T2.node(id).split_order);
        }
    }
}

TEST_CASE("section_path examples") {
    const auto S = four_germs();
    const SectionPath p = section_path(S, Germ::parse("t - t^4 + t^5 + O(t^6)"));
    CHECK(p.nodes == std::vector<NodeId>{0, 1});
    CHECK(p.depths == std::vector<unsigned>{1, 4});
    CHECK(p.terminal.kind == SectionTerminal::Kind::Generic);
    REQUIRE(p.approach);
    CHECK(p.approach->germ == 1);
    CHECK(p.approach->depth == 5);

    const SectionPath q = section_path(S, Germ::parse("t^2 + O(t^6)"));
    CHECK(q.nodes == std::vector<NodeId>{0});
    CHECK(q.terminal == SectionTerminal{SectionTerminal::Kind::MatchesGerm, 3});

    const SectionPath r = section_path(germs({"0 + O(t^2)"}), Germ::parse("5*t"));
    CHECK(r.nodes.empty());
    CHECK(r.terminal.kind == SectionTerminal::Kind::Generic);

    CHECK_THROWS_AS(section_path(S, Germ::parse("t + O(t^3)")), AmbiguousTruncation);
}

TEST_CASE("section_path through S minus S_i follows the ancestors of leaf i") {
    bubblekit::test::RandomSource rng;
    for (int trial = 0; trial < 100; ++trial) {
        const auto S = rng.colliding_germs(static_cast<std::size_t>(rng.integer(2, 8)), 6);
        const VanishingTree T = build_tree(S);
        const std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(S.size()) - 1));
        std::vector<Germ> rest;
        std::vector<std::size_t> label;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (k != i) {
                rest.push_back(S[k]);
                label.push_back(k);
            }
        const SectionPath p = section_path(rest, S[i]);
        const VanishingTree Tr = build_tree(rest).relabeled(label);

        std::vector<MemberSet> expected, seen;
        std::vector<unsigned> expected_depths;
        for (NodeId a : T.ancestors(T.leaf_of(i))) {
            MemberSet m;
            for (std::size_t x : T.node(a).members)
                if (x != i) m.push_back(x);
            if (m.size() >= 2) {
                expected.push_back(m);
                expected_depths.push_back(*T.node(a).split_order);
            }
        }
        for (NodeId v : p.nodes) seen.push_back(Tr.node(v).members);
        CHECK(seen == expected);
        CHECK(p.depths == expected_depths);
    }
}
