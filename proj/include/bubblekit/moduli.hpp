#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bubblekit/flat_metrics.hpp"
#include "bubblekit/rational.hpp"

namespace bubblekit {

/// A point of CP^1: a Gaussian rational or infinity.
struct CP1Point {
    bool infinite = false;
    GaussRat value;

    static CP1Point at_infinity() { return {true, {}}; }
    std::string to_string() const { return infinite ? "inf" : value.to_string(); }
    friend bool operator==(const CP1Point&, const CP1Point&) = default;
};

/// N marked points z_i = values[labels[i]] with pairwise distinct values.
struct MarkedTuple {
    std::vector<std::size_t> labels;
    std::vector<CP1Point> values;

    void validate() const;
    /// The partition I_1 u ... u I_l of {0..N-1}; block j collects label j.
    std::vector<std::vector<std::size_t>> blocks() const;
};

struct Component {
    std::size_t id;
    std::vector<std::size_t> marks;
};

/// Dual tree of a stable nodal curve of genus zero with N marked points.
class NodalCurve {
public:
    NodalCurve() = default;
    NodalCurve(std::vector<Component> components, std::vector<std::pair<std::size_t, std::size_t>> edges);

    const std::vector<Component>& components() const noexcept { return components_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
    std::size_t marked_count() const noexcept { return marked_count_; }

    const Component& component(std::size_t id) const;
    std::vector<std::size_t> neighbours(std::size_t id) const;
    /// Marks on the side of `to` after cutting the edge {from, to}.
    std::vector<std::size_t> marks_beyond(std::size_t from, std::size_t to) const;
    /// Component carrying mark i.
    std::size_t component_of(std::size_t mark) const;

    std::string to_dot(const struct NodeWeighting* weights = nullptr) const;

private:
    std::vector<Component> components_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::size_t marked_count_ = 0;
};

/// b(y) for the node y on component `from` at the edge toward `to`.
struct DirectedWeight {
    std::size_t from;
    std::size_t to;
    Rat weight;
};

struct NodeWeighting {
    std::vector<DirectedWeight> weights;
    const Rat& at(std::size_t from, std::size_t to) const;
};

/// True iff no subset of {1 - beta_i} sums to exactly 1. Requires sum = 2.
bool non_collapse_check(const AngleVector& betas);

bool is_beta_stable(const MarkedTuple& tuple, const AngleVector& betas);

NodeWeighting node_weights(const NodalCurve& curve, const AngleVector& betas);

/// The unique component whose marked and node weights are all < 1.
std::size_t principal_component(const NodalCurve& curve, const AngleVector& betas);

/// The beta-stable tuple obtained by collapsing everything off the principal
/// component onto its nodes. Values are placeholders 0, 1, 2, ... in order of
/// first use by increasing mark index.
MarkedTuple resolve(const NodalCurve& curve, const AngleVector& betas);

/// One component per point of the limit configuration tree: the root carries
/// the unclustered marks, each interior node of a cluster tree becomes a
/// component attached to its parent. The root has id 0.
NodalCurve bubbletree_to_nodal_curve(const FamilyConfig& config);

/// Abstract bubble tree: member marks, the cone angle at infinity (none for the
/// root) and the multiset of cone angles, children ordered by smallest member.
struct BubbleShape {
    std::vector<std::size_t> members;
    std::optional<Rat> end_angle;
    std::vector<Rat> cone_angles;  // sorted
    std::vector<BubbleShape> children;

    friend bool operator==(const BubbleShape&, const BubbleShape&) = default;
    std::string to_string() const;
};

/// Shape read off a sphere family's bubble tree.
BubbleShape bubble_shape(const FamilyConfig& config);

/// Shape read off a nodal curve, rooted at its principal component: a child
/// node y contributes the cone angle 1 - b(y) and the parent node the end
/// angle b(y) - 1.
BubbleShape nodal_curve_to_bubbletree_shape(const NodalCurve& curve, const AngleVector& betas);

}  // namespace bubblekit
