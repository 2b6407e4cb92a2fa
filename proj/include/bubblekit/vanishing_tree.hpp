#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubblekit/germ.hpp"

namespace bubblekit {

using NodeId = std::size_t;

struct TreeNode {
    std::vector<std::size_t> members;  // sorted germ indices
    /// Exponent at which the members' coefficients first differ; empty for leaves.
    std::optional<unsigned> split_order;
    std::vector<NodeId> children;  // ordered by smallest member index
    std::optional<NodeId> parent;

    bool is_leaf() const noexcept { return children.empty(); }
};

/// The tree T(S) grouping germs by relative order of vanishing, with
/// single-child chains bypassed. Node 0 is the root; ids follow preorder.
class VanishingTree {
public:
    VanishingTree() = default;
    VanishingTree(std::vector<TreeNode> nodes);

    NodeId root() const noexcept { return 0; }
    const TreeNode& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    std::vector<NodeId> interior_nodes() const;
    /// Leaf whose single member is `index`.
    NodeId leaf_of(std::size_t index) const;
    /// Node with exactly this (sorted) member set, if any.
    std::optional<NodeId> find(std::span<const std::size_t> members) const;
    /// Ancestors of `id`, root first, excluding `id` itself.
    std::vector<NodeId> ancestors(NodeId id) const;

    /// Same shape with every member index i replaced by labels[i].
    VanishingTree relabeled(std::span<const std::size_t> labels) const;

    /// Graphviz digraph; `names[i]` labels germ i (defaults to "p<i+1>").
    std::string to_dot(std::span<const std::string> names = {}) const;

private:
    std::vector<TreeNode> nodes_;
};

/// Builds T(S). Throws AmbiguousTruncation when two germs agree on their whole
/// common truncation window.
VanishingTree build_tree(std::span<const Germ> germs);

struct SectionTerminal {
    enum class Kind { Generic, MatchesGerm };
    Kind kind = Kind::Generic;
    std::size_t germ = 0;  // valid for MatchesGerm

    friend bool operator==(const SectionTerminal&, const SectionTerminal&) = default;
};

/// A germ whose leaf is approached by the section beyond the last interior
/// node of the path: nu(p_i - s) = depth, with s != p_i.
struct LeafApproach {
    std::size_t germ;
    unsigned depth;
};

/// The path in T(S) traced by a section s.
struct SectionPath {
    std::vector<NodeId> nodes;     // interior nodes of T(S), root first
    std::vector<unsigned> depths;  // order at which s separates inside each node
    SectionTerminal terminal;
    std::optional<LeafApproach> approach;
};

/// Path of the section s in T(S): the root-to-{s} path of T(S u {s}) with s
/// removed from every node. When s coincides with S_i within truncation the
/// path is the interior ancestors of leaf {i}.
SectionPath section_path(std::span<const Germ> germs, const Germ& section);

}  // namespace bubblekit
