#include "bubblekit/vanishing_tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bubblekit/errors.hpp"

namespace bubblekit {

VanishingTree::VanishingTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

std::vector<NodeId> VanishingTree::interior_nodes() const {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < nodes_.size(); ++id)
        if (!nodes_[id].is_leaf()) out.push_back(id);
    return out;
}

NodeId VanishingTree::leaf_of(std::size_t index) const {
    for (NodeId id = 0; id < nodes_.size(); ++id)
        if (nodes_[id].is_leaf() && nodes_[id].members.front() == index) return id;
    throw InvalidArgument("no leaf for germ " + std::to_string(index));
}

std::optional<NodeId> VanishingTree::find(std::span<const std::size_t> members) const {
    for (NodeId id = 0; id < nodes_.size(); ++id)
        if (std::equal(nodes_[id].members.begin(), nodes_[id].members.end(), members.begin(), members.end()))
            return id;
    return std::nullopt;
}

std::vector<NodeId> VanishingTree::ancestors(NodeId id) const {
    std::vector<NodeId> out;
    for (auto p = nodes_.at(id).parent; p; p = nodes_[*p].parent) out.push_back(*p);
    std::reverse(out.begin(), out.end());
    return out;
}

VanishingTree VanishingTree::relabeled(std::span<const std::size_t> labels) const {
    std::vector<TreeNode> nodes = nodes_;
    for (auto& n : nodes) {
        for (auto& m : n.members) m = labels[m];
        std::sort(n.members.begin(), n.members.end());
    }
    return VanishingTree(std::move(nodes));
}

std::string VanishingTree::to_dot(std::span<const std::string> names) const {
    auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "p" + std::to_string(i + 1); };
    std::ostringstream out;
    out << "digraph T {\n";
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        const auto& n = nodes_[id];
        out << "  n" << id << " [label=\"{";
        for (std::size_t k = 0; k < n.members.size(); ++k) out << (k ? ", " : "") << name(n.members[k]);
        out << "}";
        if (n.split_order) out << "\\nsplit " << *n.split_order;
        out << "\"];\n";
    }
    for (NodeId id = 0; id < nodes_.size(); ++id)
        for (NodeId c : nodes_[id].children) out << "  n" << id << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

class TreeBuilder {
public:
    explicit TreeBuilder(std::span<const Germ> germs) : germs_(germs) {}

    NodeId build(std::vector<std::size_t> members, std::optional<NodeId> parent) {
        const NodeId id = nodes_.size();
        nodes_.push_back(TreeNode{members, std::nullopt, {}, parent});
        if (members.size() == 1) return id;

        unsigned split = 0;
        bool first = true;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const Order k = agree_order(germs_[members[a]], germs_[members[b]]);
                if (!k) throw AmbiguousTruncation(members[a], members[b]);
                if (first || *k < split) split = *k;
                first = false;
            }
        }
        // Members agree below `split`; children are the classes of the
        // coefficient of t^split.
        std::map<GaussRat, std::vector<std::size_t>> classes;
        for (std::size_t m : members) classes[germs_[m].coefficient(split)].push_back(m);
        std::vector<std::vector<std::size_t>> groups;
        for (auto& [c, g] : classes) groups.push_back(std::move(g));
        std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });

        nodes_[id].split_order = split;
        for (auto& g : groups) {
            const NodeId child = build(std::move(g), id);
            nodes_[id].children.push_back(child);
        }
        return id;
    }

    std::vector<TreeNode> take() { return std::move(nodes_); }

private:
    std::span<const Germ> germs_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

VanishingTree build_tree(std::span<const Germ> germs) {
    if (germs.empty()) throw InvalidArgument("build_tree needs at least one germ");
    std::vector<std::size_t> all(germs.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    TreeBuilder builder(germs);
    builder.build(std::move(all), std::nullopt);
    return VanishingTree(builder.take());
}

SectionPath section_path(std::span<const Germ> germs, const Germ& section) {
    const VanishingTree tree = build_tree(germs);
    const std::size_t n = germs.size();

    std::optional<std::size_t> match;
    for (std::size_t i = 0; i < n; ++i) {
        if (!agree_order(germs[i], section)) {
            if (match) throw AmbiguousTruncation(*match, i);
            match = i;
        }
    }

    SectionPath path;
    if (match) {
        path.terminal = {SectionTerminal::Kind::MatchesGerm, *match};
        for (NodeId a : tree.ancestors(tree.leaf_of(*match))) {
            path.nodes.push_back(a);
            path.depths.push_back(*tree.node(a).split_order);
        }
        return path;
    }

    std::vector<Germ> extended(germs.begin(), germs.end());
    extended.push_back(section);
    const VanishingTree with_section = build_tree(extended);
    for (NodeId a : with_section.ancestors(with_section.leaf_of(n))) {
        const auto& node = with_section.node(a);
        std::vector<std::size_t> rest;
        for (std::size_t m : node.members)
            if (m != n) rest.push_back(m);
        if (rest.size() == 1) {
            path.approach = LeafApproach{rest.front(), *node.split_order};
            continue;
        }
        const auto id = tree.find(rest);
        if (!id) throw std::logic_error("section path node missing from T(S)");
        path.nodes.push_back(*id);
        path.depths.push_back(*node.split_order);
    }
    return path;
}

}  // namespace bubblekit
