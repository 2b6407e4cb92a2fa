#include "bubblekit/flat_metrics.hpp"

#include <algorithm>
#include <map>

#include "bubblekit/errors.hpp"

namespace bubblekit {

namespace {

std::string list(std::span<const std::size_t> members) {
    std::string out = "{";
    for (std::size_t k = 0; k < members.size(); ++k) out += (k ? "," : "") + std::to_string(members[k]);
    return out + "}";
}

// Groups `members` by key, ordered by the smallest member of each group.
template <class Key>
std::vector<std::pair<Key, std::vector<std::size_t>>> group_by(std::span<const std::size_t> members,
                                                             auto&& key) {
    std::map<Key, std::vector<std::size_t>> groups;
    for (std::size_t m : members) groups[key(m)].push_back(m);
    std::vector<std::pair<Key, std::vector<std::size_t>>> out(groups.begin(), groups.end());
    for (auto& [k, g] : out) std::sort(g.begin(), g.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });
    return out;
}

Rat subcone_angle_of(const AngleVector& angles, std::span<const std::size_t> members) {
    const Rat k = angles.curvature(members);
    if (k >= Rat(1))
        throw CollapseViolation("cluster " + list(members) + " has sum(1-beta) = " + k.to_string() + " >= 1",
                                std::vector<std::size_t>(members.begin(), members.end()));
    return Rat(1) - k;
}

}  // namespace

AngleVector::AngleVector(std::vector<Rat> betas) : betas_(std::move(betas)) {
    for (std::size_t i = 0; i < betas_.size(); ++i)
        if (betas_[i] <= Rat(0) || betas_[i] >= Rat(1))
            throw InvalidArgument("beta_" + std::to_string(i) + " = " + betas_[i].to_string() + " is not in (0,1)");
}

Rat AngleVector::curvature(std::span<const std::size_t> members) const {
    Rat sum;
    if (members.empty()) {
        for (const Rat& b : betas_) sum += Rat(1) - b;
    } else {
        for (std::size_t m : members) sum += Rat(1) - betas_.at(m);
    }
    return sum;
}

std::vector<std::vector<std::size_t>> FamilyConfig::clusters() const {
    std::vector<std::size_t> all(points.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    std::vector<std::vector<std::size_t>> out;
    for (auto& [value, members] : group_by<GaussRat>(all, [&](std::size_t m) { return points[m].coefficient(0); }))
        out.push_back(std::move(members));
    return out;
}

void FamilyConfig::validate() const {
    if (points.empty()) throw InvalidArgument("a family needs at least one point");
    if (points.size() != angles.size())
        throw InvalidArgument(std::to_string(points.size()) + " points but " + std::to_string(angles.size()) +
                              " angles");
    if (ambient == Ambient::Plane) {
        std::vector<std::size_t> all(points.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        subcone_angle_of(angles, all);
        return;
    }
    if (angles.curvature() != Rat(2))
        throw GaussBonnetViolation("sum(1-beta) = " + angles.curvature().to_string() + ", expected 2");
    for (const auto& c : clusters())
        if (c.size() > 1) subcone_angle_of(angles, c);
}

Rat subcone_angle(std::span<const Rat> angles) {
    Rat sum;
    for (const Rat& b : angles) {
        if (b <= Rat(0) || b >= Rat(1)) throw InvalidArgument("angle " + b.to_string() + " is not in (0,1)");
        sum += Rat(1) - b;
    }
    if (sum >= Rat(1))
        throw CollapseViolation("sum(1-beta) = " + sum.to_string() + " >= 1", {});
    return Rat(1) - sum;
}

BubbleModel bubble_at_node(const VanishingTree& tree, NodeId node, const FamilyConfig& config) {
    const TreeNode& v = tree.node(node);
    if (v.is_leaf()) throw InvalidArgument("node " + std::to_string(node) + " is a leaf");
    const unsigned k = *v.split_order;
    BubbleModel bubble;
    bubble.gamma_infinity = subcone_angle_of(config.angles, v.members);
    for (NodeId c : v.children) {
        const auto& members = tree.node(c).members;
        bubble.cone_points.push_back(ConePoint{config.points[members.front()].coefficient(k),
                                               subcone_angle_of(config.angles, members), members});
    }
    return bubble;
}

BubbleTreeReport bubble_tree(const FamilyConfig& config) {
    config.validate();
    BubbleTreeReport report;
    if (config.ambient == Ambient::Plane) {
        report.trees.push_back(build_tree(config.points));
    } else {
        for (const auto& cluster : config.clusters()) {
            if (cluster.size() < 2) continue;
            std::vector<Germ> germs;
            for (std::size_t m : cluster) germs.push_back(config.points[m]);
            report.trees.push_back(build_tree(germs).relabeled(cluster));
        }
    }
    for (std::size_t k = 0; k < report.trees.size(); ++k)
        for (NodeId id : report.trees[k].interior_nodes())
            report.bubbles.push_back({k, id, bubble_at_node(report.trees[k], id, config)});
    for (auto& members : config.clusters())
        report.limit.push_back(
            {config.points[members.front()].coefficient(0), subcone_angle_of(config.angles, members), members});
    return report;
}

std::vector<const Breakpoint*> SectionAnalysis::levels() const {
    std::vector<const Breakpoint*> out;
    for (const auto& b : breakpoints) out.push_back(&b);
    if (approach) out.push_back(&*approach);
    return out;
}

SectionAnalysis alpha_exponents(const FamilyConfig& config, const Germ& section) {
    config.validate();
    SectionAnalysis a;
    a.ambient = config.ambient;

    const GaussRat s0 = section.coefficient(0);
    for (std::size_t j = 0; j < config.points.size(); ++j)
        if (config.points[j].coefficient(0) == s0) a.cluster.push_back(j);
    if (a.cluster.empty() && config.ambient == Ambient::Sphere)
        throw ClusterMismatch("s(0) = " + s0.to_string() + " is not a point of the limit configuration");
    a.gamma = Rat(1) - config.angles.curvature(a.cluster);
    if (a.cluster.empty()) return a;

    // The tree the path lives in: T(S) on the plane, T(I_j) on the sphere.
    std::vector<std::size_t> scope;
    if (config.ambient == Ambient::Plane) {
        for (std::size_t j = 0; j < config.points.size(); ++j) scope.push_back(j);
    } else {
        scope = a.cluster;
    }
    std::vector<Germ> germs;
    for (std::size_t m : scope) germs.push_back(config.points[m]);
    const SectionPath path = section_path(germs, section);
    a.tree = build_tree(germs).relabeled(scope);

    std::optional<std::size_t> matched;
    if (path.terminal.kind == SectionTerminal::Kind::MatchesGerm) {
        matched = scope[path.terminal.germ];
        a.terminal = {SectionTerminal::Kind::MatchesGerm, *matched};
        a.terminal_angle = config.angles[*matched];
    }

    std::vector<unsigned> depth_set;
    for (std::size_t j : a.cluster) {
        if (j == matched) continue;
        const Order d = agree_order(config.points[j], section);
        a.orders.push_back({j, *d, config.angles[j]});
        depth_set.push_back(*d);
    }
    std::sort(depth_set.begin(), depth_set.end());
    depth_set.erase(std::unique(depth_set.begin(), depth_set.end()), depth_set.end());

    // Path nodes with positive depth, in the same order as depth_set.
    std::vector<std::pair<NodeId, unsigned>> nodes;
    for (std::size_t k = 0; k < path.nodes.size(); ++k)
        if (path.depths[k] > 0) nodes.emplace_back(path.nodes[k], path.depths[k]);

    std::size_t next_node = 0;
    for (unsigned d : depth_set) {
        Breakpoint b;
        b.depth = d;
        b.alpha = alpha_of_lambda(a, Rat(d));
        for (std::size_t j : a.cluster) {
            if (j == matched) {
                b.members.push_back(j);
                continue;
            }
            if (*agree_order(config.points[j], section) >= d) b.members.push_back(j);
        }
        b.cone_gamma = subcone_angle_of(config.angles, b.members);
        b.bubble.gamma_infinity = b.cone_gamma;
        auto groups = group_by<GaussRat>(
            b.members, [&](std::size_t m) { return (config.points[m] - section).coefficient(d); });
        for (auto& [position, members] : groups)
            b.bubble.cone_points.push_back({position, subcone_angle_of(config.angles, members), members});

        if (b.members.size() >= 2) {
            if (next_node >= nodes.size() || nodes[next_node].second != d ||
                a.tree.node(nodes[next_node].first).members != b.members)
                throw std::logic_error("section levels disagree with the tree path");
            b.node = nodes[next_node++].first;
            a.breakpoints.push_back(std::move(b));
        } else {
            a.approach = std::move(b);
        }
    }
    if (next_node != nodes.size()) throw std::logic_error("section levels disagree with the tree path");
    return a;
}

RescaledLimit classify_rescaled_limit(const SectionAnalysis& analysis, const Rat& alpha) {
    if (alpha <= Rat(0)) throw InvalidArgument("alpha must be positive");
    const auto levels = analysis.levels();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (alpha < levels[k]->alpha) return ConeLimit{{levels[k]->cone_gamma}};
        if (alpha == levels[k]->alpha) return BubbleLimit{levels[k]->bubble, k};
    }
    if (analysis.terminal.kind == SectionTerminal::Kind::MatchesGerm) return ConeLimit{{analysis.terminal_angle}};
    return PlaneLimit{};
}

Rat alpha_of_lambda(const SectionAnalysis& analysis, const Rat& lambda) {
    if (lambda < Rat(0)) throw InvalidArgument("lambda must be non-negative");
    Rat alpha = analysis.gamma * lambda;
    for (const auto& o : analysis.orders)
        if (Rat(o.depth) < lambda) alpha += (Rat(1) - o.beta) * (lambda - Rat(o.depth));
    return alpha;
}

}  // namespace bubblekit
