#include "bubblekit/moduli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "bubblekit/errors.hpp"

namespace bubblekit {

void MarkedTuple::validate() const {
    for (std::size_t l : labels)
        if (l >= values.size()) throw InvalidArgument("label " + std::to_string(l) + " has no value");
    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            if (values[a] == values[b]) throw InvalidArgument("tuple values must be distinct");
}

std::vector<std::vector<std::size_t>> MarkedTuple::blocks() const {
    std::vector<std::vector<std::size_t>> out(values.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out.at(labels[i]).push_back(i);
    std::erase_if(out, [](const auto& b) { return b.empty(); });
    return out;
}

NodalCurve::NodalCurve(std::vector<Component> components, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : components_(std::move(components)), edges_(std::move(edges)) {
    if (components_.empty()) throw InvalidCurve("a curve needs at least one component");
    std::set<std::size_t> ids;
    std::set<std::size_t> marks;
    for (auto& c : components_) {
        if (!ids.insert(c.id).second) throw InvalidCurve("duplicate component id " + std::to_string(c.id));
        std::sort(c.marks.begin(), c.marks.end());
        for (std::size_t m : c.marks)
            if (!marks.insert(m).second) throw InvalidCurve("mark " + std::to_string(m) + " appears twice");
        marked_count_ += c.marks.size();
    }
    if (!marks.empty() && *marks.rbegin() + 1 != marks.size())
        throw InvalidCurve("marks must be exactly 0.." + std::to_string(marks.size() - 1));
    if (edges_.size() + 1 != components_.size()) throw InvalidCurve("the dual graph is not a tree");
    std::map<std::size_t, std::size_t> parent;
    for (std::size_t id : ids) parent[id] = id;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [a, b] : edges_) {
        if (!ids.count(a) || !ids.count(b)) throw InvalidCurve("edge refers to an unknown component");
        if (find(a) == find(b)) throw InvalidCurve("the dual graph has a cycle");
        parent[find(a)] = find(b);
    }
    for (const auto& c : components_)
        if (c.marks.size() + neighbours(c.id).size() < 3)
            throw InvalidCurve("component " + std::to_string(c.id) + " has fewer than 3 special points");
}

const Component& NodalCurve::component(std::size_t id) const {
    for (const auto& c : components_)
        if (c.id == id) return c;
    throw InvalidArgument("unknown component " + std::to_string(id));
}

std::vector<std::size_t> NodalCurve::neighbours(std::size_t id) const {
    std::vector<std::size_t> out;
    for (auto [a, b] : edges_) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> NodalCurve::marks_beyond(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> out;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t at, std::size_t prev) {
        const auto& m = component(at).marks;
        out.insert(out.end(), m.begin(), m.end());
        for (std::size_t n : neighbours(at))
            if (n != prev) walk(n, at);
    };
    walk(to, from);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t NodalCurve::component_of(std::size_t mark) const {
    for (const auto& c : components_)
        if (std::binary_search(c.marks.begin(), c.marks.end(), mark)) return c.id;
    throw InvalidArgument("unknown mark " + std::to_string(mark));
}

std::string NodalCurve::to_dot(const NodeWeighting* weights) const {
    std::ostringstream out;
    out << "graph C {\n";
    for (const auto& c : components_) {
        out << "  c" << c.id << " [label=\"C" << c.id << "\\n{";
        for (std::size_t k = 0; k < c.marks.size(); ++k) out << (k ? ", " : "") << "x" << c.marks[k] + 1;
        out << "}\"];\n";
    }
    for (auto [a, b] : edges_) {
        out << "  c" << a << " -- c" << b;
        if (weights)
            out << " [taillabel=\"" << weights->at(a, b).to_string() << "\", headlabel=\""
                << weights->at(b, a).to_string() << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

const Rat& NodeWeighting::at(std::size_t from, std::size_t to) const {
    for (const auto& w : weights)
        if (w.from == from && w.to == to) return w.weight;
    throw InvalidArgument("no node between components " + std::to_string(from) + " and " + std::to_string(to));
}

namespace {

void require_gauss_bonnet(const AngleVector& betas) {
    if (betas.curvature() != Rat(2))
        throw GaussBonnetViolation("sum(1-beta) = " + betas.curvature().to_string() + ", expected 2");
}

}  // namespace

bool non_collapse_check(const AngleVector& betas) {
    require_gauss_bonnet(betas);
    // Subset sums not exceeding 1; each b_i is positive so larger sums never return to 1.
    std::set<Rat> sums{Rat(0)};
    for (const Rat& beta : betas.betas()) {
        const Rat b = Rat(1) - beta;
        std::vector<Rat> added;
        for (const Rat& s : sums) {
            const Rat next = s + b;
            if (next == Rat(1)) return false;
            if (next < Rat(1)) added.push_back(next);
        }
        sums.insert(added.begin(), added.end());
    }
    return true;
}

bool is_beta_stable(const MarkedTuple& tuple, const AngleVector& betas) {
    if (tuple.labels.size() != betas.size())
        throw InvalidArgument("tuple has " + std::to_string(tuple.labels.size()) + " points but " +
                              std::to_string(betas.size()) + " angles");
    for (const auto& block : tuple.blocks())
        if (betas.curvature(block) >= Rat(1)) return false;
    return true;
}

NodeWeighting node_weights(const NodalCurve& curve, const AngleVector& betas) {
    require_gauss_bonnet(betas);
    if (curve.marked_count() != betas.size()) throw InvalidArgument("curve and angle vector sizes differ");
    NodeWeighting w;
    for (auto [a, b] : curve.edges()) {
        for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
            const Rat weight = betas.curvature(curve.marks_beyond(from, to));
            if (weight == Rat(1))
                throw WeightOne("node between components " + std::to_string(from) + " and " + std::to_string(to) +
                                " has weight 1");
            w.weights.push_back({from, to, weight});
        }
    }
    return w;
}

std::size_t principal_component(const NodalCurve& curve, const AngleVector& betas) {
    const NodeWeighting w = node_weights(curve, betas);
    std::vector<std::size_t> found;
    for (const auto& c : curve.components()) {
        bool ok = true;
        for (std::size_t n : curve.neighbours(c.id)) ok = ok && w.at(c.id, n) < Rat(1);
        if (ok) found.push_back(c.id);
    }
    if (found.empty()) throw PrincipalNotFound("no component has all weights below 1");
    if (found.size() > 1)
        throw PrincipalNotUnique("components " + std::to_string(found[0]) + " and " + std::to_string(found[1]) +
                                 " both have all weights below 1");
    return found.front();
}

MarkedTuple resolve(const NodalCurve& curve, const AngleVector& betas) {
    const std::size_t p = principal_component(curve, betas);
    const auto near = curve.neighbours(p);
    std::map<std::size_t, std::size_t> node_label;  // neighbour component -> label
    MarkedTuple out;
    for (std::size_t i = 0; i < curve.marked_count(); ++i) {
        const std::size_t c = curve.component_of(i);
        if (c == p) {
            out.labels.push_back(out.values.size());
            out.values.push_back({false, GaussRat(static_cast<long>(out.values.size()))});
            continue;
        }
        std::size_t via = near.size();
        for (std::size_t k = 0; k < near.size(); ++k) {
            const auto beyond = curve.marks_beyond(p, near[k]);
            if (std::binary_search(beyond.begin(), beyond.end(), i)) via = k;
        }
        auto [it, fresh] = node_label.try_emplace(near.at(via), out.values.size());
        if (fresh) out.values.push_back({false, GaussRat(static_cast<long>(out.values.size()))});
        out.labels.push_back(it->second);
    }
    return out;
}

NodalCurve bubbletree_to_nodal_curve(const FamilyConfig& config) {
    if (config.ambient != Ambient::Sphere) throw InvalidArgument("the nodal curve of a family needs a sphere family");
    const BubbleTreeReport report = bubble_tree(config);
    std::vector<Component> components{{0, {}}};
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& point : report.limit)
        if (point.members.size() == 1) components[0].marks.push_back(point.members.front());
    for (const auto& tree : report.trees) {
        std::map<NodeId, std::size_t> id_of;
        for (NodeId v : tree.interior_nodes()) {
            const std::size_t id = components.size();
            id_of[v] = id;
            components.push_back({id, {}});
            const auto parent = tree.node(v).parent;
            edges.emplace_back(parent ? id_of.at(*parent) : 0, id);
            for (NodeId c : tree.node(v).children)
                if (tree.node(c).is_leaf()) components.back().marks.push_back(tree.node(c).members.front());
        }
    }
    return NodalCurve(std::move(components), std::move(edges));
}

namespace {

void sort_shape(BubbleShape& s) {
    std::sort(s.cone_angles.begin(), s.cone_angles.end());
    std::sort(s.members.begin(), s.members.end());
    for (auto& c : s.children) sort_shape(c);
    std::sort(s.children.begin(), s.children.end(),
              [](const BubbleShape& a, const BubbleShape& b) { return a.members.front() < b.members.front(); });
}

}  // namespace

BubbleShape bubble_shape(const FamilyConfig& config) {
    const BubbleTreeReport report = bubble_tree(config);
    BubbleShape root;
    for (const auto& q : report.limit) {
        root.members.insert(root.members.end(), q.members.begin(), q.members.end());
        root.cone_angles.push_back(q.gamma);
    }
    std::size_t next = 0;
    for (std::size_t k = 0; k < report.trees.size(); ++k) {
        std::function<BubbleShape(NodeId)> build = [&](NodeId v) {
            const NodeBubble& nb = report.bubbles.at(next++);
            if (nb.tree != k || nb.node != v) throw std::logic_error("bubble order differs from tree preorder");
            BubbleShape s;
            s.members = report.trees[k].node(v).members;
            s.end_angle = nb.bubble.gamma_infinity;
            for (const auto& p : nb.bubble.cone_points) s.cone_angles.push_back(p.angle);
            for (NodeId c : report.trees[k].node(v).children)
                if (!report.trees[k].node(c).is_leaf()) s.children.push_back(build(c));
            return s;
        };
        root.children.push_back(build(report.trees[k].root()));
    }
    sort_shape(root);
    return root;
}

BubbleShape nodal_curve_to_bubbletree_shape(const NodalCurve& curve, const AngleVector& betas) {
    const NodeWeighting w = node_weights(curve, betas);
    const std::size_t root = principal_component(curve, betas);
    std::function<BubbleShape(std::size_t, std::optional<std::size_t>)> build = [&](std::size_t c,
                                                                                   std::optional<std::size_t> up) {
        BubbleShape s;
        for (std::size_t m : curve.component(c).marks) {
            s.members.push_back(m);
            s.cone_angles.push_back(betas[m]);
        }
        if (up) s.end_angle = w.at(c, *up) - Rat(1);
        for (std::size_t n : curve.neighbours(c)) {
            if (n == up) continue;
            s.cone_angles.push_back(Rat(1) - w.at(c, n));
            BubbleShape child = build(n, c);
            s.members.insert(s.members.end(), child.members.begin(), child.members.end());
            s.children.push_back(std::move(child));
        }
        return s;
    };
    BubbleShape shape = build(root, std::nullopt);
    sort_shape(shape);
    return shape;
}

std::string BubbleShape::to_string() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t k = 0; k < members.size(); ++k) out << (k ? "," : "") << members[k];
    out << "} end=" << (end_angle ? end_angle->to_string() : "-") << " angles=[";
    for (std::size_t k = 0; k < cone_angles.size(); ++k) out << (k ? "," : "") << cone_angles[k].to_string();
    out << "]";
    if (!children.empty()) {
        out << " (";
        for (std::size_t k = 0; k < children.size(); ++k) out << (k ? "; " : "") << children[k].to_string();
        out << ")";
    }
    return out.str();
}

}  // namespace bubblekit
