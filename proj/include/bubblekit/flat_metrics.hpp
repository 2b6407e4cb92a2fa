#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bubblekit/germ.hpp"
#include "bubblekit/rational.hpp"
#include "bubblekit/vanishing_tree.hpp"

namespace bubblekit {

/// Cone angles 2*pi*beta_i with every beta_i in (0,1).
class AngleVector {
public:
    AngleVector() = default;
    explicit AngleVector(std::vector<Rat> betas);

    const std::vector<Rat>& betas() const noexcept { return betas_; }
    const Rat& operator[](std::size_t i) const { return betas_.at(i); }
    std::size_t size() const noexcept { return betas_.size(); }
    /// sum over `members` of (1 - beta_i); all indices when `members` is empty.
    Rat curvature(std::span<const std::size_t> members = {}) const;

private:
    std::vector<Rat> betas_;
};

/// The flat cone C_gamma of total angle 2*pi*gamma; gamma = 1 is the plane.
struct ConeModel {
    Rat gamma;
    friend bool operator==(const ConeModel&, const ConeModel&) = default;
};

struct ConePoint {
    GaussRat position;
    Rat angle;
    std::vector<std::size_t> members;  // germs collapsing to this point
    friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// Infinite flat metric on C with the given cone points and cone angle
/// 2*pi*gamma_infinity at infinity.
struct BubbleModel {
    std::vector<ConePoint> cone_points;  // ordered by smallest member
    Rat gamma_infinity;
    GaussRat basepoint;
};

enum class Ambient { Plane, Sphere };

struct FamilyConfig {
    std::vector<Germ> points;
    AngleVector angles;
    Ambient ambient = Ambient::Plane;

    /// Checks sizes, the Plane bound sum(1-beta) < 1 and, on the Sphere,
    /// sum(1-beta) = 2 plus the collision bound on every cluster at t = 0.
    void validate() const;
    /// Index sets of germs with equal value at t = 0, ordered by smallest member.
    std::vector<std::vector<std::size_t>> clusters() const;
};

/// 1 - sum(1 - beta_i). Throws CollapseViolation unless the sum is < 1.
Rat subcone_angle(std::span<const Rat> angles);

/// Bubble of an interior node. Tree members index config.points.
BubbleModel bubble_at_node(const VanishingTree& tree, NodeId node, const FamilyConfig& config);

struct NodeBubble {
    std::size_t tree;  // index into BubbleTreeReport::trees
    NodeId node;
    BubbleModel bubble;
};

struct LimitPoint {
    GaussRat position;
    Rat gamma;
    std::vector<std::size_t> members;
};

struct BubbleTreeReport {
    /// Plane: the single tree T(S). Sphere: T(I_j) for each cluster with at
    /// least two members. Members are indices into config.points.
    std::vector<VanishingTree> trees;
    std::vector<NodeBubble> bubbles;
    std::vector<LimitPoint> limit;  // configuration at t = 0
};

BubbleTreeReport bubble_tree(const FamilyConfig& config);

/// One rescaling level met by a section.
struct Breakpoint {
    unsigned depth;                      // d_i
    Rat alpha;                           // alpha_i
    std::vector<std::size_t> members;    // V_i, germs with nu(p_j - s) >= d_i
    std::optional<NodeId> node;          // node of the cluster tree when |V_i| >= 2
    Rat cone_gamma;                      // angle of the cone C_{v_i} just below alpha_i
    BubbleModel bubble;                  // section-centered, basepoint 0
};

struct SectionAnalysis {
    Ambient ambient = Ambient::Plane;
    std::vector<std::size_t> cluster;      // germs with p_j(0) = s(0)
    Rat gamma;                             // angle at infinity of the cluster
    struct Order {
        std::size_t germ;
        unsigned depth;  // d(j) = nu(p_j - s)
        Rat beta;
    };
    std::vector<Order> orders;             // cluster members with s != p_j
    VanishingTree tree;                    // tree over the cluster, members relabeled to config indices
    std::vector<Breakpoint> breakpoints;   // path nodes of the tree
    std::optional<Breakpoint> approach;    // a single germ met before s leaves the cluster
    SectionTerminal terminal;
    Rat terminal_angle = Rat(1);           // beta_i for MatchesGerm, 1 (the plane) otherwise

    /// All levels in order: breakpoints then the approach level.
    std::vector<const Breakpoint*> levels() const;
};

SectionAnalysis alpha_exponents(const FamilyConfig& config, const Germ& section);

struct ConeLimit {
    ConeModel cone;
};
struct BubbleLimit {
    BubbleModel bubble;
    std::size_t level;
};
struct PlaneLimit {};
/// Pointed rescaled limit of |t|^{-2 alpha} g_t at s(t).
using RescaledLimit = std::variant<ConeLimit, BubbleLimit, PlaneLimit>;

RescaledLimit classify_rescaled_limit(const SectionAnalysis& analysis, const Rat& alpha);

/// gamma*lambda + sum_{d(j) < lambda} (1 - beta_j)(lambda - d(j)).
Rat alpha_of_lambda(const SectionAnalysis& analysis, const Rat& lambda);

}  // namespace bubblekit
