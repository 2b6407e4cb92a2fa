#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bubblekit/germ.hpp"
#include "bubblekit/poly_family.hpp"
#include "bubblekit/rational.hpp"
#include "bubblekit/vanishing_tree.hpp"

namespace bubblekit {

using Point3 = std::array<double, 3>;

struct Monopole {
    std::array<Rat, 3> position;
    unsigned multiplicity = 1;
};

/// Monopole points of a Gibbons-Hawking space with harmonic potential
/// f(x) = 1/2 sum_i m_i / |x - x_i|.
class MonopoleConfig {
public:
    MonopoleConfig() = default;
    explicit MonopoleConfig(std::vector<Monopole> points);
    /// Points z = x1 + i x2 on the plane x3 = 0.
    static MonopoleConfig planar(const std::vector<std::pair<GaussRat, unsigned>>& points);

    const std::vector<Monopole>& points() const noexcept { return points_; }
    unsigned total_multiplicity() const noexcept;
    bool is_planar() const noexcept;
    /// Position of point k as x1 + i x2; throws NonPlanar off the plane.
    GaussRat planar_position(std::size_t k) const;
    MonopoleConfig scaled(const Rat& lambda) const;

    std::string to_string() const;

private:
    std::vector<Monopole> points_;
    std::vector<Point3> numeric_;
    friend double potential(const MonopoleConfig&, const Point3&);
    friend double nearest_monopole(const MonopoleConfig&, const Point3&);
    friend double curvature_norm(const MonopoleConfig&, const Point3&);
};

double potential(const MonopoleConfig& config, const Point3& x);
double nearest_monopole(const MonopoleConfig& config, const Point3& x);

/// |Riem|^2 = 1/4 Laplacian(Laplacian(1/f)) by nested central differences
/// with step (distance to the nearest monopole)/16 and one Richardson step.
double curvature_norm(const MonopoleConfig& config, const Point3& x);

/// uv - prod (z - z_i)^{m_i} in the variables u, v, z.
PolyFamily defining_equation(const MonopoleConfig& config);

struct MonopoleFamily {
    std::vector<Germ> z_paths;
    Germ section;
};

/// Gibbons-Hawking orbifold pointed at the origin of section-centred
/// coordinates.
struct ALEOrbifoldModel {
    MonopoleConfig config;
    std::optional<std::size_t> basepoint_index;  // monopole at the origin, if any

    /// m at the basepoint (0 when the basepoint is not a monopole).
    unsigned basepoint_multiplicity() const;
    /// "A_{m-1}" for m >= 2, "A_0 (smooth)" for a simple monopole, "smooth" otherwise.
    std::string basepoint_type() const;
};

struct AkBreakpoint {
    unsigned depth;                    // d_i
    Rat alpha;                         // d_i / 2
    std::vector<std::size_t> members;  // paths with nu(z_j - s) >= d_i
    std::optional<NodeId> node;        // interior node of T(S) when |members| >= 2
    bool bubble;                       // at least two distinct monopole positions
    ALEOrbifoldModel model;
};

/// The cone C^2/Gamma_order pointed at its vertex for alpha in (from, to).
struct AkCone {
    Rat from;
    std::optional<Rat> to;  // empty: all larger alpha
    unsigned order;
};

struct AkLimitReport {
    VanishingTree tree;  // T(S) of the paths
    std::vector<std::size_t> cluster;
    std::vector<AkBreakpoint> breakpoints;
    std::vector<AkCone> cones;
    SectionTerminal terminal;
};

AkLimitReport ak_rescaled_limits(const MonopoleFamily& family);

}  // namespace bubblekit
