#include "bubblekit/gibbons_hawking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "bubblekit/errors.hpp"

namespace bubblekit {

MonopoleConfig::MonopoleConfig(std::vector<Monopole> points) : points_(std::move(points)) {
    for (std::size_t a = 0; a < points_.size(); ++a) {
        if (points_[a].multiplicity == 0) throw InvalidArgument("monopole multiplicities must be positive");
        for (std::size_t b = a + 1; b < points_.size(); ++b)
            if (points_[a].position == points_[b].position)
                throw InvalidArgument("monopole positions must be distinct");
        const auto& p = points_[a].position;
        numeric_.push_back({p[0].to_double(), p[1].to_double(), p[2].to_double()});
    }
}

MonopoleConfig MonopoleConfig::planar(const std::vector<std::pair<GaussRat, unsigned>>& points) {
    std::vector<Monopole> out;
    for (const auto& [z, m] : points) out.push_back({{z.re, z.im, Rat(0)}, m});
    return MonopoleConfig(std::move(out));
}

unsigned MonopoleConfig::total_multiplicity() const noexcept {
    unsigned total = 0;
    for (const auto& p : points_) total += p.multiplicity;
    return total;
}

bool MonopoleConfig::is_planar() const noexcept {
    return std::all_of(points_.begin(), points_.end(), [](const Monopole& p) { return p.position[2].is_zero(); });
}

GaussRat MonopoleConfig::planar_position(std::size_t k) const {
    const auto& p = points_.at(k).position;
    if (!p[2].is_zero()) throw NonPlanar("monopole " + std::to_string(k) + " has x3 = " + p[2].to_string());
    return {p[0], p[1]};
}

MonopoleConfig MonopoleConfig::scaled(const Rat& lambda) const {
    std::vector<Monopole> out = points_;
    for (auto& p : out)
        for (auto& c : p.position) c = c * lambda;
    return MonopoleConfig(std::move(out));
}

std::string MonopoleConfig::to_string() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const auto& p = points_[k];
        out << (k ? ", " : "");
        if (p.position[2].is_zero())
            out << GaussRat(p.position[0], p.position[1]).to_string();
        else
            out << "(" << p.position[0].to_string() << "," << p.position[1].to_string() << ","
                << p.position[2].to_string() << ")";
        out << ":" << p.multiplicity;
    }
    out << "}";
    return out.str();
}

double potential(const MonopoleConfig& config, const Point3& x) {
    double f = 0.0;
    for (std::size_t k = 0; k < config.numeric_.size(); ++k) {
        const auto& p = config.numeric_[k];
        const double r = std::hypot(x[0] - p[0], x[1] - p[1], x[2] - p[2]);
        if (r == 0.0) throw SingularPoint("potential evaluated at monopole " + std::to_string(k));
        f += config.points_[k].multiplicity / r;
    }
    return 0.5 * f;
}

double nearest_monopole(const MonopoleConfig& config, const Point3& x) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : config.numeric_) d = std::min(d, std::hypot(x[0] - p[0], x[1] - p[1], x[2] - p[2]));
    return d;
}

namespace {

// Eighth-order central stencil for the second derivative.
constexpr int kReach = 4;
constexpr std::array<double, 9> kSecond{-1.0 / 560, 8.0 / 315, -1.0 / 5,  8.0 / 5,    -205.0 / 72,
                                        8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};

template <class F>
double laplacian(F&& g, const Point3& x, double h) {
    double sum = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        for (int k = -kReach; k <= kReach; ++k) {
            if (k == 0 && axis > 0) continue;
            Point3 y = x;
            y[axis] += k * h;
            const double w = k == 0 ? 3 * kSecond[kReach] : kSecond[k + kReach];
            sum += w * g(y);
        }
    }
    return sum / (h * h);
}

double bilaplacian(const MonopoleConfig& config, const Point3& x, double h) {
    auto inverse_f = [&](const Point3& y) { return 1.0 / potential(config, y); };
    return laplacian([&](const Point3& y) { return laplacian(inverse_f, y, h); }, x, h);
}

}  // namespace

double curvature_norm(const MonopoleConfig& config, const Point3& x) {
    const double dist = nearest_monopole(config, x);
    const double h = dist / 16;
    double scale = 1.0;
    for (const auto& p : config.numeric_) scale = std::max({scale, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    scale = std::max({scale, std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
    if (!(h > 1e-6 * scale))
        throw StepUnderflow("finite-difference step " + std::to_string(h) + " is below working precision");
    const double coarse = bilaplacian(config, x, h);
    const double fine = bilaplacian(config, x, h / 2);
    return 0.25 * (256 * fine - coarse) / 255;
}

PolyFamily defining_equation(const MonopoleConfig& config) {
    const std::vector<std::string> vars{"u", "v", "z"};
    PolyFamily product = PolyFamily::constant(vars, GaussRat(1));
    const PolyFamily z = PolyFamily::variable(vars, 2);
    for (std::size_t k = 0; k < config.points().size(); ++k) {
        const PolyFamily factor = z - PolyFamily::constant(vars, config.planar_position(k));
        product = product * factor.pow(config.points()[k].multiplicity);
    }
    return PolyFamily::variable(vars, 0) * PolyFamily::variable(vars, 1) - product;
}

unsigned ALEOrbifoldModel::basepoint_multiplicity() const {
    return basepoint_index ? config.points().at(*basepoint_index).multiplicity : 0;
}

std::string ALEOrbifoldModel::basepoint_type() const {
    const unsigned m = basepoint_multiplicity();
    if (m == 0) return "smooth";
    if (m == 1) return "A_0 (smooth)";
    return "A_" + std::to_string(m - 1);
}

AkLimitReport ak_rescaled_limits(const MonopoleFamily& family) {
    const auto& paths = family.z_paths;
    const Germ& s = family.section;
    if (paths.empty()) throw InvalidArgument("a monopole family needs at least one path");
    AkLimitReport report;
    report.tree = build_tree(paths);

    std::optional<std::size_t> matched;
    for (std::size_t j = 0; j < paths.size(); ++j) {
        if (agree_order(paths[j], s)) continue;
        if (matched) throw AmbiguousTruncation(*matched, j);
        matched = j;
    }
    if (matched) report.terminal = {SectionTerminal::Kind::MatchesGerm, *matched};

    std::map<std::size_t, unsigned> depth;  // d(j) >= 1 for cluster members other than the match
    for (std::size_t j = 0; j < paths.size(); ++j) {
        if (paths[j].coefficient(0) != s.coefficient(0)) continue;
        report.cluster.push_back(j);
        if (j != matched) depth[j] = *agree_order(paths[j], s);
    }
    std::vector<unsigned> levels;
    for (auto [j, d] : depth) levels.push_back(d);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    Rat previous(0);
    for (unsigned d : levels) {
        AkBreakpoint b;
        b.depth = d;
        b.alpha = Rat(d) / Rat(2);
        std::map<GaussRat, std::pair<std::size_t, unsigned>> groups;  // position -> (first member, multiplicity)
        for (std::size_t j : report.cluster) {
            if (j != matched && depth.at(j) < d) continue;
            b.members.push_back(j);
            const GaussRat c = (paths[j] - s).coefficient(d);
            auto [it, fresh] = groups.try_emplace(c, j, 0u);
            ++it->second.second;
        }
        std::vector<std::pair<GaussRat, std::pair<std::size_t, unsigned>>> ordered(groups.begin(), groups.end());
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& x, const auto& y) { return x.second.first < y.second.first; });
        std::vector<std::pair<GaussRat, unsigned>> points;
        for (const auto& [c, info] : ordered) {
            if (c.is_zero()) b.model.basepoint_index = points.size();
            points.emplace_back(c, info.second);
        }
        b.model.config = MonopoleConfig::planar(points);
        b.bubble = points.size() >= 2;
        if (b.members.size() >= 2) b.node = report.tree.find(b.members);

        report.cones.push_back({previous, b.alpha, static_cast<unsigned>(b.members.size())});
        previous = b.alpha;
        report.breakpoints.push_back(std::move(b));
    }
    // Past the last level at most the matched path remains at the basepoint: flat C^2.
    report.cones.push_back({previous, std::nullopt, 1});
    return report;
}

}  // namespace bubblekit
