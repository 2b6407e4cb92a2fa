#include "bubblekit/numeric_verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bubblekit/errors.hpp"

namespace bubblekit {

namespace {

std::string number(double x) {
    std::ostringstream out;
    out << x;
    return out.str();
}

constexpr double two_pi = 2 * std::numbers::pi;

// One 15-point Gauss-Kronrod panel; returns (value, error, L1).
template <class F>
std::array<double, 3> panel(F& f, double a, double b) {
    double error = 0;
    double l1 = 0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0, &error, &l1);
    return {value, error * (b - a) / 2, l1};
}

template <class F>
double adapt(F& f, double a, double b, const std::array<double, 3>& whole, double abs_tol, unsigned depth,
             double& error) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (whole[1] <= abs_tol || whole[1] <= 50 * eps * whole[2] || depth == 0 || !std::isfinite(whole[0])) {
        error += whole[1];
        return whole[0];
    }
    const double mid = (a + b) / 2;
    const auto left = panel(f, a, mid);
    const auto right = panel(f, mid, b);
    return adapt(f, a, mid, left, abs_tol / 2, depth - 1, error) +
           adapt(f, mid, b, right, abs_tol / 2, depth - 1, error);
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    if (!(b > a)) return 0;
    const auto whole = panel(f, a, b);
    double error = 0;
    const double value = adapt(f, a, b, whole, spec.rel_tol * whole[2], spec.max_depth, error);
    if (!std::isfinite(value) || error > spec.rel_tol * std::abs(value) + 1e-300) {
        throw MaxDepthExceeded("quadrature stopped at depth " + std::to_string(spec.max_depth) +
                               " with relative error estimate " + number(error / std::abs(value)) + " above " +
                               number(spec.rel_tol));
    }
    return value;
}

// Index of the cone point within `radius` of z.
std::optional<std::size_t> cone_point_at(const ConeConfiguration& config, Complex z, double radius) {
    for (std::size_t i = 0; i < config.positions.size(); ++i)
        if (std::abs(config.positions[i] - z) <= radius) return i;
    return std::nullopt;
}

double density_without(const ConeConfiguration& config, Complex z, std::optional<std::size_t> skip) {
    double value = 1;
    for (std::size_t i = 0; i < config.positions.size(); ++i)
        if (i != skip) value *= std::pow(std::abs(z - config.positions[i]), config.angles[i] - 1);
    return value;
}

// Length of the straight piece from z0 to z1. A cone point at either end is
// removed with u = s^beta, s the distance to it, and its factor is evaluated
// from s directly so that it stays accurate near the end.
double piece_length(const ConeConfiguration& config, Complex z0, Complex z1, const QuadratureSpec& spec) {
    const double length = std::abs(z1 - z0);
    const double guard = spec.singularity_guard * length;
    const Complex mid = (z0 + z1) / 2.0;
    auto half = [&](Complex end) {
        const Complex dir = (mid - end) / (length / 2);
        const auto k = cone_point_at(config, end, guard);
        if (!k) return integrate([&](double s) { return config.density(end + s * dir); }, 0.0, length / 2, spec);
        const double beta = config.angles[*k];
        const Complex offset = end - config.positions[*k];
        const double scale = std::pow(length / 2, beta);
        auto f = [&](double u) {
            const double s = std::pow(u, 1 / beta);
            const double r = std::abs(offset + s * dir);
            // r^{beta-1} ds/du with ds/du = s^{1-beta} / beta
            const double singular = r == 0 ? 1 / beta : std::pow(r, beta - 1) * std::pow(s, 1 - beta) / beta;
            return singular * density_without(config, end + s * dir, k);
        };
        return integrate(f, 0.0, scale, spec);
    };
    return half(z0) + half(z1);
}

double segment_length(const ConeConfiguration& config, Complex a, Complex b, const QuadratureSpec& spec) {
    const Complex delta = b - a;
    const double length = std::abs(delta);
    if (length == 0) return 0;
    std::vector<double> cuts{0.0, 1.0};
    for (Complex p : config.positions) {
        const double u = std::real((p - a) * std::conj(delta)) / (length * length);
        if (u <= 0 || u >= 1) continue;
        if (std::abs(a + u * delta - p) < 0.5 * length * std::min(u, 1 - u)) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        if (cuts[k + 1] > cuts[k]) total += piece_length(config, a + cuts[k] * delta, a + cuts[k + 1] * delta, spec);
    return total;
}

double circumference(const ConeConfiguration& config, Complex center, double r, const QuadratureSpec& spec) {
    auto f = [&](double theta) { return config.density(center + std::polar(r, theta)) * r; };
    return integrate(f, 0.0, two_pi, spec);
}

// Value at 0 of the quadratic through three (x, y) samples.
double extrapolate_to_zero(const double (&x)[3], const double (&y)[3]) {
    double p[3] = {y[0], y[1], y[2]};
    for (int level = 1; level < 3; ++level)
        for (int i = 0; i + level < 3; ++i)
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    return p[0];
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0 && rel_tol <= 1e-2)) throw InvalidArgument("rel_tol must lie in (0, 1e-2]");
    if (max_depth == 0) throw InvalidArgument("max_depth must be positive");
    if (!(singularity_guard > 0 && singularity_guard < 0.5))
        throw InvalidArgument("singularity_guard must lie in (0, 1/2)");
}

ConeConfiguration ConeConfiguration::freeze(const FamilyConfig& family, double t, const Germ& center) {
    ConeConfiguration out;
    for (std::size_t i = 0; i < family.points.size(); ++i) {
        out.positions.push_back((family.points[i] - center).evaluate(t));
        out.angles.push_back(family.angles[i].to_double());
    }
    return out;
}

double ConeConfiguration::density(Complex z) const {
    double value = 1;
    for (std::size_t i = 0; i < positions.size(); ++i) value *= std::pow(std::abs(z - positions[i]), angles[i] - 1);
    return value;
}

double path_length(const ConeConfiguration& config, std::span<const Complex> polyline, const QuadratureSpec& spec) {
    spec.validate();
    double total = 0;
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k) total += segment_length(config, polyline[k], polyline[k + 1], spec);
    return total;
}

double cone_angle_probe(const ConeConfiguration& config, Complex center, std::span<const double> radii,
                        const QuadratureSpec& spec) {
    spec.validate();
    if (radii.size() < 3) throw InvalidArgument("cone_angle_probe needs at least three radii");
    double scale = 1;
    for (Complex p : config.positions) scale = std::max(scale, std::abs(p));
    double nearest = std::numeric_limits<double>::infinity();
    Complex direction = 1;
    for (Complex p : config.positions) {
        const double d = std::abs(p - center);
        if (d <= 1e-12 * scale || d >= nearest) continue;
        nearest = d;
        direction = (center - p) / d;
    }
    for (double r : radii)
        if (!(r > 0) || r >= nearest / 2)
            throw RadiiTooLarge("probe radius " + number(r) + " is not below half the distance " + number(nearest) +
                                " to the nearest other cone point");
    double x[3];
    double y[3];
    for (int k = 0; k < 3; ++k) {
        const double r = radii[radii.size() - 3 + k];
        const Complex ray[2] = {center, center + r * direction};
        x[k] = r;
        y[k] = circumference(config, center, r, spec) / (two_pi * path_length(config, ray, spec));
    }
    return extrapolate_to_zero(x, y);
}

double cone_angle_at_infinity(const ConeConfiguration& config, std::span<const double> radii,
                              const QuadratureSpec& spec) {
    spec.validate();
    if (radii.size() < 4) throw InvalidArgument("cone_angle_at_infinity needs at least four radii");
    Complex centroid = 0;
    for (Complex p : config.positions) centroid += p;
    if (!config.positions.empty()) centroid /= static_cast<double>(config.positions.size());
    double reach = 0;
    for (Complex p : config.positions) reach = std::max(reach, std::abs(p - centroid));
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (radii[k] <= 2 * reach || (k && radii[k] <= radii[k - 1]))
            throw RadiiTooLarge("radii at infinity must increase and exceed twice the configuration radius " +
                                number(reach));
    double x[3];
    double y[3];
    for (int k = 0; k < 3; ++k) {
        const double r0 = radii[radii.size() - 4 + k];
        const double r1 = radii[radii.size() - 3 + k];
        const double c0 = circumference(config, centroid, r0, spec);
        const double c1 = circumference(config, centroid, r1, spec);
        x[k] = 1 / (r0 * r1);
        y[k] = std::log(c1 / c0) / std::log(r1 / r0);
    }
    return extrapolate_to_zero(x, y);
}

double distance_surrogate(const ConeConfiguration& config, Complex a, Complex b, const QuadratureSpec& spec,
                          const SurrogateOptions& options) {
    spec.validate();
    const std::size_t n = options.interior_vertices;
    std::vector<Complex> path;
    for (std::size_t k = 0; k <= n + 1; ++k) path.push_back(a + (b - a) * (static_cast<double>(k) / (n + 1)));
    double best = path_length(config, path, spec);
    double step = std::abs(b - a) / (4.0 * (n + 1));
    const double floor = std::abs(b - a) * 1e-4;
    const Complex moves[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (unsigned iteration = 0; iteration < options.max_iterations && step > floor; ++iteration) {
        bool improved = false;
        for (std::size_t v = 1; v <= n; ++v) {
            for (Complex move : moves) {
                const Complex saved = path[v];
                path[v] = saved + step * move;
                const double length = path_length(config, path, spec);
                if (length < best * (1 - 1e-12)) {
                    best = length;
                    improved = true;
                } else {
                    path[v] = saved;
                }
            }
        }
        if (!improved) step /= 2;
    }
    return best;
}

SlopeFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 4) throw InvalidArgument("slope fit needs at least four samples");
    SlopeFit fit;
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(std::abs(x[k]) > 0) || !(y[k] > 0)) throw InvalidArgument("slope fit needs nonzero x and positive y");
        fit.samples.emplace_back(std::log(std::abs(x[k])), std::log(y[k]));
        sx += fit.samples.back().first;
        sy += fit.samples.back().second;
    }
    const double n = static_cast<double>(x.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto [u, v] : fit.samples) {
        sxx += (u - mx) * (u - mx);
        sxy += (u - mx) * (v - my);
        syy += (v - my) * (v - my);
    }
    if (sxx == 0) throw InvalidArgument("slope fit needs distinct |t|");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double residual = 0;
    for (auto [u, v] : fit.samples) residual += std::pow(v - fit.intercept - fit.slope * u, 2);
    fit.r2 = syy == 0 ? 1 : 1 - residual / syy;
    return fit;
}

SlopeFit scaling_slope(const FamilyConfig& family, const Germ& a, const Germ& b, std::span<const double> t_samples,
                       const QuadratureSpec& spec) {
    family.validate();
    const Germ gap = b - a;
    std::vector<double> distances;
    for (double t : t_samples) {
        const ConeConfiguration frozen = ConeConfiguration::freeze(family, t, a);
        distances.push_back(distance_surrogate(frozen, 0.0, gap.evaluate(t), spec));
    }
    return fit_log_log(t_samples, distances);
}

double sphere_area(const ConeConfiguration& config, const QuadratureSpec& spec) {
    spec.validate();
    const auto& p = config.positions;
    const std::size_t n = p.size();
    if (n < 2) throw InvalidArgument("sphere_area needs at least two cone points");
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol / 10;

    // w_i * density^2, w_i the partition of unity proportional to |z - p_i|^-2.
    auto weighted = [&](std::size_t i, Complex z) {
        double denominator = 1;
        const double di = std::norm(z - p[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dj = std::norm(z - p[j]);
            if (dj == 0) return 0.0;
            denominator += di / dj;
        }
        const double rho = config.density(z);
        return rho * rho / denominator;
    };

    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> thetas{0.0};
        std::vector<double> radii;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double theta = std::arg(p[j] - p[i]);
            if (theta < 0) theta += two_pi;
            thetas.push_back(theta);
            radii.push_back(std::abs(p[j] - p[i]));
        }
        thetas.push_back(two_pi);
        std::sort(thetas.begin(), thetas.end());
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

        auto ring = [&](double r) {
            double sum = 0;
            for (std::size_t k = 0; k + 1 < thetas.size(); ++k)
                sum += integrate([&](double th) { return weighted(i, p[i] + std::polar(r, th)) * r; }, thetas[k],
                                 thetas[k + 1], inner);
            return sum;
        };

        const double r0 = radii.front() / 2;
        const double e = 2 * config.angles[i];
        total += integrate(
            [&](double v) { return ring(r0 * std::pow(v, 1 / e)) * r0 / e * std::pow(v, 1 / e - 1); }, 0.0, 1.0,
            spec);
        std::vector<double> cuts{r0};
        cuts.insert(cuts.end(), radii.begin(), radii.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += integrate(ring, cuts[k], cuts[k + 1], spec);
        const double far = cuts.back();
        total += integrate([&](double s) { return s == 0 ? 0.0 : ring(far / s) * far / (s * s); }, 0.0, 1.0, spec);
    }
    return total;
}

SlopeFit curvature_blowup_slope(const MonopoleFamily& family, std::span<const double> t_samples) {
    const AkLimitReport report = ak_rescaled_limits(family);
    if (report.breakpoints.empty()) throw InvalidArgument("the section meets no rescaling level");
    const unsigned depth = report.breakpoints.back().depth;
    std::vector<double> values;
    for (double t : t_samples) {
        std::vector<Monopole> monopoles;
        for (const Germ& z : family.z_paths) {
            const Complex w = (z - family.section).evaluate(t);
            Monopole m{{Rat(mpq_class(w.real())), Rat(mpq_class(w.imag())), Rat(0)}, 1};
            auto same = std::find_if(monopoles.begin(), monopoles.end(),
                                     [&](const Monopole& o) { return o.position == m.position; });
            if (same != monopoles.end())
                ++same->multiplicity;
            else
                monopoles.push_back(std::move(m));
        }
        const MonopoleConfig config(std::move(monopoles));
        values.push_back(curvature_norm(config, {0, 0, std::pow(std::abs(t), depth) / 2}));
    }
    return fit_log_log(t_samples, values);
}

void write_csv(std::ostream& out, const SlopeFit& fit) {
    out << "log_t,log_value\n";
    out.precision(17);
    for (auto [x, y] : fit.samples) out << x << ',' << y << '\n';
}

}  // namespace bubblekit
