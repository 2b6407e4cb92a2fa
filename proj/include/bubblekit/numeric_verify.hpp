#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "bubblekit/flat_metrics.hpp"
#include "bubblekit/gibbons_hawking.hpp"

namespace bubblekit {

using Complex = std::complex<double>;

struct QuadratureSpec {
    double rel_tol = 1e-8;
    unsigned max_depth = 40;
    /// Cone points closer than guard * (segment length) to a segment end are
    /// treated as sitting on it.
    double singularity_guard = 1e-3;

    void validate() const;
};

/// Flat metric prod |z - p_i|^{beta_i - 1} |dz| at fixed t.
struct ConeConfiguration {
    std::vector<Complex> positions;
    std::vector<double> angles;

    /// Positions p_i(t) - center(t) of a family at real parameter t.
    static ConeConfiguration freeze(const FamilyConfig& family, double t, const Germ& center);
    double density(Complex z) const;
};

/// Length of a polyline in the cone metric.
double path_length(const ConeConfiguration& config, std::span<const Complex> polyline,
                   const QuadratureSpec& spec = {});

/// Cone angle at `center` as a multiple of 2 pi: circumference over radius of
/// small coordinate circles, extrapolated to radius 0 from the last three radii.
double cone_angle_probe(const ConeConfiguration& config, Complex center, std::span<const double> radii,
                        const QuadratureSpec& spec = {});

/// Angle at infinity: d log C / d log R over increasing radii R around the
/// centroid, extrapolated in 1/R^2.
double cone_angle_at_infinity(const ConeConfiguration& config, std::span<const double> radii,
                              const QuadratureSpec& spec = {});

struct SurrogateOptions {
    unsigned interior_vertices = 6;
    unsigned max_iterations = 200;
};

/// Upper bound for the distance from a to b: the straight segment refined by
/// coordinate descent on interior polyline vertices.
double distance_surrogate(const ConeConfiguration& config, Complex a, Complex b, const QuadratureSpec& spec = {},
                          const SurrogateOptions& options = {});

struct SlopeFit {
    std::vector<std::pair<double, double>> samples;  // (log|t|, log value)
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Least-squares line through (log x, log y). Needs at least 4 samples.
SlopeFit fit_log_log(std::span<const double> x, std::span<const double> y);

/// Slope of log(distance surrogate between a(t) and b(t)) against log|t|.
SlopeFit scaling_slope(const FamilyConfig& family, const Germ& a, const Germ& b, std::span<const double> t_samples,
                       const QuadratureSpec& spec = {});

/// Total area of prod |z - p_i|^{2 beta_i - 2} |dz|^2 over C.
double sphere_area(const ConeConfiguration& config, const QuadratureSpec& spec = {});

/// Slope of log curvature_norm at height |t|^D / 2 above the section, D the
/// deepest rescaling level of the section, against log|t|.
SlopeFit curvature_blowup_slope(const MonopoleFamily& family, std::span<const double> t_samples);

/// "log_t,log_value" rows.
void write_csv(std::ostream& out, const SlopeFit& fit);

}  // namespace bubblekit
