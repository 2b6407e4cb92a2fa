#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bubblekit/flat_metrics.hpp"
#include "bubblekit/gibbons_hawking.hpp"
#include "bubblekit/moduli.hpp"
#include "bubblekit/numeric_verify.hpp"
#include "bubblekit/poly_family.hpp"
#include "bubblekit/weighted_rescale.hpp"
#include "json.hpp"

namespace bubblekit::cli {

using Json = nlohmann::ordered_json;

/// Invalid input, reported as  file:pointer: message.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& file, const std::string& pointer, const std::string& message)
        : std::runtime_error(file + ":" + (pointer.empty() ? "/" : pointer) + ": " + message) {}
};

enum class Kind { Plane, Sphere, GhMonopole, PolyFamily, Curve };

struct Named {
    std::string name;
    Germ germ;
};

struct VerifySettings {
    std::vector<double> t_samples;
    double t = 0;  // frozen parameter for single-time probes
    QuadratureSpec quadrature;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct Spec {
    std::string file;
    Kind kind = Kind::Plane;

    // plane, sphere, ghmonopole
    std::vector<std::string> names;
    FamilyConfig family;
    std::vector<Germ> paths;
    std::vector<std::pair<std::string, Germ>> sections;
    VerifySettings verify;

    // polyfamily
    std::vector<std::string> variables;
    std::vector<std::string> weight_order;
    PolyFamily polynomial;
    std::vector<std::string> schedule;  // weight strings, in weight order

    // curve
    NodalCurve curve;
    AngleVector angles;

    const Germ& section(const std::string& name) const;
    std::string section_pointer(const std::string& name) const;
    /// Parses weights given in weight order ("1,3/2" or "z=1,w=3/2") into
    /// variable order.
    WeightVector weights(const std::string& text) const;
    /// "z=1, w=3/2", in weight order.
    std::string render_weights(const WeightVector& weights) const;
};

Spec load_spec(const std::string& file);

const char* kind_name(Kind kind);

}  // namespace bubblekit::cli
