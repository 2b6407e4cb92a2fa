#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bubblekit/poly_family.hpp"
#include "bubblekit/rational.hpp"

namespace bubblekit {

/// Positive weights, one per variable of the family being rescaled.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<Rat> weights);
    /// "1,3/2"
    static WeightVector parse(std::string_view text);

    const std::vector<Rat>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const Rat& operator[](std::size_t i) const { return weights_.at(i); }
    std::string to_string() const;

private:
    std::vector<Rat> weights_;
};

struct RescaleResult {
    Rat c_used;
    PolyFamily rescaled;  // after x_j = t^{c w_j} x_j and division by t^{e_min}
    PolyFamily limit;     // t^0 part, first term normalized to 1
    PolyFamily dropped;   // terms with positive t-exponent
};

RescaleResult rescale(const PolyFamily& family, const WeightVector& weights, const Rat& c);

/// The c > 0 at which the set of monomials minimizing e_m + c <w, deg_m>
/// changes, in increasing order.
std::vector<Rat> breakpoints(const PolyFamily& family, const WeightVector& weights);

struct CascadeStage {
    WeightVector weights;
    std::vector<Rat> breakpoints;
    RescaleResult result;
};

/// Rescales stage by stage at the smallest breakpoint; each stage starts from
/// the previous rescaled family. Throws EmptyBreakpoints when a stage has none.
std::vector<CascadeStage> iterate_cascade(const PolyFamily& family, const std::vector<WeightVector>& schedule);

enum class CuspClass { NotKlt, Stable, StrictlySemistable, Unstable };

struct CuspClassification {
    CuspClass kind;
    /// Weights (z, w) of the tangent cone's Euler field; empty for NotKlt.
    std::optional<std::pair<Rat, Rat>> weights;
};

/// Tangent cone type of the cusp w^2 = z^3 with cone angle 2 pi beta.
CuspClassification cusp_classify(const Rat& beta);
/// (2/a, 3/a) with a = 3 beta - 1/2.
std::pair<Rat, Rat> stable_cusp_weights(const Rat& beta);
/// (1, 1/g) with g = 2 beta - 1.
std::pair<Rat, Rat> unstable_cusp_weights(const Rat& beta);

const char* to_string(CuspClass kind);

/// k + 1 > 2(n - 1)/(n - 2).
bool ak_unstable_check(long n, long k);

}  // namespace bubblekit
