#include "bubblekit/weighted_rescale.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "bubblekit/errors.hpp"

namespace bubblekit {

WeightVector::WeightVector(std::vector<Rat> weights) : weights_(std::move(weights)) {
    for (const Rat& w : weights_)
        if (w <= Rat(0)) throw InvalidArgument("weights must be positive, got " + w.to_string());
}

WeightVector WeightVector::parse(std::string_view text) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item(text.substr(start, comma - start));
        std::erase(item, ' ');
        out.push_back(Rat::parse(item));
        start = comma + 1;
    }
    return WeightVector(std::move(out));
}

std::string WeightVector::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < weights_.size(); ++k) out += (k ? "," : "") + weights_[k].to_string();
    return out;
}

namespace {

Rat weighted_degree(const Monomial& m, const WeightVector& w) {
    Rat s;
    for (std::size_t j = 0; j < m.degrees.size(); ++j) s += w[j] * Rat(m.degrees[j]);
    return s;
}

void check_sizes(const PolyFamily& family, const WeightVector& weights) {
    if (family.is_zero()) throw InvalidArgument("cannot rescale the zero family");
    if (weights.size() != family.variables().size())
        throw InvalidArgument(std::to_string(weights.size()) + " weights for " +
                              std::to_string(family.variables().size()) + " variables");
}

}  // namespace

RescaleResult rescale(const PolyFamily& family, const WeightVector& weights, const Rat& c) {
    check_sizes(family, weights);
    if (c <= Rat(0)) throw InvalidArgument("c must be positive");
    PolyFamily moved(family.variables());
    for (const auto& [m, coeff] : family.terms()) {
        Monomial n = m;
        n.t_exponent = m.t_exponent + c * weighted_degree(m, weights);
        moved.add_term(n, coeff);
    }
    RescaleResult r;
    r.c_used = c;
    r.rescaled = moved.shift_t(-moved.min_t_exponent());
    r.limit = r.rescaled.t_coefficient(Rat(0)).normalized();
    r.dropped = r.rescaled - r.rescaled.t_coefficient(Rat(0));
    return r;
}

std::vector<Rat> breakpoints(const PolyFamily& family, const WeightVector& weights) {
    check_sizes(family, weights);
    // Each monomial contributes the line e + c s; duplicates do not matter.
    std::set<std::pair<Rat, Rat>> lines;
    for (const auto& [m, coeff] : family.terms()) lines.insert({m.t_exponent, weighted_degree(m, weights)});
    std::vector<std::pair<Rat, Rat>> l(lines.begin(), lines.end());
    std::set<Rat> out;
    for (std::size_t a = 0; a < l.size(); ++a) {
        for (std::size_t b = a + 1; b < l.size(); ++b) {
            if (l[a].second == l[b].second) continue;
            const Rat c = (l[b].first - l[a].first) / (l[a].second - l[b].second);
            if (c <= Rat(0)) continue;
            const Rat value = l[a].first + c * l[a].second;
            bool minimal = true;
            for (const auto& [e, s] : l) minimal = minimal && !(e + c * s < value);
            if (minimal) out.insert(c);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<CascadeStage> iterate_cascade(const PolyFamily& family, const std::vector<WeightVector>& schedule) {
    std::vector<CascadeStage> stages;
    PolyFamily current = family;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        CascadeStage stage{schedule[k], breakpoints(current, schedule[k]), {}};
        if (stage.breakpoints.empty())
            throw EmptyBreakpoints("stage " + std::to_string(k + 1) + " has no breakpoint", k);
        stage.result = rescale(current, schedule[k], stage.breakpoints.front());
        current = stage.result.rescaled;
        stages.push_back(std::move(stage));
    }
    return stages;
}

std::pair<Rat, Rat> stable_cusp_weights(const Rat& beta) {
    const Rat a = Rat(3) * beta - Rat(1, 2);
    return {Rat(2) / a, Rat(3) / a};
}

std::pair<Rat, Rat> unstable_cusp_weights(const Rat& beta) {
    const Rat g = Rat(2) * beta - Rat(1);
    return {Rat(1), Rat(1) / g};
}

CuspClassification cusp_classify(const Rat& beta) {
    if (beta <= Rat(0) || beta >= Rat(1)) throw InvalidArgument("beta must lie in (0,1)");
    if (beta <= Rat(1, 6)) return {CuspClass::NotKlt, std::nullopt};
    if (beta < Rat(5, 6)) return {CuspClass::Stable, stable_cusp_weights(beta)};
    if (beta == Rat(5, 6)) return {CuspClass::StrictlySemistable, stable_cusp_weights(beta)};
    return {CuspClass::Unstable, unstable_cusp_weights(beta)};
}

const char* to_string(CuspClass kind) {
    switch (kind) {
        case CuspClass::NotKlt: return "NotKlt";
        case CuspClass::Stable: return "Stable";
        case CuspClass::StrictlySemistable: return "StrictlySemistable";
        case CuspClass::Unstable: return "Unstable";
    }
    return "";
}

bool ak_unstable_check(long n, long k) {
    if (n < 3) throw InvalidArgument("n must be at least 3");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    return Rat(k + 1) > Rat(2 * (n - 1), n - 2);
}

}  // namespace bubblekit
