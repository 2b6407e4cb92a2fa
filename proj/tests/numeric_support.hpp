#pragma once

#include <algorithm>
#include <cmath>

#include "bubblekit/numeric_verify.hpp"
#include "random_source.hpp"

namespace bubblekit::test {

// Random plane configuration with sum(1 - beta) < 1 and well separated points.
inline ConeConfiguration random_plane(RandomSource& rng) {
    ConeConfiguration c;
    const int n = static_cast<int>(rng.integer(1, 4));
    double budget = 0.95;
    while (static_cast<int>(c.positions.size()) < n) {
        const Complex z{rng.real(-2, 2), rng.real(-2, 2)};
        bool far = true;
        for (Complex p : c.positions) far = far && std::abs(p - z) > 0.5;
        if (!far) continue;
        const double defect = rng.real(0.02, budget / n);
        c.positions.push_back(z);
        c.angles.push_back(1 - defect);
    }
    return c;
}

/// Distance from point i to the nearest other point (10 when alone).
inline double min_separation(const ConeConfiguration& c, std::size_t i) {
    double d = 10;
    for (std::size_t j = 0; j < c.positions.size(); ++j)
        if (j != i) d = std::min(d, std::abs(c.positions[j] - c.positions[i]));
    return d;
}

}  // namespace bubblekit::test
