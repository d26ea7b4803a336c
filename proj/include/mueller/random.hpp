#pragma once

#include <cstdint>
#include <random>

#include "mueller/core.hpp"

namespace mueller {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline FourVector random_vector(Rng& rng, double lo = -2.0, double hi = 2.0) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

inline ParamSet random_params(Rng& rng, double lo = -2.0, double hi = 2.0) {
    ParamSet p;
    p.k = random_vector(rng, lo, hi);
    p.m = random_vector(rng, lo, hi);
    p.l = random_vector(rng, lo, hi);
    p.n = random_vector(rng, lo, hi);
    return p;
}

// Magnitude in [0.5, 2] with a random sign; keeps inverse-type scalars tame.
inline double random_nonzero_scalar(Rng& rng) {
    const double mag = uniform(rng, 0.5, 2.0);
    return uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
}

}  // namespace mueller
