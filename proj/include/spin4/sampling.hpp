#pragma once

#include <cstdint>
#include <random>

#include "spin4/hilbert.hpp"

namespace spin4 {

/// Haar-random pure data state: four complex standard normals, normalized.
inline DataVector haar_random_data_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    DataVector v;
    for (std::size_t i = 0; i < 4; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = cplx(re, im);
    }
    return normalized(v);
}

inline DataVector haar_random_data_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_random_data_state(rng);
}

}  // namespace spin4
