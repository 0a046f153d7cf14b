#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "umatch/complexes.hpp"

namespace umatch {

// Seeded synthetic inputs for benchmarks and tests.
struct DatasetSpec {
    std::string kind;  // er, uniform, torus, circle, grf2d, grf3d
    Index n = 0;       // points or vertices
    Index dim = 2;     // ambient dimension for uniform
    Index side = 0;    // image side for grf2d / grf3d
    std::uint64_t seed = 0;

    std::string label() const;  // e.g. "er-n25-s1"
};

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng);

// Symmetric weights in [0, 1) with zero diagonal.
std::vector<std::vector<double>> er_weights(Index n, std::mt19937_64& rng);
std::vector<std::vector<double>> uniform_points(Index n, Index dim, std::mt19937_64& rng);
std::vector<std::vector<double>> circle_points(Index n);
// White noise smoothed by a separable periodic moving average; row-major.
std::vector<double> smoothed_noise(const std::vector<Index>& shape, std::mt19937_64& rng);

// Throws UsageError for unknown kinds or missing sizes. Clique datasets are
// built up to top_dim without a threshold.
ComplexPtr make_dataset(const DatasetSpec& spec, Index top_dim);

}  // namespace umatch
