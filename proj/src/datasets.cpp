#include "umatch/datasets.hpp"

#include <cmath>
#include <numbers>

#include "umatch/errors.hpp"

namespace umatch {

std::string DatasetSpec::label() const {
    std::string s = kind;
    if (kind == "grf2d" || kind == "grf3d")
        s += "-side" + std::to_string(side);
    else
        s += "-n" + std::to_string(n);
    if (kind == "uniform") s += "-d" + std::to_string(dim);
    if (kind != "circle") s += "-s" + std::to_string(seed);
    return s;
}

double unit_uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::vector<std::vector<double>> er_weights(Index n, std::mt19937_64& rng) {
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0));
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) w[i][j] = w[j][i] = unit_uniform(rng);
    return w;
}

std::vector<std::vector<double>> uniform_points(Index n, Index dim, std::mt19937_64& rng) {
    std::vector<std::vector<double>> p(n, std::vector<double>(dim));
    for (auto& x : p)
        for (auto& c : x) c = unit_uniform(rng);
    return p;
}

std::vector<std::vector<double>> circle_points(Index n) {
    std::vector<std::vector<double>> p;
    for (Index i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * double(i) / double(n);
        p.push_back({std::cos(t), std::sin(t)});
    }
    return p;
}

std::vector<double> smoothed_noise(const std::vector<Index>& shape, std::mt19937_64& rng) {
    Index total = 1;
    for (Index s : shape) total *= s;
    std::vector<double> v(total);
    // Box-Muller
    for (Index i = 0; i < total; ++i) {
        double u1 = 1.0 - unit_uniform(rng), u2 = unit_uniform(rng);
        v[i] = std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }
    Index stride = total;
    for (Index ax = 0; ax < shape.size(); ++ax) {
        Index len = shape[ax];
        stride /= len;
        long radius = long(std::max<Index>(1, len / 8));
        std::vector<double> out(total);
        for (Index i = 0; i < total; ++i) {
            long pos = long((i / stride) % len);
            double s = 0;
            for (long k = -radius; k <= radius; ++k) {
                long q = ((pos + k) % long(len) + long(len)) % long(len);
                s += v[i + (q - pos) * long(stride)];
            }
            out[i] = s / double(2 * radius + 1);
        }
        v.swap(out);
    }
    return v;
}

ComplexPtr make_dataset(const DatasetSpec& s, Index top_dim) {
    std::mt19937_64 rng(s.seed);
    auto need = [](Index v, const char* what) {
        if (v == 0) throw UsageError(std::string("dataset needs a positive --") + what);
    };
    if (s.kind == "er") {
        need(s.n, "n");
        return std::make_shared<CliqueComplex>(er_weights(s.n, rng), top_dim);
    }
    if (s.kind == "uniform") {
        need(s.n, "n");
        need(s.dim, "dim");
        return std::make_shared<CliqueComplex>(distance_matrix(uniform_points(s.n, s.dim, rng), Metric::Euclidean),
                                               top_dim);
    }
    if (s.kind == "torus") {
        need(s.n, "n");
        return std::make_shared<CliqueComplex>(distance_matrix(uniform_points(s.n, 3, rng), Metric::Torus), top_dim);
    }
    if (s.kind == "circle") {
        need(s.n, "n");
        return std::make_shared<CliqueComplex>(distance_matrix(circle_points(s.n), Metric::Euclidean), top_dim);
    }
    if (s.kind == "grf2d" || s.kind == "grf3d") {
        need(s.side, "side");
        std::vector<Index> shape(s.kind == "grf2d" ? 2 : 3, s.side);
        return std::make_shared<CubicalComplex>(shape, smoothed_noise(shape, rng));
    }
    throw UsageError("unknown dataset '" + s.kind + "' (expected er, uniform, torus, circle, grf2d or grf3d)");
}

}  // namespace umatch
