#include "newsbias/error.hpp"
#include "newsbias/learn.hpp"
#include "newsbias/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace newsbias {

namespace {

double label_sign(Gender g) { return g == Gender::female ? 1.0 : -1.0; }

double dot(std::span<const double> w, const FeatureVector& x) {
    double s = 0.0;
    for (const auto& e : x.entries) s += w[e.id] * e.value;
    return s;
}

} // namespace

double LinearModel::score(const FeatureVector& v) const {
    for (const auto& e : v.entries)
        if (e.id >= weights.size()) throw DataError("feature id outside the model dimension");
    return dot(weights, v) + bias;
}

double svm_objective(const Dataset& data, std::span<const double> weights, double bias, double lambda) {
    double sq = bias * bias;
    for (const double w : weights) sq += w * w;
    double hinge = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double margin = label_sign(data.labels[i]) * (dot(weights, data.vectors[i]) + bias);
        hinge += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * lambda * sq + (data.size() ? hinge / static_cast<double>(data.size()) : 0.0);
}

LinearModel train_svm(const Dataset& data, const SvmParams& params) {
    if (data.size() == 0) throw DataError("cannot train an SVM on an empty dataset");
    if (!(params.lambda > 0.0)) throw ConfigError("SVM lambda must be positive");
    if (params.epochs < 1) throw ConfigError("SVM epochs must be at least 1");
    data.validate();

    const std::size_t d = data.dimension;
    const double lambda = params.lambda;
    const double radius_sq = 1.0 / lambda;

    // w = scale * v, the last slot of v being the bias weight.
    std::vector<double> v(d + 1, 0.0);
    double scale = 1.0;
    double v_sq = 0.0;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(params.seed);

    LinearModel best;
    best.lambda = lambda;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> w(d);
    std::uint64_t t = 0;

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (const auto i : order) {
            ++t;
            const auto& x = data.vectors[i];
            const double y = label_sign(data.labels[i]);
            const double eta = 1.0 / (lambda * static_cast<double>(t));

            double vx = v[d];
            double x_sq = 1.0;
            for (const auto& e : x.entries) {
                vx += v[e.id] * e.value;
                x_sq += e.value * e.value;
            }
            const double margin = y * scale * vx;

            if (t == 1) {
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
                v_sq = 0.0;
                vx = 0.0;
            } else {
                scale *= 1.0 - 1.0 / static_cast<double>(t);
            }

            if (margin < 1.0) {
                const double a = eta * y / scale;
                for (const auto& e : x.entries) v[e.id] += a * e.value;
                v[d] += a;
                v_sq += 2.0 * a * vx + a * a * x_sq;
            }

            const double norm_sq = scale * scale * v_sq;
            if (norm_sq > radius_sq) scale *= std::sqrt(radius_sq / norm_sq);

            if (scale < 1e-9) {
                for (auto& c : v) c *= scale;
                v_sq *= scale * scale;
                scale = 1.0;
            }
        }

        // Recompute the norm exactly once per epoch to stop drift.
        v_sq = 0.0;
        for (const double c : v) v_sq += c * c;
        for (std::size_t j = 0; j < d; ++j) w[j] = scale * v[j];
        const double b = scale * v[d];
        const double obj = svm_objective(data, w, b, lambda);
        best.epoch_objective.push_back(obj);
        if (obj < best_obj) {
            best_obj = obj;
            best.weights = w;
            best.bias = b;
        }
        best.best_objective.push_back(best_obj);
    }
    return best;
}

} // namespace newsbias
