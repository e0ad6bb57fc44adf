#include "newsbias/error.hpp"
#include "newsbias/learn.hpp"

#include <cmath>

namespace newsbias {

std::string_view to_string(BayesVariant v) noexcept {
    return v == BayesVariant::bernoulli ? "bernoulli" : "multinomial";
}

std::array<double, 2> BayesModel::log_joint(const FeatureVector& v) const {
    for (const auto& e : v.entries)
        if (e.id >= dimension()) throw DataError("feature id outside the model dimension");
    std::array<double, 2> out = log_prior;
    for (int c = 0; c < 2; ++c) {
        if (variant == BayesVariant::bernoulli) {
            out[c] += absent_base[c];
            for (const auto& e : v.entries) out[c] += log_theta[c][e.id] - log_one_minus_theta[c][e.id];
        } else {
            for (const auto& e : v.entries) out[c] += e.value * log_theta[c][e.id];
        }
    }
    return out;
}

std::array<double, 2> BayesModel::log_posterior(const FeatureVector& v) const {
    auto j = log_joint(v);
    const double hi = std::max(j[0], j[1]);
    const double norm = hi + std::log(std::exp(j[0] - hi) + std::exp(j[1] - hi));
    return {j[0] - norm, j[1] - norm};
}

BayesModel train_nb(const Dataset& data, BayesVariant variant, double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("Naive Bayes alpha must be positive");
    if (variant == BayesVariant::bernoulli && data.representation != Representation::boolean)
        throw ConfigError("Bernoulli Naive Bayes needs boolean vectors, got " +
                          std::string(to_string(data.representation)));
    data.validate();
    if (data.count(Gender::female) == 0 || data.count(Gender::male) == 0)
        throw DataError("Naive Bayes training needs both classes present");

    const std::size_t d = data.dimension;
    BayesModel m;
    m.variant = variant;
    m.alpha = alpha;

    std::array<double, 2> docs{};
    std::array<std::vector<double>, 2> mass{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    std::array<double, 2> total{};
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int c = static_cast<int>(data.labels[i]);
        docs[c] += 1.0;
        for (const auto& e : data.vectors[i].entries) {
            const double x = variant == BayesVariant::bernoulli ? 1.0 : e.value;
            mass[c][e.id] += x;
            total[c] += x;
        }
    }

    const double n = static_cast<double>(data.size());
    for (int c = 0; c < 2; ++c) {
        m.log_prior[c] = std::log(docs[c] / n);
        m.log_theta[c].resize(d);
        if (variant == BayesVariant::bernoulli) {
            m.log_one_minus_theta[c].resize(d);
            const double denom = docs[c] + 2.0 * alpha;
            for (std::size_t j = 0; j < d; ++j) {
                m.log_theta[c][j] = std::log((mass[c][j] + alpha) / denom);
                m.log_one_minus_theta[c][j] = std::log((docs[c] - mass[c][j] + alpha) / denom);
                m.absent_base[c] += m.log_one_minus_theta[c][j];
            }
        } else {
            const double denom = total[c] + alpha * static_cast<double>(d);
            for (std::size_t j = 0; j < d; ++j) m.log_theta[c][j] = std::log((mass[c][j] + alpha) / denom);
        }
    }
    return m;
}

} // namespace newsbias
