#include "newsbias/error.hpp"
#include "newsbias/learn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace newsbias {

namespace {

double entropy(double a, double b) {
    const double n = a + b;
    double h = 0.0;
    for (const double x : {a, b})
        if (x > 0.0) h -= (x / n) * std::log2(x / n);
    return h;
}

Gender majority(const std::array<std::size_t, 2>& counts) {
    return counts[1] > counts[0] ? Gender::male : Gender::female;
}

bool has_feature(const FeatureVector& v, std::uint32_t id) {
    const auto it = std::lower_bound(v.entries.begin(), v.entries.end(), id,
                                     [](const FeatureEntry& e, std::uint32_t x) { return e.id < x; });
    return it != v.entries.end() && it->id == id && it->value > 0.0;
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const TreeParams& params) : data_(data), params_(params) {}

    TreeModel build() {
        std::vector<std::size_t> all(data_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        model_.dimension = data_.dimension;
        model_.max_depth = params_.max_depth;
        model_.min_leaf = params_.min_leaf;
        grow(all, 0);
        return std::move(model_);
    }

private:
    struct Split {
        std::uint32_t feature = 0;
        double gain_ratio = -1.0;
    };

    std::uint32_t grow(const std::vector<std::size_t>& members, int depth) {
        const auto index = static_cast<std::uint32_t>(model_.nodes.size());
        model_.nodes.emplace_back();
        auto& node = model_.nodes.back();
        node.depth = depth;
        for (const auto i : members) ++node.counts[static_cast<int>(data_.labels[i])];
        node.label = majority(node.counts);

        const auto counts = node.counts;
        const bool pure = counts[0] == 0 || counts[1] == 0;
        if (pure || depth >= params_.max_depth ||
            members.size() < 2 * static_cast<std::size_t>(params_.min_leaf))
            return index;

        const auto split = best_split(members, counts);
        if (!split) return index;

        std::vector<std::size_t> absent;
        std::vector<std::size_t> present;
        for (const auto i : members) (has_feature(data_.vectors[i], split->feature) ? present : absent).push_back(i);

        const auto absent_child = grow(absent, depth + 1);
        const auto present_child = grow(present, depth + 1);
        auto& parent = model_.nodes[index];
        parent.feature = split->feature;
        parent.absent = absent_child;
        parent.present = present_child;
        return index;
    }

    std::optional<Split> best_split(const std::vector<std::size_t>& members, const std::array<std::size_t, 2>& counts) {
        // present[c] per feature, over the features seen at this node.
        std::map<std::uint32_t, std::array<std::size_t, 2>> present;
        for (const auto i : members) {
            const int c = static_cast<int>(data_.labels[i]);
            for (const auto& e : data_.vectors[i].entries)
                if (e.value > 0.0) ++present[e.id][c];
        }

        const double n = static_cast<double>(members.size());
        const double parent_h = entropy(static_cast<double>(counts[0]), static_cast<double>(counts[1]));
        const auto min_leaf = static_cast<std::size_t>(params_.min_leaf);

        struct Candidate {
            std::uint32_t feature;
            double gain;
            double ratio;
        };
        std::vector<Candidate> candidates;
        for (const auto& [feature, p] : present) {
            const std::size_t in = p[0] + p[1];
            const std::size_t out = members.size() - in;
            if (in < min_leaf || out < min_leaf || in == 0 || out == 0) continue;
            const double a0 = static_cast<double>(counts[0] - p[0]);
            const double a1 = static_cast<double>(counts[1] - p[1]);
            const double gain = parent_h - (static_cast<double>(in) / n) * entropy(p[0], p[1]) -
                                (static_cast<double>(out) / n) * entropy(a0, a1);
            if (gain <= 1e-12) continue;
            const double split_info = entropy(static_cast<double>(in), static_cast<double>(out));
            candidates.push_back({feature, gain, gain / split_info});
        }
        if (candidates.empty()) return std::nullopt;

        double mean_gain = 0.0;
        for (const auto& c : candidates) mean_gain += c.gain;
        mean_gain /= static_cast<double>(candidates.size());

        std::optional<Split> best;
        for (const auto& c : candidates) {
            if (c.gain < mean_gain - 1e-12) continue;
            if (!best || c.ratio > best->gain_ratio + 1e-12) best = Split{c.feature, c.ratio};
        }
        return best;
    }

    const Dataset& data_;
    TreeParams params_;
    TreeModel model_;
};

} // namespace

int TreeModel::depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

std::size_t TreeModel::leaves() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.feature < 0; }));
}

TreeModel train_tree(const Dataset& data, const TreeParams& params) {
    if (data.representation != Representation::boolean)
        throw ConfigError("decision tree needs boolean vectors, got " + std::string(to_string(data.representation)));
    if (params.max_depth < 0) throw ConfigError("tree max_depth must be non-negative");
    if (params.min_leaf < 1) throw ConfigError("tree min_leaf must be at least 1");
    if (data.size() == 0) throw DataError("cannot train a tree on an empty dataset");
    data.validate();
    for (const auto& v : data.vectors)
        for (const auto& e : v.entries)
            if (e.value != 1.0) throw ConfigError("decision tree needs boolean vectors (all values 1)");
    return TreeBuilder(data, params).build();
}

Gender predict(const TreeModel& model, const FeatureVector& v) {
    for (const auto& e : v.entries)
        if (e.id >= model.dimension) throw DataError("feature id outside the model dimension");
    if (model.nodes.empty()) throw InvariantError("empty tree");
    std::uint32_t at = 0;
    while (model.nodes[at].feature >= 0) {
        const auto& n = model.nodes[at];
        at = has_feature(v, static_cast<std::uint32_t>(n.feature)) ? n.present : n.absent;
    }
    return model.nodes[at].label;
}

} // namespace newsbias
