#include "nakascan/features.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace nakascan {

namespace {

std::vector<std::string> build_names() {
    std::vector<std::string> names;
    names.reserve(kFeatureCount);
    for (const char* m : {"aspect_ratio", "compactness", "roundness", "convexity",
                          "form_factor", "solidity", "fd_kolmogorov", "fd_minkowski",
                          "fd_hausdorff"})
        names.push_back(std::string("morph.") + m);
    for (MapKind k : kAllMapKinds) {
        const std::string tag = map_kind_tag(k);
        for (const char* f : {"echogenicity", "heterogeneity", "fnpa", "hurst",
                              "shadow_normal", "relative_absorption", "cooc_contrast",
                              "margin_area", "margin_gradient"})
            names.push_back(tag + "." + f);
    }
    return names;
}

} // namespace

const std::vector<std::string>& canonical_feature_names() {
    static const std::vector<std::string> names = build_names();
    return names;
}

std::size_t canonical_feature_index(const std::string& name) {
    static const std::unordered_map<std::string, std::size_t> index = [] {
        std::unordered_map<std::string, std::size_t> m;
        const auto& names = canonical_feature_names();
        for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = i;
        return m;
    }();
    auto it = index.find(name);
    if (it == index.end())
        throw std::invalid_argument("unknown canonical feature name: " + name);
    return it->second;
}

FeatureVector::FeatureVector(std::string mass_id, MassLabel label,
                             std::vector<double> values)
    : mass_id_(std::move(mass_id)), label_(label), values_(std::move(values)) {
    if (values_.size() != kFeatureCount)
        throw std::invalid_argument("FeatureVector: expected 72 features, got " +
                                    std::to_string(values_.size()));
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("FeatureVector: non-finite feature value");
}

double FeatureVector::at(const std::string& name) const {
    return values_[canonical_feature_index(name)];
}

std::vector<int> FeatureTable::labels_pm1() const {
    std::vector<int> y;
    y.reserve(rows.size());
    for (const auto& r : rows) y.push_back(r.label() == MassLabel::Malignant ? 1 : -1);
    return y;
}

std::vector<double> FeatureTable::column(std::size_t feature_index) const {
    std::vector<double> c;
    c.reserve(rows.size());
    for (const auto& r : rows) c.push_back(r.values()[feature_index]);
    return c;
}

} // namespace nakascan
