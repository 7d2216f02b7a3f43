#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nakascan/data_model.hpp"

namespace nakascan {

inline constexpr std::size_t kFeatureCount = 72;

/// The canonical ordered 72-feature name list: 9 morphometric names,
/// then 9 per map kind in map-kind order. Single source of truth.
const std::vector<std::string>& canonical_feature_names();

/// Index of a canonical name; throws on unknown names.
std::size_t canonical_feature_index(const std::string& name);

/// One mass's 72 features in canonical order. Construction validates
/// the count and finiteness, so a 71- or 73-entry vector cannot exist.
class FeatureVector {
public:
    FeatureVector(std::string mass_id, MassLabel label, std::vector<double> values);

    const std::string& mass_id() const { return mass_id_; }
    MassLabel label() const { return label_; }
    const std::vector<double>& values() const { return values_; }
    double at(const std::string& name) const;

    bool operator==(const FeatureVector&) const = default;

private:
    std::string mass_id_;
    MassLabel label_;
    std::vector<double> values_;
};

/// Cohort table: one FeatureVector per mass.
struct FeatureTable {
    std::vector<FeatureVector> rows;

    std::size_t size() const { return rows.size(); }
    std::vector<int> labels_pm1() const; // +1 malignant, -1 benign
    /// Column of values for one canonical feature index.
    std::vector<double> column(std::size_t feature_index) const;
};

} // namespace nakascan
