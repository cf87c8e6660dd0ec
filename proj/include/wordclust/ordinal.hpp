#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wordclust {

/// Ordered class inventory with consecutive ranks from 0.
class OrdinalScale {
public:
    explicit OrdinalScale(std::vector<std::string> classes);

    /// VeryNegative < Negative < Neutral < Positive < VeryPositive.
    static OrdinalScale five_point();

    std::size_t size() const { return classes_.size(); }
    const std::vector<std::string>& classes() const { return classes_; }
    std::optional<std::size_t> rank(const std::string& cls) const;

    friend bool operator==(const OrdinalScale&, const OrdinalScale&) = default;

private:
    std::vector<std::string> classes_;
};

struct MaeResult {
    double value = 0.0;
    /// Scale classes absent from gold, skipped from the macro average.
    std::vector<std::string> missing_classes;
};

/// Macro-averaged mean absolute error over ordinal ranks: per gold class, the
/// mean |rank(pred) - rank(gold)| of its items, averaged unweighted over the
/// classes present in gold. Lower is better; bounded by |C|-1.
MaeResult mae_macro(std::span<const std::string> gold, std::span<const std::string> pred,
                    const OrdinalScale& scale);

} // namespace wordclust
