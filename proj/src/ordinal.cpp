#include "wordclust/ordinal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace wordclust {

OrdinalScale::OrdinalScale(std::vector<std::string> classes) : classes_(std::move(classes)) {
    if (classes_.size() < 2) throw std::invalid_argument("ordinal scale needs >= 2 classes");
    std::set<std::string> seen(classes_.begin(), classes_.end());
    if (seen.size() != classes_.size()) {
        throw std::invalid_argument("ordinal scale has duplicate classes");
    }
}

OrdinalScale OrdinalScale::five_point() {
    return OrdinalScale(
        {"VeryNegative", "Negative", "Neutral", "Positive", "VeryPositive"});
}

std::optional<std::size_t> OrdinalScale::rank(const std::string& cls) const {
    auto it = std::find(classes_.begin(), classes_.end(), cls);
    if (it == classes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes_.begin());
}

MaeResult mae_macro(std::span<const std::string> gold, std::span<const std::string> pred,
                    const OrdinalScale& scale) {
    if (gold.size() != pred.size()) {
        throw std::invalid_argument("mae_macro: gold/pred length mismatch");
    }
    if (gold.empty()) throw std::invalid_argument("mae_macro: empty input");

    std::vector<double> error_sum(scale.size(), 0.0);
    std::vector<std::size_t> counts(scale.size(), 0);
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const auto g = scale.rank(gold[i]);
        const auto p = scale.rank(pred[i]);
        if (!g) throw std::invalid_argument("mae_macro: gold class '" + gold[i] +
                                            "' not in scale");
        if (!p) throw std::invalid_argument("mae_macro: predicted class '" + pred[i] +
                                            "' not in scale");
        error_sum[*g] += std::abs(static_cast<double>(*p) - static_cast<double>(*g));
        ++counts[*g];
    }

    MaeResult result;
    double total = 0.0;
    std::size_t present = 0;
    for (std::size_t j = 0; j < scale.size(); ++j) {
        if (counts[j] == 0) {
            result.missing_classes.push_back(scale.classes()[j]);
            continue;
        }
        total += error_sum[j] / static_cast<double>(counts[j]);
        ++present;
    }
    result.value = total / static_cast<double>(present);
    return result;
}

} // namespace wordclust
