#include "wordclust/logreg.hpp"

#include "wordclust/numfmt.hpp"
#include "wordclust/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wordclust {

namespace {

/// Dataset re-encoded against a frozen feature index.
struct Encoded {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
    std::vector<std::size_t> labels;
};

void softmax_inplace(std::vector<double>& scores) {
    double max_score = scores[0];
    for (double s : scores) max_score = std::max(max_score, s);
    double total = 0.0;
    for (double& s : scores) {
        s = std::exp(s - max_score);
        total += s;
    }
    for (double& s : scores) s /= total;
}

double log_sum_exp(const std::vector<double>& scores) {
    double max_score = scores[0];
    for (double s : scores) max_score = std::max(max_score, s);
    double total = 0.0;
    for (double s : scores) total += std::exp(s - max_score);
    return max_score + std::log(total);
}

} // namespace

std::vector<double> LinearModel::scores(const SparseFeatureVector& vec) const {
    std::vector<double> s(bias_);
    const std::size_t num_feats = feature_index_.size();
    for (const auto& [name, value] : vec.entries()) {
        auto it = feature_index_.find(name);
        if (it == feature_index_.end()) continue; // unseen features are ignored
        const std::size_t col = it->second;
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            s[c] += weights_[c * num_feats + col] * value;
        }
    }
    return s;
}

std::vector<double> LinearModel::predict_proba(const SparseFeatureVector& vec) const {
    std::vector<double> s = scores(vec);
    softmax_inplace(s);
    return s;
}

const std::string& LinearModel::predict(const SparseFeatureVector& vec) const {
    const std::vector<double> p = predict_proba(vec);
    std::size_t best = 0;
    for (std::size_t c = 1; c < p.size(); ++c) {
        if (p[c] > p[best]) best = c;
    }
    return classes_[best];
}

double LinearModel::weight(std::size_t class_id, const std::string& feature) const {
    auto it = feature_index_.find(feature);
    if (it == feature_index_.end()) return 0.0;
    return weights_[class_id * feature_index_.size() + it->second];
}

LinearModel train(std::span<const LabeledExample> dataset, const TrainConfig& config,
                  std::vector<std::string> class_order, double* final_objective) {
    if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
    if (config.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
    if (config.learning_rate <= 0.0 || config.lr_decay < 0.0) {
        throw std::invalid_argument("train: rates must be positive");
    }
    if (config.l2_strength < 0.0) throw std::invalid_argument("train: l2_strength must be >= 0");
    if (config.learning_rate * config.l2_strength >= 1.0) {
        throw std::invalid_argument("train: learning_rate * l2_strength must be < 1");
    }

    std::set<std::string> label_set;
    for (const auto& [vec, label] : dataset) label_set.insert(label);
    if (label_set.size() < 2) {
        throw std::invalid_argument("train: need at least 2 distinct labels, got " +
                                    std::to_string(label_set.size()));
    }

    LinearModel model;
    if (class_order.empty()) {
        model.classes_.assign(label_set.begin(), label_set.end());
    } else {
        for (const auto& label : label_set) {
            if (std::find(class_order.begin(), class_order.end(), label) == class_order.end()) {
                throw std::invalid_argument("train: label '" + label +
                                            "' missing from class_order");
            }
        }
        model.classes_ = std::move(class_order);
    }

    std::size_t next_col = 0;
    for (const auto& [vec, label] : dataset) {
        for (const auto& [name, value] : vec.entries()) {
            (void)value;
            if (model.feature_index_.try_emplace(name, 0).second) ++next_col;
        }
    }
    next_col = 0;
    for (auto& [name, col] : model.feature_index_) col = next_col++;

    const std::size_t num_classes = model.classes_.size();
    const std::size_t num_feats = model.feature_index_.size();

    Encoded enc;
    enc.rows.reserve(dataset.size());
    enc.labels.reserve(dataset.size());
    for (const auto& [vec, label] : dataset) {
        std::vector<std::pair<std::size_t, double>> row;
        row.reserve(vec.size());
        for (const auto& [name, value] : vec.entries()) {
            row.emplace_back(model.feature_index_.at(name), value);
        }
        enc.rows.push_back(std::move(row));
        const auto it = std::find(model.classes_.begin(), model.classes_.end(), label);
        enc.labels.push_back(static_cast<std::size_t>(it - model.classes_.begin()));
    }

    // SGD with the usual weight-scaling trick so the per-step L2 shrink
    // (1 - rate*l2) costs O(1) instead of O(classes * features).
    std::vector<double> scaled_weights(num_classes * num_feats, 0.0);
    double scale = 1.0;
    model.bias_.assign(num_classes, 0.0);

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Rng rng(config.seed);
    std::vector<double> probs(num_classes);
    std::uint64_t step = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.shuffle) rng.shuffle(order);
        for (std::size_t idx : order) {
            const auto& row = enc.rows[idx];
            const std::size_t gold = enc.labels[idx];
            const double rate =
                config.learning_rate / (1.0 + config.lr_decay * static_cast<double>(step));
            ++step;

            for (std::size_t c = 0; c < num_classes; ++c) probs[c] = model.bias_[c];
            for (const auto& [col, value] : row) {
                for (std::size_t c = 0; c < num_classes; ++c) {
                    probs[c] += scale * scaled_weights[c * num_feats + col] * value;
                }
            }
            softmax_inplace(probs);

            if (config.l2_strength > 0.0) {
                scale *= 1.0 - rate * config.l2_strength;
                if (scale < 1e-100) {
                    for (double& w : scaled_weights) w *= scale;
                    scale = 1.0;
                }
            }
            for (std::size_t c = 0; c < num_classes; ++c) {
                const double g = probs[c] - (c == gold ? 1.0 : 0.0);
                model.bias_[c] -= rate * g;
                const double step_scale = rate * g / scale;
                for (const auto& [col, value] : row) {
                    scaled_weights[c * num_feats + col] -= step_scale * value;
                }
            }
        }
    }

    model.weights_.resize(scaled_weights.size());
    for (std::size_t i = 0; i < scaled_weights.size(); ++i) {
        model.weights_[i] = scale * scaled_weights[i];
    }

    if (final_objective) *final_objective = objective(model, dataset, config.l2_strength);
    return model;
}

double objective(const LinearModel& model, std::span<const LabeledExample> dataset,
                 double l2_strength) {
    if (dataset.empty()) throw std::invalid_argument("objective: empty dataset");
    double loss = 0.0;
    for (const auto& [vec, label] : dataset) {
        const auto it = std::find(model.classes_.begin(), model.classes_.end(), label);
        if (it == model.classes_.end()) {
            throw std::invalid_argument("objective: label '" + label + "' unknown to model");
        }
        const auto gold = static_cast<std::size_t>(it - model.classes_.begin());
        const std::vector<double> s = model.scores(vec);
        loss += log_sum_exp(s) - s[gold];
    }
    loss /= static_cast<double>(dataset.size());
    double reg = 0.0;
    for (double w : model.weights_) reg += w * w;
    return loss + 0.5 * l2_strength * reg;
}

double gradient_check(const LinearModel& model, std::span<const LabeledExample> dataset,
                      double l2_strength, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("gradient_check: epsilon must be > 0");
    const std::size_t num_classes = model.classes_.size();
    const std::size_t num_feats = model.feature_index_.size();

    // Analytic full-batch gradient of `objective` at the model's weights.
    std::vector<double> grad_w(model.weights_.size(), 0.0);
    std::vector<double> grad_b(num_classes, 0.0);
    for (const auto& [vec, label] : dataset) {
        const auto it = std::find(model.classes_.begin(), model.classes_.end(), label);
        const auto gold = static_cast<std::size_t>(it - model.classes_.begin());
        std::vector<double> p = model.scores(vec);
        softmax_inplace(p);
        for (std::size_t c = 0; c < num_classes; ++c) {
            const double g = p[c] - (c == gold ? 1.0 : 0.0);
            grad_b[c] += g;
            for (const auto& [name, value] : vec.entries()) {
                auto fit = model.feature_index_.find(name);
                if (fit == model.feature_index_.end()) continue;
                grad_w[c * num_feats + fit->second] += g * value;
            }
        }
    }
    const double inv_n = 1.0 / static_cast<double>(dataset.size());
    for (double& g : grad_w) g *= inv_n;
    for (double& g : grad_b) g *= inv_n;
    for (std::size_t i = 0; i < grad_w.size(); ++i) grad_w[i] += l2_strength * model.weights_[i];

    LinearModel probe = model;
    auto central_diff = [&](double& coord) {
        const double original = coord;
        coord = original + epsilon;
        const double hi = objective(probe, dataset, l2_strength);
        coord = original - epsilon;
        const double lo = objective(probe, dataset, l2_strength);
        coord = original;
        return (hi - lo) / (2.0 * epsilon);
    };

    double max_rel = 0.0;
    auto update = [&](double analytic, double numeric) {
        const double denom = std::max({std::abs(analytic), std::abs(numeric), 1.0});
        max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
    };
    for (std::size_t i = 0; i < probe.weights_.size(); ++i) {
        update(grad_w[i], central_diff(probe.weights_[i]));
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        update(grad_b[c], central_diff(probe.bias_[c]));
    }
    return max_rel;
}

void LinearModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model: " + path.string());
    out << "linmodel\t1\n";
    out << "classes\t" << classes_.size() << '\n';
    for (std::size_t c = 0; c < classes_.size(); ++c) out << c << '\t' << classes_[c] << '\n';
    out << "features\t" << feature_index_.size() << '\n';
    for (const auto& [name, col] : feature_index_) {
        if (name.find('\t') != std::string::npos || name.find('\n') != std::string::npos) {
            throw std::runtime_error("model feature name contains tab/newline: " + name);
        }
        out << col << '\t' << name << '\n';
    }
    out << "bias\n";
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        out << c << '\t' << format_double(bias_[c]) << '\n';
    }
    out << "weights\n";
    const std::size_t num_feats = feature_index_.size();
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        for (std::size_t f = 0; f < num_feats; ++f) {
            const double w = weights_[c * num_feats + f];
            if (w != 0.0) out << c << '\t' << f << '\t' << format_double(w) << '\n';
        }
    }
    out << "end\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

[[noreturn]] void model_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

} // namespace

LinearModel LinearModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model: " + path.string());

    LinearModel model;
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || split_tabs(line) != std::vector<std::string>{"linmodel", "1"}) {
        model_fail(path, line_no, "expected `linmodel<TAB>1` header");
    }

    long long count = 0;
    if (!next_line()) model_fail(path, line_no, "truncated model file");
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0] != "classes" || !parse_int(fields[1], count) || count < 1) {
        model_fail(path, line_no, "expected `classes<TAB>N`");
    }
    model.classes_.resize(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        if (!next_line()) model_fail(path, line_no, "truncated class list");
        fields = split_tabs(line);
        long long id = 0;
        if (fields.size() != 2 || !parse_int(fields[0], id) || id != i) {
            model_fail(path, line_no, "malformed class entry");
        }
        model.classes_[static_cast<std::size_t>(i)] = fields[1];
    }

    if (!next_line()) model_fail(path, line_no, "truncated model file");
    fields = split_tabs(line);
    if (fields.size() != 2 || fields[0] != "features" || !parse_int(fields[1], count) || count < 0) {
        model_fail(path, line_no, "expected `features<TAB>N`");
    }
    const auto num_feats = static_cast<std::size_t>(count);
    for (long long i = 0; i < count; ++i) {
        if (!next_line()) model_fail(path, line_no, "truncated feature list");
        fields = split_tabs(line);
        long long id = 0;
        if (fields.size() != 2 || !parse_int(fields[0], id) || id != i) {
            model_fail(path, line_no, "malformed feature entry");
        }
        if (!model.feature_index_.emplace(fields[1], static_cast<std::size_t>(id)).second) {
            model_fail(path, line_no, "duplicate feature name");
        }
    }

    model.bias_.assign(model.classes_.size(), 0.0);
    model.weights_.assign(model.classes_.size() * num_feats, 0.0);

    if (!next_line() || line != "bias") model_fail(path, line_no, "expected `bias` section");
    for (std::size_t c = 0; c < model.classes_.size(); ++c) {
        if (!next_line()) model_fail(path, line_no, "truncated bias section");
        fields = split_tabs(line);
        long long id = 0;
        double value = 0.0;
        if (fields.size() != 2 || !parse_int(fields[0], id) ||
            id != static_cast<long long>(c) || !parse_double(fields[1], value)) {
            model_fail(path, line_no, "malformed bias entry");
        }
        model.bias_[c] = value;
    }

    if (!next_line() || line != "weights") model_fail(path, line_no, "expected `weights` section");
    while (next_line()) {
        if (line == "end") return model;
        fields = split_tabs(line);
        long long c = 0, f = 0;
        double value = 0.0;
        if (fields.size() != 3 || !parse_int(fields[0], c) || !parse_int(fields[1], f) ||
            !parse_double(fields[2], value) || c < 0 ||
            c >= static_cast<long long>(model.classes_.size()) || f < 0 ||
            f >= static_cast<long long>(num_feats)) {
            model_fail(path, line_no, "malformed weight entry");
        }
        model.weights_[static_cast<std::size_t>(c) * num_feats + static_cast<std::size_t>(f)] =
            value;
    }
    model_fail(path, line_no, "missing `end` marker");
}

} // namespace wordclust
