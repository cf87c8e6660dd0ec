#include "wordclust/tagger.hpp"

#include "wordclust/features.hpp"
#include "wordclust/numfmt.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wordclust {

namespace {

constexpr std::string_view kStartTag = "<start>";

/// Per-position feature vectors for one sequence, without the history
/// feature; the caller adds `prev:` afterwards (gold or predicted).
std::vector<SparseFeatureVector> position_features(const TaggedSequence& seq,
                                                   const TaggerConfig& config,
                                                   const ClusterModel* clusters) {
    const auto n = seq.tokens.size();
    std::vector<SparseFeatureVector> feats(n);

    if (config.use_surface) {
        const auto len = static_cast<long long>(n);
        for (long long i = 0; i < len; ++i) {
            for (long long o = -config.surface_window; o <= config.surface_window; ++o) {
                const long long j = i + o;
                if (j < 0 || j >= len) continue;
                feats[static_cast<std::size_t>(i)].add(
                    "w[" + std::to_string(o) + "]:" +
                        seq.tokens[static_cast<std::size_t>(j)].surface,
                    1.0);
            }
        }
    }
    if (config.use_capitalization) {
        auto caps = capitalization_features(seq.tokens);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [name, value] : caps[i].entries()) feats[i].add(name, value);
        }
    }
    if (config.use_clusters && clusters != nullptr) {
        auto clus = cluster_token_features(seq.tokens, *clusters, config.cluster_window);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [name, value] : clus[i].entries()) feats[i].add(name, value);
        }
    }
    if (config.use_annotations) {
        if (!seq.pos.empty()) {
            auto pos = annotation_window_features(seq.pos, "pos", config.pos_window);
            for (std::size_t i = 0; i < n; ++i) {
                for (const auto& [name, value] : pos[i].entries()) feats[i].add(name, value);
            }
        }
        if (!seq.gaz.empty()) {
            auto gaz = annotation_window_features(seq.gaz, "gaz", 0);
            for (std::size_t i = 0; i < n; ++i) {
                for (const auto& [name, value] : gaz[i].entries()) feats[i].add(name, value);
            }
        }
    }
    return feats;
}

void check_annotations(const TaggedSequence& seq) {
    if (!seq.pos.empty() && seq.pos.size() != seq.tokens.size()) {
        throw std::invalid_argument("sequence: pos column not token-aligned");
    }
    if (!seq.gaz.empty() && seq.gaz.size() != seq.tokens.size()) {
        throw std::invalid_argument("sequence: gaz column not token-aligned");
    }
}

/// I-t is only legal directly after B-t or I-t of the same type.
std::string repair_transition(const std::string& predicted, const std::string& previous) {
    if (predicted.size() >= 3 && predicted[0] == 'I' && predicted[1] == '-') {
        const std::string_view type = std::string_view(predicted).substr(2);
        const bool legal = previous.size() >= 3 &&
                           (previous[0] == 'B' || previous[0] == 'I') &&
                           std::string_view(previous).substr(2) == type;
        if (!legal) return "B-" + std::string(type);
    }
    return predicted;
}

} // namespace

TaggerModel::TaggerModel(TagScheme scheme, TaggerConfig config, LinearModel classifier,
                         std::shared_ptr<const ClusterModel> clusters)
    : scheme_(std::move(scheme)),
      config_(std::move(config)),
      classifier_(std::move(classifier)),
      clusters_(std::move(clusters)) {}

TaggerModel train_tagger(std::span<const TaggedSequence> sequences, const TagScheme& scheme,
                         const TaggerConfig& config,
                         std::shared_ptr<const ClusterModel> clusters) {
    if (sequences.empty()) throw std::invalid_argument("train_tagger: empty corpus");
    if (config.use_clusters && clusters == nullptr) {
        throw std::invalid_argument("train_tagger: cluster features enabled without a model");
    }

    std::vector<LabeledExample> dataset;
    for (const auto& seq : sequences) {
        if (seq.tags.size() != seq.tokens.size()) {
            throw std::invalid_argument("train_tagger: token/tag length mismatch");
        }
        check_annotations(seq);
        for (const auto& tag : seq.tags) {
            if (!scheme.contains(tag)) {
                throw std::invalid_argument("train_tagger: tag '" + tag +
                                            "' not in scheme");
            }
        }
        auto feats = position_features(seq, config, clusters.get());
        for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
            // Gold history at training time.
            feats[i].add("prev:" + (i == 0 ? std::string(kStartTag) : seq.tags[i - 1]), 1.0);
            dataset.emplace_back(std::move(feats[i]), seq.tags[i]);
        }
    }

    LinearModel classifier = train(dataset, config.train, scheme.labels());
    return TaggerModel(scheme, config, std::move(classifier), std::move(clusters));
}

TaggedSequence TaggerModel::tag(const TaggedSequence& input) const {
    check_annotations(input);
    TaggedSequence out = input;
    out.tags.assign(input.tokens.size(), std::string(kOutsideTag));
    auto feats = position_features(input, config_, clusters_.get());

    std::string previous(kStartTag);
    for (std::size_t i = 0; i < input.tokens.size(); ++i) {
        // Predicted history at inference time.
        feats[i].add("prev:" + previous, 1.0);
        const std::string& predicted = classifier_.predict(feats[i]);
        out.tags[i] = repair_transition(predicted, previous);
        previous = out.tags[i];
    }
    return out;
}

void TaggerModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write tagger model: " + path.string());
    out << "tagger\t1\n";
    out << "types\t" << scheme_.types().size() << '\n';
    for (const auto& type : scheme_.types()) out << type << '\n';
    out << "config\t" << (config_.use_surface ? 1 : 0) << '\t' << config_.surface_window
        << '\t' << (config_.use_capitalization ? 1 : 0) << '\t'
        << (config_.use_clusters ? 1 : 0) << '\t' << config_.cluster_window << '\t'
        << (config_.use_annotations ? 1 : 0) << '\t' << config_.pos_window << '\n';
    out.close();

    const std::filesystem::path classifier_path = path.string() + ".weights";
    classifier_.save(classifier_path);
}

TaggerModel TaggerModel::load(const std::filesystem::path& path,
                              std::shared_ptr<const ClusterModel> clusters) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tagger model: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "tagger\t1") {
        throw std::runtime_error(path.string() + ": expected `tagger<TAB>1` header");
    }
    if (!std::getline(in, line) || line.rfind("types\t", 0) != 0) {
        throw std::runtime_error(path.string() + ": expected `types<TAB>N`");
    }
    long long count = 0;
    if (!parse_int(std::string_view(line).substr(6), count) || count < 0) {
        throw std::runtime_error(path.string() + ": malformed type count");
    }
    std::vector<std::string> types;
    for (long long i = 0; i < count; ++i) {
        if (!std::getline(in, line)) {
            throw std::runtime_error(path.string() + ": truncated type list");
        }
        types.push_back(line);
    }
    if (!std::getline(in, line) || line.rfind("config\t", 0) != 0) {
        throw std::runtime_error(path.string() + ": expected config line");
    }
    TaggerConfig config;
    std::istringstream cfg(line.substr(7));
    int use_surface = 0, use_caps = 0, use_clusters = 0, use_annotations = 0;
    cfg >> use_surface >> config.surface_window >> use_caps >> use_clusters >>
        config.cluster_window >> use_annotations >> config.pos_window;
    if (!cfg) throw std::runtime_error(path.string() + ": malformed config line");
    config.use_surface = use_surface != 0;
    config.use_capitalization = use_caps != 0;
    config.use_clusters = use_clusters != 0;
    config.use_annotations = use_annotations != 0;
    if (config.use_clusters && clusters == nullptr) {
        throw std::runtime_error(path.string() + ": model needs a cluster lexicon");
    }

    LinearModel classifier = LinearModel::load(path.string() + ".weights");
    return TaggerModel(TagScheme(std::move(types)), config, std::move(classifier),
                       std::move(clusters));
}

} // namespace wordclust
