#pragma once

#include "wordclust/bio.hpp"
#include "wordclust/kmeans.hpp"
#include "wordclust/logreg.hpp"

#include <filesystem>
#include <memory>
#include <span>

namespace wordclust {

struct TaggerConfig {
    bool use_surface = true;
    int surface_window = 2;
    bool use_capitalization = true;
    bool use_clusters = true;
    int cluster_window = 2;
    bool use_annotations = true;
    int pos_window = 1;
    TrainConfig train;
};

/// Greedy left-to-right BIO tagger: a multinomial linear classifier over
/// per-position features that include the previous tag (gold while training,
/// the previously emitted tag at inference). Illegal I-t transitions are
/// emitted as B-t so the output always decodes cleanly.
class TaggerModel {
public:
    TaggerModel(TagScheme scheme, TaggerConfig config, LinearModel classifier,
                std::shared_ptr<const ClusterModel> clusters);

    const TagScheme& scheme() const { return scheme_; }
    const TaggerConfig& config() const { return config_; }
    const LinearModel& classifier() const { return classifier_; }

    TaggedSequence tag(const TaggedSequence& input) const;

    /// Scheme + config + classifier sections; the cluster model is not
    /// embedded and must be re-supplied on load.
    void save(const std::filesystem::path& path) const;
    static TaggerModel load(const std::filesystem::path& path,
                            std::shared_ptr<const ClusterModel> clusters);

private:
    TagScheme scheme_;
    TaggerConfig config_;
    LinearModel classifier_;
    std::shared_ptr<const ClusterModel> clusters_;
};

TaggerModel train_tagger(std::span<const TaggedSequence> sequences, const TagScheme& scheme,
                         const TaggerConfig& config,
                         std::shared_ptr<const ClusterModel> clusters = nullptr);

} // namespace wordclust
