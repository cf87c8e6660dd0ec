#pragma once

#include "wordclust/embedding.hpp"
#include "wordclust/matrix.hpp"
#include "wordclust/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wordclust {

struct ClusterConfig {
    int k = 0;
    int max_iterations = 300;
    int restarts = 10;
    std::uint64_t seed = 0;
    double tolerance = 0.0; // centroid-shift stop; 0 = run until assignment is fixed
};

struct RestartStat {
    std::uint64_t seed = 0;
    double inertia = 0.0;
    int iterations = 0;
};

struct LloydResult {
    Matrix centroids;
    std::vector<int> assignment; // per point, in [0, k)
    double inertia = 0.0;
    int iterations = 0;
    std::vector<double> inertia_history; // one entry per assignment pass, non-increasing
};

/// Fitted clustering of an embedding vocabulary. Immutable; thread-safe reads.
class ClusterModel {
public:
    ClusterModel(ClusterConfig config, Matrix centroids,
                 std::vector<std::string> vocab, std::vector<int> assignment,
                 double inertia, std::vector<RestartStat> restart_stats);

    int k() const { return config_.k; }
    double inertia() const { return inertia_; }
    const ClusterConfig& config() const { return config_; }
    const Matrix& centroids() const { return centroids_; }
    const std::vector<std::string>& vocab() const { return vocab_; }
    const std::vector<int>& assignments() const { return assignment_; }
    const std::vector<RestartStat>& restart_stats() const { return restart_stats_; }

    /// Cluster id for an in-vocabulary word, nullopt for OOV.
    std::optional<int> assign_word(const std::string& word) const;

private:
    ClusterConfig config_;
    Matrix centroids_;
    std::vector<std::string> vocab_;
    std::vector<int> assignment_;
    double inertia_ = 0.0;
    std::vector<RestartStat> restart_stats_;
    std::unordered_map<std::string, int> index_;
};

/// k-means++ seeding: first centroid uniform over points, each next one drawn
/// with probability proportional to squared distance to the nearest chosen
/// centroid. If all remaining squared distances are zero (duplicate points),
/// falls back to a uniform draw over not-yet-chosen indices. Deterministic
/// given the rng state. Throws if k > N or k < 1.
Matrix kmeanspp_init(const Matrix& points, int k, Rng& rng);

/// Lloyd iterations from the given init: assign to nearest centroid (squared
/// Euclidean, ties to the lowest cluster id), recompute means, repeat until
/// the assignment is unchanged, the max centroid shift drops to tolerance, or
/// max_iterations is hit. Empty clusters are re-seeded with the point
/// currently farthest from its assigned centroid.
LloydResult lloyd_fit(const Matrix& points, Matrix init, int max_iterations,
                      double tolerance);

/// Runs `restarts` independent k-means++(seed + i) + Lloyd fits and keeps the
/// minimum-inertia result (ties: lowest restart index). Deterministic with
/// respect to the table's stored vocab order: permuting the input rows maps
/// the per-restart draws onto different points, so determinism guarantees are
/// always stated relative to that order. Restarts may run on worker threads;
/// the result does not depend on the interleaving.
ClusterModel fit_with_restarts(const EmbeddingTable& table, const ClusterConfig& config);

/// Inertia of (centroids, assignment) recomputed from scratch.
double recompute_inertia(const Matrix& points, const Matrix& centroids,
                         const std::vector<int>& assignment);

/// TSV `word<TAB>cluster_id` sorted by cluster id then word, preceded by a
/// two-line comment header carrying k, seed, restarts and inertia.
void export_lexicon(const ClusterModel& model, const std::filesystem::path& path);

struct LexiconFile {
    std::unordered_map<std::string, int> assignment;
    int k = 0; // 0 when the header did not declare k
};

LexiconFile import_lexicon(const std::filesystem::path& path);

} // namespace wordclust
