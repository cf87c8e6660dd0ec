#include "wordclust/kmeans.hpp"

#include "wordclust/numfmt.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

namespace wordclust {

namespace {

struct AssignPass {
    std::vector<int> assignment;
    std::vector<double> dist2; // per point, to its assigned centroid
    double inertia = 0.0;
};

AssignPass assign_points(const Matrix& points, const Matrix& centroids) {
    AssignPass pass;
    const std::size_t n = points.rows();
    pass.assignment.resize(n);
    pass.dist2.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        auto point = points.row(p);
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double d = squared_distance(point, centroids.row(c));
            if (d < best_d) { // strict: ties keep the lowest cluster id
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        pass.assignment[p] = best;
        pass.dist2[p] = best_d;
    }
    for (double d : pass.dist2) pass.inertia += d;
    return pass;
}

/// Means per cluster; empty clusters get re-seeded with the point farthest
/// from its currently assigned centroid (each repair point used once).
Matrix update_centroids(const Matrix& points, const AssignPass& pass, std::size_t k) {
    const std::size_t dim = points.cols();
    Matrix centroids(k, dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t p = 0; p < points.rows(); ++p) {
        const auto c = static_cast<std::size_t>(pass.assignment[p]);
        ++counts[c];
        auto point = points.row(p);
        auto row = centroids.row(c);
        for (std::size_t j = 0; j < dim; ++j) row[j] += point[j];
    }
    std::vector<bool> used_for_repair(points.rows(), false);
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] > 0) {
            auto row = centroids.row(c);
            const double inv = 1.0 / static_cast<double>(counts[c]);
            for (std::size_t j = 0; j < dim; ++j) row[j] *= inv;
            continue;
        }
        std::size_t farthest = 0;
        double far_d = -1.0;
        for (std::size_t p = 0; p < points.rows(); ++p) {
            if (used_for_repair[p]) continue;
            if (pass.dist2[p] > far_d) {
                far_d = pass.dist2[p];
                farthest = p;
            }
        }
        used_for_repair[farthest] = true;
        auto src = points.row(farthest);
        auto row = centroids.row(c);
        std::copy(src.begin(), src.end(), row.begin());
    }
    return centroids;
}

double max_centroid_shift(const Matrix& a, const Matrix& b) {
    double shift = 0.0;
    for (std::size_t c = 0; c < a.rows(); ++c) {
        shift = std::max(shift, squared_distance(a.row(c), b.row(c)));
    }
    return shift;
}

/// The deterministic tie rule (lowest cluster id) cannot populate two
/// coincident centroids, so in degenerate duplicate-point inputs a cluster
/// can still be empty after convergence. Force-move the farthest point of a
/// multi-member cluster onto each remaining empty centroid; the moved point
/// sits exactly on it, so inertia never increases.
void force_fill_empty_clusters(const Matrix& points, Matrix& centroids,
                               AssignPass& pass) {
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> counts(k, 0);
    for (int a : pass.assignment) ++counts[static_cast<std::size_t>(a)];
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        std::size_t victim = points.rows();
        double far_d = -1.0;
        for (std::size_t p = 0; p < points.rows(); ++p) {
            const auto home = static_cast<std::size_t>(pass.assignment[p]);
            if (counts[home] < 2) continue;
            if (pass.dist2[p] > far_d) {
                far_d = pass.dist2[p];
                victim = p;
            }
        }
        if (victim == points.rows()) break; // k > N; unreachable via fit_with_restarts
        --counts[static_cast<std::size_t>(pass.assignment[victim])];
        ++counts[c];
        pass.assignment[victim] = static_cast<int>(c);
        pass.inertia -= pass.dist2[victim];
        pass.dist2[victim] = 0.0;
        auto src = points.row(victim);
        auto row = centroids.row(c);
        std::copy(src.begin(), src.end(), row.begin());
    }
}

} // namespace

Matrix kmeanspp_init(const Matrix& points, int k, Rng& rng) {
    const std::size_t n = points.rows();
    if (k < 1) throw std::invalid_argument("kmeans++: k must be >= 1");
    if (static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("kmeans++: k (" + std::to_string(k) +
                                    ") exceeds number of points (" + std::to_string(n) + ")");
    }

    Matrix centroids(static_cast<std::size_t>(k), points.cols());
    std::vector<bool> chosen(n, false);
    std::vector<double> min_dist2(n, std::numeric_limits<double>::infinity());

    std::size_t pick = rng.uniform_index(n);
    for (int c = 0; c < k; ++c) {
        chosen[pick] = true;
        auto src = points.row(pick);
        auto dst = centroids.row(static_cast<std::size_t>(c));
        std::copy(src.begin(), src.end(), dst.begin());

        if (c + 1 == k) break;

        double total = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            min_dist2[p] = std::min(min_dist2[p], squared_distance(points.row(p), src));
            total += min_dist2[p];
        }
        if (total > 0.0) {
            pick = rng.weighted_index(min_dist2);
        } else {
            // All remaining mass is zero (duplicates of chosen points):
            // fall back to a uniform draw over unchosen indices.
            std::size_t remaining = 0;
            for (std::size_t p = 0; p < n; ++p) remaining += chosen[p] ? 0 : 1;
            std::size_t target = rng.uniform_index(remaining);
            for (std::size_t p = 0; p < n; ++p) {
                if (chosen[p]) continue;
                if (target == 0) {
                    pick = p;
                    break;
                }
                --target;
            }
        }
    }
    return centroids;
}

LloydResult lloyd_fit(const Matrix& points, Matrix init, int max_iterations,
                      double tolerance) {
    if (init.rows() == 0 || init.rows() > points.rows()) {
        throw std::invalid_argument("lloyd_fit: init must have between 1 and N rows");
    }
    if (init.cols() != points.cols()) {
        throw std::invalid_argument("lloyd_fit: init dimensionality mismatch");
    }
    if (max_iterations < 1) throw std::invalid_argument("lloyd_fit: max_iterations must be >= 1");

    LloydResult result;
    result.centroids = std::move(init);
    AssignPass pass = assign_points(points, result.centroids);
    result.inertia_history.push_back(pass.inertia);

    for (int iter = 0; iter < max_iterations; ++iter) {
        Matrix next = update_centroids(points, pass, result.centroids.rows());
        const double shift = max_centroid_shift(result.centroids, next);
        result.centroids = std::move(next);
        ++result.iterations;

        AssignPass next_pass = assign_points(points, result.centroids);
        result.inertia_history.push_back(next_pass.inertia);
        const bool unchanged = next_pass.assignment == pass.assignment;
        pass = std::move(next_pass);
        if (unchanged || shift <= tolerance) break;
    }

    force_fill_empty_clusters(points, result.centroids, pass);
    if (pass.inertia != result.inertia_history.back()) {
        result.inertia_history.push_back(pass.inertia);
    }
    result.assignment = std::move(pass.assignment);
    result.inertia = pass.inertia;
    return result;
}

namespace {

LloydResult run_one_restart(const Matrix& points, const ClusterConfig& config,
                            std::uint64_t restart_seed) {
    Rng rng(restart_seed);
    Matrix init = kmeanspp_init(points, config.k, rng);
    return lloyd_fit(points, std::move(init), config.max_iterations, config.tolerance);
}

} // namespace

ClusterModel fit_with_restarts(const EmbeddingTable& table, const ClusterConfig& config) {
    if (config.k < 1) throw std::invalid_argument("clustering: k must be >= 1");
    if (static_cast<std::size_t>(config.k) > table.size()) {
        throw std::invalid_argument("clustering: k (" + std::to_string(config.k) +
                                    ") exceeds vocabulary size (" +
                                    std::to_string(table.size()) + ")");
    }
    if (config.restarts < 1) throw std::invalid_argument("clustering: restarts must be >= 1");
    if (config.tolerance < 0.0) throw std::invalid_argument("clustering: tolerance must be >= 0");

    const Matrix& points = table.vectors();
    std::vector<LloydResult> runs(static_cast<std::size_t>(config.restarts));

    // Restarts share nothing but the (read-only) points, so run them
    // concurrently when the workload is worth a thread.
    const bool concurrent =
        config.restarts > 1 && points.rows() * points.cols() >= (1u << 16);
    if (concurrent) {
        std::vector<std::future<LloydResult>> futures;
        futures.reserve(runs.size());
        for (int i = 0; i < config.restarts; ++i) {
            futures.push_back(std::async(std::launch::async, run_one_restart,
                                         std::cref(points), std::cref(config),
                                         config.seed + static_cast<std::uint64_t>(i)));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) runs[i] = futures[i].get();
    } else {
        for (int i = 0; i < config.restarts; ++i) {
            runs[static_cast<std::size_t>(i)] =
                run_one_restart(points, config, config.seed + static_cast<std::uint64_t>(i));
        }
    }

    std::size_t best = 0;
    std::vector<RestartStat> stats;
    stats.reserve(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        stats.push_back(RestartStat{config.seed + i, runs[i].inertia, runs[i].iterations});
        if (runs[i].inertia < runs[best].inertia) best = i;
    }

    LloydResult& chosen = runs[best];
    return ClusterModel(config, std::move(chosen.centroids), table.vocab(),
                        std::move(chosen.assignment), chosen.inertia, std::move(stats));
}

ClusterModel::ClusterModel(ClusterConfig config, Matrix centroids,
                           std::vector<std::string> vocab, std::vector<int> assignment,
                           double inertia, std::vector<RestartStat> restart_stats)
    : config_(config),
      centroids_(std::move(centroids)),
      vocab_(std::move(vocab)),
      assignment_(std::move(assignment)),
      inertia_(inertia),
      restart_stats_(std::move(restart_stats)) {
    if (vocab_.size() != assignment_.size()) {
        throw std::invalid_argument("cluster model: vocab/assignment size mismatch");
    }
    index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        const int id = assignment_[i];
        if (id < 0 || id >= config_.k) {
            throw std::invalid_argument("cluster model: assignment out of [0, k)");
        }
        index_.emplace(vocab_[i], id);
    }
}

std::optional<int> ClusterModel::assign_word(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double recompute_inertia(const Matrix& points, const Matrix& centroids,
                         const std::vector<int>& assignment) {
    double total = 0.0;
    for (std::size_t p = 0; p < points.rows(); ++p) {
        total += squared_distance(points.row(p),
                                  centroids.row(static_cast<std::size_t>(assignment[p])));
    }
    return total;
}

void export_lexicon(const ClusterModel& model, const std::filesystem::path& path) {
    std::vector<std::pair<int, std::string_view>> rows;
    rows.reserve(model.vocab().size());
    for (std::size_t i = 0; i < model.vocab().size(); ++i) {
        rows.emplace_back(model.assignments()[i], model.vocab()[i]);
    }
    std::sort(rows.begin(), rows.end());

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write lexicon: " + path.string());
    out << "# k=" << model.k() << " seed=" << model.config().seed
        << " restarts=" << model.config().restarts << '\n';
    out << "# inertia=" << format_double(model.inertia()) << '\n';
    for (const auto& [id, word] : rows) out << word << '\t' << id << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

LexiconFile import_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon: " + path.string());

    LexiconFile lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto pos = line.find("k=");
            if (pos != std::string::npos) {
                long long k = 0;
                const auto end = line.find(' ', pos);
                const auto field = std::string_view(line).substr(
                    pos + 2, (end == std::string::npos ? line.size() : end) - pos - 2);
                if (parse_int(field, k) && k > 0) lex.k = static_cast<int>(k);
            }
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected `word<TAB>cluster_id`");
        }
        std::string word = line.substr(0, tab);
        long long id = 0;
        if (!parse_int(std::string_view(line).substr(tab + 1), id) || id < 0) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed cluster id");
        }
        if (lex.k > 0 && id >= lex.k) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": cluster id " + std::to_string(id) +
                                     " out of range for declared k=" + std::to_string(lex.k));
        }
        if (!lex.assignment.emplace(std::move(word), static_cast<int>(id)).second) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate word");
        }
    }
    return lex;
}

} // namespace wordclust
