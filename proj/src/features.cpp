#include "wordclust/features.hpp"

#include "wordclust/numfmt.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace wordclust {

void SparseFeatureVector::add(std::string name, double value) {
    if (value == 0.0) return;
    auto [it, inserted] = entries_.try_emplace(std::move(name), value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0.0) entries_.erase(it);
    }
}

double SparseFeatureVector::get(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? 0.0 : it->second;
}

SparseFeatureVector combine(std::span<const SparseFeatureVector> vectors) {
    SparseFeatureVector out;
    for (const auto& v : vectors) {
        for (const auto& [name, value] : v.entries()) out.add(name, value);
    }
    return out;
}

SentimentLexicon load_lexicon(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon: " + path.string());
    SentimentLexicon lex;
    lex.name = std::move(name);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        double score = 0.0;
        if (tab == std::string::npos || tab == 0 ||
            !parse_double(std::string_view(line).substr(tab + 1), score)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected `word<TAB>score`");
        }
        lex.polarity[line.substr(0, tab)] = score;
    }
    return lex;
}

SparseFeatureVector ngram_features(std::span<const Token> tokens, NgramRange range) {
    if (range.lo < 1 || range.lo > range.hi) {
        throw std::invalid_argument("ngram_features: need 1 <= lo <= hi");
    }
    SparseFeatureVector out;
    for (int n = range.lo; n <= range.hi; ++n) {
        if (tokens.size() < static_cast<std::size_t>(n)) break;
        const std::string prefix = "ng" + std::to_string(n) + ":";
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string gram = prefix;
            for (int j = 0; j < n; ++j) {
                if (j > 0) gram += '_';
                gram += tokens[i + static_cast<std::size_t>(j)].surface;
            }
            out.add(std::move(gram), 1.0);
        }
    }
    return out;
}

SparseFeatureVector char_ngram_features(std::string_view text, NgramRange range) {
    if (range.lo < 1 || range.lo > range.hi) {
        throw std::invalid_argument("char_ngram_features: need 1 <= lo <= hi");
    }
    SparseFeatureVector out;
    for (int n = range.lo; n <= range.hi; ++n) {
        const auto width = static_cast<std::size_t>(n);
        if (text.size() < width) break;
        const std::string prefix = "cg" + std::to_string(n) + ":";
        for (std::size_t i = 0; i + width <= text.size(); ++i) {
            out.add(prefix + std::string(text.substr(i, width)), 1.0);
        }
    }
    return out;
}

SparseFeatureVector lexicon_features(std::span<const Token> tokens,
                                     const SentimentLexicon& lexicon) {
    double sum = 0.0;
    double max_score = 0.0;
    double last = 0.0;
    int pos_count = 0;
    int neg_count = 0;
    bool any = false;
    for (const auto& token : tokens) {
        auto it = lexicon.polarity.find(token.surface);
        if (it == lexicon.polarity.end()) continue;
        const double score = it->second;
        if (!any || score > max_score) max_score = score;
        any = true;
        sum += score;
        last = score;
        if (score > 0.0) ++pos_count;
        if (score < 0.0) ++neg_count;
    }
    SparseFeatureVector out;
    if (!any) return out;
    const std::string prefix = "lex:" + lexicon.name + ":";
    out.add(prefix + "pos_count", pos_count);
    out.add(prefix + "neg_count", neg_count);
    out.add(prefix + "sum", sum);
    out.add(prefix + "max", max_score);
    out.add(prefix + "last", last);
    return out;
}

namespace {

std::string cluster_family(const ClusterModel& model) {
    return "clus" + std::to_string(model.k());
}

std::string cluster_value(const ClusterModel& model, const Token& token) {
    auto id = model.assign_word(token.surface);
    return id ? std::to_string(*id) : "oov";
}

} // namespace

SparseFeatureVector cluster_bag_features(std::span<const Token> tokens,
                                         const ClusterModel& model) {
    SparseFeatureVector out;
    const std::string family = cluster_family(model);
    for (const auto& token : tokens) {
        out.add(family + ":" + cluster_value(model, token), 1.0);
    }
    return out;
}

std::vector<SparseFeatureVector> cluster_token_features(std::span<const Token> tokens,
                                                        const ClusterModel& model,
                                                        int context_window) {
    if (context_window < 0) {
        throw std::invalid_argument("cluster_token_features: window must be >= 0");
    }
    const std::string family = cluster_family(model);
    std::vector<std::string> ids;
    ids.reserve(tokens.size());
    for (const auto& token : tokens) ids.push_back(cluster_value(model, token));

    std::vector<SparseFeatureVector> out(tokens.size());
    const auto n = static_cast<long long>(tokens.size());
    for (long long i = 0; i < n; ++i) {
        for (long long o = -context_window; o <= context_window; ++o) {
            const long long j = i + o;
            if (j < 0 || j >= n) continue;
            out[static_cast<std::size_t>(i)].add(
                family + "[" + std::to_string(o) + "]:" + ids[static_cast<std::size_t>(j)],
                1.0);
        }
    }
    return out;
}

std::vector<SparseFeatureVector> capitalization_features(std::span<const Token> tokens) {
    std::vector<SparseFeatureVector> out(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& s = tokens[i].surface;
        bool has_alpha = false;
        bool all_upper = true;
        bool has_digit = false;
        bool all_punct = !s.empty();
        for (unsigned char c : s) {
            if (std::isalpha(c)) {
                has_alpha = true;
                if (!std::isupper(c)) all_upper = false;
            }
            if (std::isdigit(c)) has_digit = true;
            if (!std::ispunct(c)) all_punct = false;
        }
        if (!s.empty() && std::isupper(static_cast<unsigned char>(s.front()))) {
            out[i].add("cap:initial", 1.0);
        }
        if (has_alpha && all_upper) out[i].add("cap:all_caps", 1.0);
        if (has_digit) out[i].add("cap:digit", 1.0);
        if (all_punct) out[i].add("cap:punct", 1.0);
    }
    return out;
}

std::vector<SparseFeatureVector> annotation_window_features(
    std::span<const std::string> values, std::string_view family, int window) {
    if (window < 0) {
        throw std::invalid_argument("annotation_window_features: window must be >= 0");
    }
    std::vector<SparseFeatureVector> out(values.size());
    const auto n = static_cast<long long>(values.size());
    for (long long i = 0; i < n; ++i) {
        for (long long o = -window; o <= window; ++o) {
            const long long j = i + o;
            if (j < 0 || j >= n) continue;
            const std::string& value = values[static_cast<std::size_t>(j)];
            if (value.empty()) continue;
            out[static_cast<std::size_t>(i)].add(
                std::string(family) + "[" + std::to_string(o) + "]:" + value, 1.0);
        }
    }
    return out;
}

std::optional<ParsedFeatureName> parse_feature_name(std::string_view name) {
    const auto colon = name.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 > name.size()) {
        return std::nullopt;
    }
    ParsedFeatureName parsed;
    std::string_view family = name.substr(0, colon);
    parsed.detail = std::string(name.substr(colon + 1));

    // Cluster families look like `clus500` or `clus500[-1]`.
    if (family.starts_with("clus")) {
        std::string_view rest = family.substr(4);
        const auto bracket = rest.find('[');
        std::string_view digits = bracket == std::string_view::npos ? rest : rest.substr(0, bracket);
        long long k = 0;
        if (parse_int(digits, k) && k > 0) {
            parsed.cluster_k = static_cast<int>(k);
        }
    }
    parsed.family = std::string(family);
    return parsed;
}

} // namespace wordclust
