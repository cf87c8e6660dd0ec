#include "wordclust/embedding.hpp"

#include "wordclust/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace wordclust {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

bool looks_like_header(const std::vector<std::string_view>& fields) {
    if (fields.size() != 2) return false;
    for (auto f : fields) {
        unsigned long long v = 0;
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || ptr != f.data() + f.size()) return false;
    }
    return true;
}

} // namespace

EmbeddingTable::EmbeddingTable(std::vector<std::string> vocab, Matrix vectors)
    : vocab_(std::move(vocab)), vectors_(std::move(vectors)) {
    if (vocab_.size() != vectors_.rows()) {
        throw std::invalid_argument("embedding table: vocab/vector row count mismatch");
    }
    index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        if (!index_.emplace(vocab_[i], i).second) {
            throw std::invalid_argument("embedding table: duplicate word '" + vocab_[i] + "'");
        }
    }
}

std::optional<std::size_t> EmbeddingTable::row_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::span<const double>> EmbeddingTable::lookup(const std::string& word) const {
    auto row = row_of(word);
    if (!row) return std::nullopt;
    return vectors_.row(*row);
}

EmbeddingTable load_vectors(const std::filesystem::path& path,
                            std::optional<std::size_t> expected_dim, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path.string());

    LoadStats local;
    std::vector<std::string> vocab;
    std::vector<double> values;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t dim = expected_dim.value_or(0);

    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (first_content_line) {
            first_content_line = false;
            if (looks_like_header(fields)) {
                local.had_header = true;
                continue;
            }
        }
        if (fields.size() < 2) parse_fail(path, line_no, "expected `word v1 ... vD`");

        const std::size_t line_dim = fields.size() - 1;
        if (dim == 0) {
            dim = line_dim;
        } else if (line_dim != dim) {
            parse_fail(path, line_no,
                       "dimension mismatch: got " + std::to_string(line_dim) +
                           " components, expected " + std::to_string(dim));
        }

        std::string word(fields[0]);
        if (seen.contains(word)) {
            ++local.duplicates_skipped;
            continue;
        }

        for (std::size_t i = 1; i < fields.size(); ++i) {
            double v = 0.0;
            if (!parse_double(fields[i], v)) {
                parse_fail(path, line_no,
                           "non-numeric component '" + std::string(fields[i]) + "'");
            }
            if (!std::isfinite(v)) {
                parse_fail(path, line_no, "non-finite component");
            }
            values.push_back(v);
        }
        seen.emplace(std::move(word), vocab.size());
        vocab.push_back(std::string(fields[0]));
    }

    if (vocab.empty()) {
        throw std::runtime_error("vector file has no data lines: " + path.string());
    }

    Matrix vectors(vocab.size(), dim);
    for (std::size_t r = 0; r < vocab.size(); ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            vectors.at(r, c) = values[r * dim + c];
        }
    }
    if (stats) *stats = local;
    return EmbeddingTable(std::move(vocab), std::move(vectors));
}

void save_vectors(const EmbeddingTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write vector file: " + path.string());
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << table.vocab()[r];
        for (double v : table.vectors().row(r)) out << ' ' << format_double(v);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

EmbeddingTable l2_normalized(const EmbeddingTable& table) {
    Matrix m = table.vectors();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        double norm2 = 0.0;
        for (double v : row) norm2 += v * v;
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& v : row) v *= inv;
        }
    }
    return EmbeddingTable(table.vocab(), std::move(m));
}

} // namespace wordclust
