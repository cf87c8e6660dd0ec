#include "wordclust/corpus.hpp"

#include <fstream>
#include <stdexcept>

namespace wordclust {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
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

std::vector<SentimentExample> read_sentiment_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus: " + path.string());
    std::vector<SentimentExample> examples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 4) {
            fail(path, line_no, "expected `id<TAB>subject<TAB>label<TAB>text`, got " +
                                    std::to_string(fields.size()) + " fields");
        }
        examples.push_back(SentimentExample{std::move(fields[0]), std::move(fields[1]),
                                            std::move(fields[2]), std::move(fields[3])});
    }
    if (examples.empty()) throw std::runtime_error("empty corpus: " + path.string());
    return examples;
}

void write_sentiment_tsv(std::span<const SentimentExample> examples,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus: " + path.string());
    for (const auto& ex : examples) {
        out << ex.id << '\t' << ex.subject << '\t' << ex.label << '\t' << ex.text << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<TaggedSequence> read_conll(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus: " + path.string());
    std::vector<TaggedSequence> sequences;
    TaggedSequence current;
    bool current_has_pos = false;
    bool current_has_gaz = false;

    auto flush = [&]() {
        if (current.tokens.empty()) return;
        if (!current_has_pos) current.pos.clear();
        if (!current_has_gaz) current.gaz.clear();
        sequences.push_back(std::move(current));
        current = TaggedSequence{};
        current_has_pos = current_has_gaz = false;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 4 || fields[0].empty() || fields[1].empty()) {
            fail(path, line_no, "expected `surface<TAB>tag[<TAB>pos][<TAB>gaz]`");
        }
        current.tokens.push_back(Token{std::move(fields[0]), current.tokens.size()});
        current.tags.push_back(std::move(fields[1]));
        current.pos.push_back(fields.size() > 2 ? std::move(fields[2]) : std::string());
        current.gaz.push_back(fields.size() > 3 ? std::move(fields[3]) : std::string());
        if (fields.size() > 2) current_has_pos = true;
        if (fields.size() > 3) current_has_gaz = true;
    }
    flush();
    if (sequences.empty()) throw std::runtime_error("empty corpus: " + path.string());
    return sequences;
}

void write_conll(std::span<const TaggedSequence> sequences,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus: " + path.string());
    for (const auto& seq : sequences) {
        for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
            out << seq.tokens[i].surface << '\t' << seq.tags[i];
            const bool has_gaz = !seq.gaz.empty();
            if (!seq.pos.empty() || has_gaz) out << '\t' << (seq.pos.empty() ? "" : seq.pos[i]);
            if (has_gaz) out << '\t' << seq.gaz[i];
            out << '\n';
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace wordclust
