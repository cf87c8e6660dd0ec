#include "wordclust/textprep.hpp"

#include <cctype>

namespace wordclust {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_padded_punct(char c) {
    return kPaddedPunctuation.find(c) != std::string_view::npos;
}

/// Length of the URL match starting at text[pos], or 0 if none.
/// A match begins with one of the fixed prefixes and runs to the next whitespace.
std::size_t url_match_length(std::string_view text, std::size_t pos) {
    static constexpr std::string_view prefixes[] = {"http://", "https://", "www."};
    std::string_view rest = text.substr(pos);
    for (std::string_view prefix : prefixes) {
        if (rest.starts_with(prefix)) {
            std::size_t end = pos;
            while (end < text.size() && !is_space(text[end])) ++end;
            return end - pos;
        }
    }
    return 0;
}

} // namespace

std::string preprocess(std::string_view raw, const PreprocessRules& rules) {
    std::string text;
    text.reserve(raw.size());
    if (rules.lowercase) {
        for (char c : raw) {
            text.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
        }
    } else {
        text.assign(raw);
    }

    // URL replacement first: the scheme characters would otherwise be padded.
    std::string replaced;
    replaced.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        const std::size_t len = url_match_length(text, i);
        if (len > 0) {
            replaced += rules.url_placeholder;
            i += len;
        } else {
            replaced.push_back(text[i]);
            ++i;
        }
    }

    std::string padded;
    padded.reserve(replaced.size() * 2);
    if (rules.pad_punctuation) {
        for (char c : replaced) {
            if (is_padded_punct(c)) {
                padded.push_back(' ');
                padded.push_back(c);
                padded.push_back(' ');
            } else {
                padded.push_back(c);
            }
        }
    } else {
        padded = std::move(replaced);
    }

    std::string out;
    out.reserve(padded.size());
    bool pending_space = false;
    for (char c : padded) {
        if (is_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<Token> tokenize(std::string_view prepared) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < prepared.size()) {
        while (i < prepared.size() && is_space(prepared[i])) ++i;
        std::size_t start = i;
        while (i < prepared.size() && !is_space(prepared[i])) ++i;
        if (i > start) {
            tokens.push_back(Token{std::string(prepared.substr(start, i - start)),
                                   tokens.size()});
        }
    }
    return tokens;
}

std::vector<Token> to_tokens(std::span<const std::string> surfaces) {
    std::vector<Token> tokens;
    tokens.reserve(surfaces.size());
    for (const auto& s : surfaces) tokens.push_back(Token{s, tokens.size()});
    return tokens;
}

} // namespace wordclust
