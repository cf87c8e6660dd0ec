#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordclust {

struct Token {
    std::string surface;
    std::size_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

struct PreprocessRules {
    std::string url_placeholder = "<url>";
    bool pad_punctuation = true;
    bool lowercase = false;
};

/// Characters surrounded by single spaces when pad_punctuation is on.
inline constexpr std::string_view kPaddedPunctuation = ".,!?;:()[]\"'#@";

/// Normalizes raw text: optional ASCII lowercasing, URL replacement
/// (http://, https:// or www. up to the next whitespace), punctuation
/// padding, whitespace collapsing, trimming. Total and idempotent.
std::string preprocess(std::string_view raw, const PreprocessRules& rules = {});

/// Splits preprocessed text on whitespace; positions are 0-based consecutive.
std::vector<Token> tokenize(std::string_view prepared);

std::vector<Token> to_tokens(std::span<const std::string> surfaces);

} // namespace wordclust
