// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_set>

namespace mcpaudit {

namespace {

const std::unordered_set<std::string_view>& stopwords() {
    // English function words plus source keywords that carry no capability
    // signal on either the prose or the code side. Frozen: golden tests and
    // the canonical report format depend on this exact set.
    static const std::unordered_set<std::string_view> words = {
        "a", "an", "the", "and", "or", "not", "no", "nor",
        "of", "to", "in", "on", "at", "by", "for", "from", "with", "without",
        "as", "is", "are", "was", "were", "be", "been", "being", "am",
        "it", "its", "this", "that", "these", "those", "there", "here",
        "which", "who", "whom", "whose", "what", "when", "where", "why", "how",
        "all", "any", "both", "each", "every", "some", "such", "other",
        "than", "then", "thus", "so", "if", "else", "but", "about", "into",
        "over", "under", "via", "per", "up", "down", "out", "off", "again",
        "can", "could", "will", "would", "shall", "should", "may", "might",
        "must", "do", "does", "did", "done", "doing",
        "have", "has", "had", "having",
        "i", "you", "he", "she", "we", "they", "them", "his", "her", "him",
        "our", "your", "their", "me", "my", "us", "itself", "also", "only",
        "etc", "eg", "ie",
        "use", "uses", "used", "using",
        // source keywords
        "def", "func", "fn", "function", "functions", "return", "returns",
        "class", "import", "export", "const", "var", "let", "async", "await",
        "pass", "nil", "null", "none", "true", "false", "void", "self", "cls",
        "args", "kwargs", "str", "int", "bool", "float", "string", "error",
        "try", "catch", "except", "finally", "raise", "throw", "new",
    };
    return words;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

std::string stem_token(std::string token) {
    // Fixed four-step table. Each step applies at most once, in order.
    // Step 1: plural endings.
    if (ends_with(token, "sses")) {
        token.erase(token.size() - 2);
    } else if (ends_with(token, "ies") && token.size() >= 4) {
        token.erase(token.size() - 2); // "ies" -> "i"
    } else if (ends_with(token, "s") && token.size() >= 3 &&
               !ends_with(token, "ss") && !ends_with(token, "us")) {
        token.pop_back();
    }
    // Step 2: one derivational suffix.
    if (ends_with(token, "ation") && token.size() - 5 >= 3) {
        token.erase(token.size() - 5);
    } else if (ends_with(token, "ing") && token.size() - 3 >= 4) {
        token.erase(token.size() - 3);
    } else if (ends_with(token, "ed") && token.size() - 2 >= 3) {
        token.erase(token.size() - 2);
    }
    // Step 3: trailing y after a consonant.
    if (token.size() >= 4 && token.back() == 'y' &&
        !is_vowel(token[token.size() - 2])) {
        token.back() = 'i';
    }
    // Step 4: trailing e.
    if (token.size() >= 4 && token.back() == 'e') {
        token.pop_back();
    }
    return token;
}

bool is_stopword(std::string_view token) {
    return stopwords().count(token) > 0;
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            words.push_back(current);
            current.clear();
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!std::isalnum(c)) {
            flush();
            continue;
        }
        if (!current.empty() && std::isupper(c)) {
            unsigned char prev = static_cast<unsigned char>(current.back());
            bool next_lower = i + 1 < text.size() &&
                              std::islower(static_cast<unsigned char>(text[i + 1]));
            // camelCase boundary: lower->Upper, or end of an UPPER run
            // followed by a lowercase letter (HTTPServer -> HTTP | Server).
            if (std::islower(prev) || std::isdigit(prev) ||
                (std::isupper(prev) && next_lower)) {
                flush();
            }
        }
        current.push_back(static_cast<char>(c));
    }
    flush();
    return words;
}

std::vector<std::string> normalize_feature(std::string_view text) {
    std::vector<std::string> tokens;
    for (auto& word : split_words(text)) {
        std::string lower = to_lower(word);
        if (is_stopword(lower)) continue;
        std::string stem = stem_token(std::move(lower));
        if (stem.size() <= 1 || all_digits(stem)) continue;
        if (is_stopword(stem)) continue;
        tokens.push_back(std::move(stem));
    }
    return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace mcpaudit
