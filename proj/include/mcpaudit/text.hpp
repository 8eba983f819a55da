// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mcpaudit {

// Feature-text normalization shared by the declaration and semantics sides.
// Both sides must tokenize identically or vector similarities are meaningless.
//
// Pipeline: split camelCase boundaries, split on non-alphanumerics, lowercase,
// drop stopwords (checked on both the raw token and its stem), apply the fixed
// suffix-stripping table, drop single-character and all-digit tokens.
// Idempotent on its own joined output.
std::vector<std::string> normalize_feature(std::string_view text);

/// One token through the suffix-stripping table. Expects a lowercase token.
std::string stem_token(std::string token);

bool is_stopword(std::string_view token);

/// Splits an identifier or prose fragment into raw word units (camelCase
/// boundaries and non-alphanumeric separators), preserving original case.
std::vector<std::string> split_words(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

std::string to_lower(std::string_view text);

/// FNV-1a 64-bit, used for config fingerprints.
std::uint64_t fnv1a64(std::string_view data);

} // namespace mcpaudit
