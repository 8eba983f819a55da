// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared scanning machinery for the lightweight per-language extractors.
// Each extractor works on a "mask" of the source where comments and string
// literals are blanked out (newlines preserved), so structural characters
// inside strings never confuse definition or call-site detection. Bodies and
// signatures are always sliced from the original text.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mcpaudit/code_graph.hpp"

namespace mcpaudit::detail {

struct StringDelim {
    std::string open;
    std::string close;
    bool backslash_escapes = true;
};

struct LanguageSyntax {
    std::vector<std::string> line_comments;
    std::vector<std::pair<std::string, std::string>> block_comments;
    std::vector<StringDelim> strings; // longest delimiters first
};

struct Mask {
    std::string text;            // same length as the source
    std::vector<bool> in_string; // per char, true inside a string literal
};

Mask build_mask(std::string_view code, const LanguageSyntax& syntax);

/// Comment/string syntax for a supported language family.
const LanguageSyntax& syntax_for(Language language);

class LineIndex {
public:
    explicit LineIndex(std::string_view text);

    int line_of(std::size_t offset) const;         // 1-based
    std::size_t start_of(int line) const;          // offset of line start
    std::size_t end_of(int line) const;            // offset one past last char (excl. '\n')
    int line_count() const { return static_cast<int>(starts_.size()); }

private:
    std::vector<std::size_t> starts_;
    std::size_t text_size_;
};

struct RawFunction {
    std::string name;
    std::size_t name_offset = 0; // offset of the name token in the source
    int start_line = 0;
    int end_line = 0;
    std::string signature;
};

struct RawCallSite {
    std::string name;
    std::size_t offset = 0;
    int line = 0;
};

/// Scans the mask for `ident (` call expressions. `keywords` are identifiers
/// that can precede '(' without being calls; `def_keywords` are tokens whose
/// following identifier is a definition, not a call. Identifiers whose offset
/// is in `definition_names` are skipped (method definitions look like calls).
std::vector<RawCallSite> scan_call_sites(const Mask& mask, const LineIndex& lines,
                                         const std::unordered_set<std::string>& keywords,
                                         const std::unordered_set<std::string>& def_keywords,
                                         const std::set<std::size_t>& definition_names);

bool is_ident_start(char c);
bool is_ident_char(char c);

/// Reads the identifier starting at `pos`, or empty if none.
std::string read_identifier(std::string_view text, std::size_t pos);

/// First non-whitespace offset at or after `pos`, or npos.
std::size_t skip_ws(std::string_view text, std::size_t pos);

/// Matches the bracket opening at `pos` (one of ([{) on the mask; returns the
/// offset of the closing bracket or npos when unbalanced.
std::size_t match_bracket(std::string_view mask, std::size_t pos);

/// True when text[pos..] begins token `word` at an identifier boundary.
bool token_at(std::string_view text, std::size_t pos, std::string_view word);

/// Assembles FunctionNodes from raw definitions plus call sites, attributing
/// each call site to the innermost enclosing definition by line, slicing
/// signatures/bodies from the original text, and de-duplicating fids.
std::vector<FunctionNode> assemble_nodes(const SourceFile& file, const LineIndex& lines,
                                         std::vector<RawFunction> raw,
                                         const std::vector<RawCallSite>& sites);

} // namespace mcpaudit::detail
