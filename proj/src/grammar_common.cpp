// SPDX-License-Identifier: Apache-2.0
#include "grammar_detail.hpp"

#include <algorithm>

namespace mcpaudit::detail {

const LanguageSyntax& syntax_for(Language language) {
    static const LanguageSyntax python = {
        {"#"},
        {},
        {{"\"\"\"", "\"\"\"", true},
         {"'''", "'''", true},
         {"\"", "\"", true},
         {"'", "'", true}},
    };
    static const LanguageSyntax javascript = {
        {"//"},
        {{"/*", "*/"}},
        {{"\"", "\"", true}, {"'", "'", true}, {"`", "`", true}},
    };
    static const LanguageSyntax go = {
        {"//"},
        {{"/*", "*/"}},
        {{"\"", "\"", true}, {"'", "'", true}, {"`", "`", false}},
    };
    switch (language) {
        case Language::Python: return python;
        case Language::Go: return go;
        default: return javascript;
    }
}

Mask build_mask(std::string_view code, const LanguageSyntax& syntax) {
    Mask result;
    result.text.assign(code.begin(), code.end());
    result.in_string.assign(code.size(), false);

    auto blank = [&](std::size_t pos) {
        if (result.text[pos] != '\n') result.text[pos] = ' ';
    };
    auto starts_with = [&](std::size_t pos, std::string_view token) {
        return code.compare(pos, token.size(), token) == 0;
    };

    std::size_t i = 0;
    while (i < code.size()) {
        bool consumed = false;
        for (const auto& lc : syntax.line_comments) {
            if (starts_with(i, lc)) {
                while (i < code.size() && code[i] != '\n') blank(i++);
                consumed = true;
                break;
            }
        }
        if (consumed) continue;
        for (const auto& [open, close] : syntax.block_comments) {
            if (starts_with(i, open)) {
                std::size_t end = code.find(close, i + open.size());
                std::size_t stop = end == std::string_view::npos ? code.size() : end + close.size();
                while (i < stop) blank(i++);
                consumed = true;
                break;
            }
        }
        if (consumed) continue;
        for (const auto& delim : syntax.strings) {
            if (starts_with(i, delim.open)) {
                std::size_t j = i;
                for (std::size_t k = 0; k < delim.open.size(); ++k) {
                    result.in_string[j] = true;
                    blank(j++);
                }
                while (j < code.size()) {
                    if (delim.backslash_escapes && code[j] == '\\' && j + 1 < code.size()) {
                        result.in_string[j] = true;
                        blank(j++);
                        result.in_string[j] = true;
                        blank(j++);
                        continue;
                    }
                    if (starts_with(j, delim.close)) {
                        for (std::size_t k = 0; k < delim.close.size(); ++k) {
                            result.in_string[j] = true;
                            blank(j++);
                        }
                        break;
                    }
                    result.in_string[j] = true;
                    blank(j++);
                }
                i = j;
                consumed = true;
                break;
            }
        }
        if (consumed) continue;
        ++i;
    }
    return result;
}

LineIndex::LineIndex(std::string_view text) : text_size_(text.size()) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n' && i + 1 < text.size()) starts_.push_back(i + 1);
    }
    if (!text.empty() && text.back() == '\n') --text_size_; // final line excludes '\n'
}

int LineIndex::line_of(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    return static_cast<int>(it - starts_.begin());
}

std::size_t LineIndex::start_of(int line) const {
    return starts_[static_cast<std::size_t>(line - 1)];
}

std::size_t LineIndex::end_of(int line) const {
    if (line >= line_count()) return text_size_;
    std::size_t next = starts_[static_cast<std::size_t>(line)];
    return next > 0 ? next - 1 : 0; // exclude the '\n'
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

std::string read_identifier(std::string_view text, std::size_t pos) {
    if (pos >= text.size() || !is_ident_start(text[pos])) return "";
    std::size_t end = pos;
    while (end < text.size() && is_ident_char(text[end])) ++end;
    return std::string(text.substr(pos, end - pos));
}

std::size_t skip_ws(std::string_view text, std::size_t pos) {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
        ++pos;
    return pos < text.size() ? pos : std::string_view::npos;
}

std::size_t match_bracket(std::string_view mask, std::size_t pos) {
    char open = mask[pos];
    char close = open == '(' ? ')' : open == '[' ? ']' : '}';
    int depth = 0;
    for (std::size_t i = pos; i < mask.size(); ++i) {
        char c = mask[i];
        if (c == open) {
            ++depth;
        } else if (c == close) {
            if (--depth == 0) return i;
        }
    }
    return std::string_view::npos;
}

bool token_at(std::string_view text, std::size_t pos, std::string_view word) {
    if (text.compare(pos, word.size(), word) != 0) return false;
    if (pos > 0 && is_ident_char(text[pos - 1])) return false;
    std::size_t after = pos + word.size();
    return after >= text.size() || !is_ident_char(text[after]);
}

std::vector<RawCallSite> scan_call_sites(const Mask& mask, const LineIndex& lines,
                                         const std::unordered_set<std::string>& keywords,
                                         const std::unordered_set<std::string>& def_keywords,
                                         const std::set<std::size_t>& definition_names) {
    std::vector<RawCallSite> sites;
    const std::string& text = mask.text;
    std::size_t i = 0;
    std::string prev_token; // last identifier seen before the current one
    while (i < text.size()) {
        if (!is_ident_start(text[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && is_ident_char(text[i])) ++i;
        std::string ident = text.substr(start, i - start);
        std::size_t after = skip_ws(text, i);
        bool is_call = after != std::string_view::npos && text[after] == '(' &&
                       !keywords.count(ident) && !def_keywords.count(prev_token) &&
                       !definition_names.count(start);
        if (is_call) {
            sites.push_back({ident, start, lines.line_of(start)});
        }
        prev_token = std::move(ident);
    }
    return sites;
}

std::vector<FunctionNode> assemble_nodes(const SourceFile& file, const LineIndex& lines,
                                         std::vector<RawFunction> raw,
                                         const std::vector<RawCallSite>& sites) {
    std::sort(raw.begin(), raw.end(), [](const RawFunction& a, const RawFunction& b) {
        return a.start_line != b.start_line ? a.start_line < b.start_line
                                            : a.end_line > b.end_line;
    });

    std::vector<FunctionNode> nodes;
    nodes.reserve(raw.size());
    std::unordered_set<std::string> used_fids;
    for (auto& fn : raw) {
        FunctionNode node;
        node.name = fn.name;
        node.language = file.language;
        node.file = file.relative_path;
        node.start_line = fn.start_line;
        node.end_line = fn.end_line;
        node.signature = fn.signature;
        std::size_t begin = lines.start_of(fn.start_line);
        std::size_t end = lines.end_of(fn.end_line);
        node.body = std::string(std::string_view(file.content).substr(begin, end - begin));
        node.fid = file.relative_path + ":" + node.name + ":" + std::to_string(node.start_line);
        while (!used_fids.insert(node.fid).second) node.fid += "+";
        nodes.push_back(std::move(node));
    }

    // Attribute each call site to the innermost definition containing its line.
    for (const auto& site : sites) {
        FunctionNode* best = nullptr;
        for (auto& node : nodes) {
            if (site.line < node.start_line || site.line > node.end_line) continue;
            if (!best || node.start_line > best->start_line ||
                (node.start_line == best->start_line && node.end_line < best->end_line)) {
                best = &node;
            }
        }
        if (best) best->call_sites.push_back({site.name, site.line});
    }
    return nodes;
}

} // namespace mcpaudit::detail
