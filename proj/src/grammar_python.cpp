// SPDX-License-Identifier: Apache-2.0
#include <optional>

#include "grammar_detail.hpp"
#include "mcpaudit/grammars.hpp"
#include "mcpaudit/errors.hpp"

namespace mcpaudit {

namespace {

using namespace detail;

const std::unordered_set<std::string>& python_keywords() {
    static const std::unordered_set<std::string> kw = {
        "if",     "elif",   "else",  "while",  "for",    "return", "yield",
        "await",  "raise",  "assert", "with",  "not",    "and",    "or",
        "in",     "is",     "lambda", "del",   "global", "nonlocal",
        "import", "from",   "as",     "try",   "except", "finally",
        "pass",   "break",  "continue", "class", "def",
    };
    return kw;
}

struct BlockInfo {
    std::vector<int> bracket_depth; // at each line start
};

BlockInfo line_depths(const Mask& mask, const LineIndex& lines) {
    BlockInfo info;
    info.bracket_depth.assign(static_cast<std::size_t>(lines.line_count()) + 2, 0);
    int depth = 0;
    int line = 1;
    info.bracket_depth[1] = 0;
    for (std::size_t i = 0; i < mask.text.size(); ++i) {
        char c = mask.text[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == '\n' && line < lines.line_count()) {
            ++line;
            info.bracket_depth[static_cast<std::size_t>(line)] = depth;
        }
    }
    return info;
}

int indent_of(std::string_view line_text) {
    int col = 0;
    for (char c : line_text) {
        if (c == ' ')
            ++col;
        else if (c == '\t')
            col += 8;
        else
            break;
    }
    return col;
}

bool blank_line(std::string_view line_text) {
    return line_text.find_first_not_of(" \t\r") == std::string_view::npos;
}

class PythonGrammar : public GrammarAdapter {
public:
    ParseResult parse(const SourceFile& file) const override;
};

ParseResult PythonGrammar::parse(const SourceFile& file) const {
    ParseResult result;
    const std::string& code = file.content;
    Mask mask = build_mask(code, syntax_for(Language::Python));
    LineIndex lines(code);
    BlockInfo blocks = line_depths(mask, lines);

    auto line_view = [&](int line) {
        std::size_t b = lines.start_of(line);
        return std::string_view(code).substr(b, lines.end_of(line) - b);
    };
    auto mask_line_view = [&](int line) {
        std::size_t b = lines.start_of(line);
        return std::string_view(mask.text).substr(b, lines.end_of(line) - b);
    };

    std::vector<RawFunction> raw;
    std::set<std::size_t> def_names;

    std::size_t pos = 0;
    while (pos < mask.text.size()) {
        if (!token_at(mask.text, pos, "def")) {
            ++pos;
            continue;
        }
        std::size_t def_pos = pos;
        std::size_t name_pos = skip_ws(mask.text, pos + 3);
        std::string name =
            name_pos == std::string_view::npos ? "" : read_identifier(mask.text, name_pos);
        if (name.empty()) {
            ++pos;
            continue;
        }
        // Multi-line headers: find the parameter list and the header colon.
        // Only whitespace or a generic parameter block may sit between the
        // name and '('.
        std::size_t paren = skip_ws(mask.text, name_pos + name.size());
        if (paren != std::string_view::npos && mask.text[paren] == '[') {
            std::size_t close = match_bracket(mask.text, paren);
            paren = close == std::string_view::npos ? std::string_view::npos
                                                    : skip_ws(mask.text, close + 1);
        }
        if (paren == std::string_view::npos || mask.text[paren] != '(') {
            result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                         ": unterminated def header for '" + name + "'");
            return {{}, std::move(result.diagnostics)};
        }
        std::size_t paren_close = match_bracket(mask.text, paren);
        if (paren_close == std::string_view::npos) {
            result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                         ": unbalanced parameter list for '" + name + "'");
            return {{}, std::move(result.diagnostics)};
        }
        // Colon at bracket depth 0 after the parameter list (skips return
        // annotations such as -> dict[str, int]).
        std::size_t colon = std::string_view::npos;
        int depth = 0;
        for (std::size_t i = paren_close + 1; i < mask.text.size(); ++i) {
            char c = mask.text[i];
            if (c == '(' || c == '[' || c == '{') ++depth;
            if (c == ')' || c == ']' || c == '}') --depth;
            if (c == ':' && depth == 0) {
                colon = i;
                break;
            }
        }
        if (colon == std::string_view::npos) {
            result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                         ": missing ':' in def header for '" + name + "'");
            return {{}, std::move(result.diagnostics)};
        }

        RawFunction fn;
        fn.name = name;
        fn.name_offset = name_pos;
        // `async def` spans from the async keyword.
        std::size_t sig_start = def_pos;
        {
            std::size_t back = def_pos;
            while (back > 0 && (mask.text[back - 1] == ' ' || mask.text[back - 1] == '\t')) --back;
            if (back >= 5 && token_at(mask.text, back - 5, "async")) sig_start = back - 5;
        }
        fn.start_line = lines.line_of(sig_start);
        fn.signature = code.substr(sig_start, colon - sig_start + 1);

        int header_end_line = lines.line_of(colon);
        int def_indent = indent_of(line_view(fn.start_line));
        // One-liner: statements follow the colon on the header line.
        std::string_view after_colon =
            mask_line_view(header_end_line).substr(colon - lines.start_of(header_end_line) + 1);
        if (!blank_line(after_colon)) {
            fn.end_line = header_end_line;
        } else {
            int last_body = header_end_line;
            for (int l = header_end_line + 1; l <= lines.line_count(); ++l) {
                bool continuation = mask.in_string[lines.start_of(l)] ||
                                    blocks.bracket_depth[static_cast<std::size_t>(l)] > 0;
                if (!continuation && !blank_line(line_view(l)) &&
                    indent_of(line_view(l)) <= def_indent) {
                    break;
                }
                if (!blank_line(line_view(l))) last_body = l;
            }
            fn.end_line = last_body;
        }
        def_names.insert(name_pos);
        raw.push_back(std::move(fn));
        pos = colon + 1;
    }

    auto sites = scan_call_sites(mask, lines, python_keywords(), {"def", "class"}, def_names);
    result.nodes = assemble_nodes(file, lines, std::move(raw), sites);
    return result;
}

} // namespace

const GrammarAdapter* python_grammar() {
    static const PythonGrammar grammar;
    return &grammar;
}

} // namespace mcpaudit
