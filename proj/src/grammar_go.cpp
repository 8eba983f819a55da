// SPDX-License-Identifier: Apache-2.0
#include "grammar_detail.hpp"
#include "mcpaudit/grammars.hpp"

namespace mcpaudit {

namespace {

using namespace detail;

const std::unordered_set<std::string>& go_call_keywords() {
    static const std::unordered_set<std::string> kw = {
        "if",   "for",    "switch", "select", "go",     "defer", "return",
        "range", "func",  "chan",   "case",   "interface", "struct", "map",
        "type", "var",    "const",  "import", "package", "else", "break",
        "continue", "goto", "fallthrough",
    };
    return kw;
}

// Walk back from `pos` over whitespace and read the identifier that ends there.
std::string ident_before(std::string_view text, std::size_t pos) {
    while (pos > 0) {
        char c = text[pos - 1];
        if (c == ' ' || c == '\t') {
            --pos;
            continue;
        }
        break;
    }
    if (pos == 0 || !is_ident_char(text[pos - 1])) return "";
    std::size_t end = pos;
    std::size_t start = end - 1;
    while (start > 0 && is_ident_char(text[start - 1])) --start;
    return std::string(text.substr(start, end - start));
}

class GoGrammar : public GrammarAdapter {
public:
    ParseResult parse(const SourceFile& file) const override {
        ParseResult result;
        const std::string& code = file.content;
        Mask mask = build_mask(code, syntax_for(Language::Go));
        const std::string& text = mask.text;
        LineIndex lines(code);

        std::vector<RawFunction> raw;
        std::set<std::size_t> def_names;

        std::size_t pos = 0;
        while (pos < text.size()) {
            if (!token_at(text, pos, "func")) {
                ++pos;
                continue;
            }
            std::size_t func_pos = pos;
            std::size_t q = skip_ws(text, pos + 4);
            if (q == std::string_view::npos) break;

            // Method receiver.
            if (text[q] == '(') {
                std::size_t rc = match_bracket(text, q);
                if (rc == std::string_view::npos) {
                    result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                                 ": unbalanced receiver");
                    return {{}, std::move(result.diagnostics)};
                }
                q = skip_ws(text, rc + 1);
                if (q == std::string_view::npos) break;
            }

            std::string name = read_identifier(text, q);
            if (name.empty()) {
                // Anonymous function literal; no node, keep scanning inside.
                pos = q;
                continue;
            }
            std::size_t name_offset = q;
            std::size_t t = skip_ws(text, q + name.size());
            if (t != std::string_view::npos && text[t] == '[') { // generics
                std::size_t close = match_bracket(text, t);
                t = close == std::string_view::npos ? std::string_view::npos
                                                    : skip_ws(text, close + 1);
            }
            if (t == std::string_view::npos || text[t] != '(') {
                pos = q + name.size();
                continue;
            }
            std::size_t params_close = match_bracket(text, t);
            if (params_close == std::string_view::npos) {
                result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                             ": unbalanced parameters in '" + name + "'");
                return {{}, std::move(result.diagnostics)};
            }

            // Find the body brace, stepping over `interface{ }` / `struct{ }`
            // braces in the result types. A newline at depth 0 before any '{'
            // means a bodyless declaration.
            std::size_t body_open = std::string_view::npos;
            int depth = 0;
            std::size_t i = params_close + 1;
            while (i < text.size()) {
                char c = text[i];
                if (c == '(' || c == '[') ++depth;
                if (c == ')' || c == ']') --depth;
                if (c == '\n' && depth == 0) break;
                if (c == '{' && depth == 0) {
                    std::string prev = ident_before(text, i);
                    if (prev == "interface" || prev == "struct") {
                        std::size_t close = match_bracket(text, i);
                        if (close == std::string_view::npos) break;
                        i = close + 1;
                        continue;
                    }
                    body_open = i;
                    break;
                }
                ++i;
            }
            if (body_open == std::string_view::npos) {
                pos = params_close + 1; // declaration without body
                continue;
            }
            std::size_t body_close = match_bracket(text, body_open);
            if (body_close == std::string_view::npos) {
                result.diagnostics.push_back("parse_failure: " + file.relative_path +
                                             ": unbalanced braces in '" + name + "'");
                return {{}, std::move(result.diagnostics)};
            }

            RawFunction fn;
            fn.name = name;
            fn.name_offset = name_offset;
            fn.start_line = lines.line_of(func_pos);
            fn.end_line = lines.line_of(body_close);
            std::size_t sig_end = body_open;
            while (sig_end > func_pos && (code[sig_end - 1] == ' ' || code[sig_end - 1] == '\t'))
                --sig_end;
            fn.signature = code.substr(func_pos, sig_end - func_pos);
            def_names.insert(name_offset);
            raw.push_back(std::move(fn));
            pos = body_open + 1; // nested literals contribute call sites only
        }

        auto sites = scan_call_sites(mask, lines, go_call_keywords(), {"func"}, def_names);
        result.nodes = assemble_nodes(file, lines, std::move(raw), sites);
        return result;
    }
};

} // namespace

const GrammarAdapter* go_grammar() {
    static const GoGrammar grammar;
    return &grammar;
}

} // namespace mcpaudit
