// SPDX-License-Identifier: Apache-2.0
#include "grammar_detail.hpp"
#include "mcpaudit/grammars.hpp"

namespace mcpaudit {

namespace {

using namespace detail;

const std::unordered_set<std::string>& js_call_keywords() {
    static const std::unordered_set<std::string> kw = {
        "if",    "else",  "while",   "for",    "switch", "catch",  "return",
        "typeof", "instanceof", "do", "try",   "finally", "throw", "await",
        "yield", "delete", "void",   "in",     "of",     "function", "with",
        "case",  "new",   "import",
    };
    return kw;
}

// Identifiers that may not name a method in pass 3.
const std::unordered_set<std::string>& js_stmt_keywords() {
    static const std::unordered_set<std::string> kw = {
        "if",   "else",   "while", "for",  "switch", "catch", "return",
        "do",   "try",    "finally", "throw", "function", "with", "case",
        "new",  "typeof", "await", "yield", "delete", "void", "in", "of",
        "super", "default", "export", "import", "interface", "type", "enum",
    };
    return kw;
}

bool method_modifier(const std::string& word) {
    static const std::unordered_set<std::string> mods = {
        "public", "private", "protected", "static", "async", "override", "readonly",
    };
    return mods.count(word) > 0;
}

std::size_t match_bracket_back(std::string_view mask, std::size_t close_pos) {
    char close = mask[close_pos];
    char open = close == ')' ? '(' : close == ']' ? '[' : '{';
    int depth = 0;
    for (std::size_t i = close_pos + 1; i-- > 0;) {
        char c = mask[i];
        if (c == close) ++depth;
        if (c == open && --depth == 0) return i;
        if (i == 0) break;
    }
    return std::string_view::npos;
}

// Last non-whitespace offset before pos, or npos.
std::size_t prev_sig(std::string_view text, std::size_t pos) {
    while (pos-- > 0) {
        char c = text[pos];
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') return pos;
        if (pos == 0) break;
    }
    return std::string_view::npos;
}

// Identifier ending at `end` (inclusive); returns its start or npos.
std::size_t ident_start_back(std::string_view text, std::size_t end) {
    if (!is_ident_char(text[end])) return std::string_view::npos;
    std::size_t start = end;
    while (start > 0 && is_ident_char(text[start - 1])) --start;
    return is_ident_start(text[start]) ? start : std::string_view::npos;
}

// End of an expression-body arrow: first ';' or '\n' at bracket depth 0.
std::size_t expression_end(std::string_view mask, std::size_t pos) {
    int depth = 0;
    for (std::size_t i = pos; i < mask.size(); ++i) {
        char c = mask[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') {
            if (depth == 0) return i; // closing bracket of an enclosing context
            --depth;
        }
        if ((c == ';' || c == '\n' || c == ',') && depth == 0) return i;
    }
    return mask.size();
}

struct Extraction {
    std::vector<RawFunction> raw;
    std::set<std::size_t> def_names;
    std::string failure; // non-empty: whole-file parse failure
};

void fail(Extraction& out, const std::string& message) {
    if (out.failure.empty()) out.failure = message;
}

// Pass 1: `function` keyword forms, named directly or via assignment.
void extract_function_keyword(const SourceFile& file, const Mask& mask, const LineIndex& lines,
                              Extraction& out) {
    const std::string& text = mask.text;
    std::size_t pos = 0;
    while (pos < text.size() && out.failure.empty()) {
        if (!token_at(text, pos, "function")) {
            ++pos;
            continue;
        }
        std::size_t kw_pos = pos;
        std::size_t q = skip_ws(text, pos + 8);
        if (q == std::string_view::npos) break;
        if (text[q] == '*') q = skip_ws(text, q + 1);
        if (q == std::string_view::npos) break;

        std::string name = read_identifier(text, q);
        std::size_t name_offset = q;
        std::size_t sig_start = kw_pos;

        // `async function`
        std::size_t before = prev_sig(text, kw_pos);
        if (before != std::string_view::npos) {
            std::size_t astart = ident_start_back(text, before);
            if (astart != std::string_view::npos &&
                text.substr(astart, before - astart + 1) == "async")
                sig_start = astart;
        }

        if (name.empty()) {
            // Anonymous expression: look back for `name = [async] function`.
            std::size_t back = prev_sig(text, sig_start);
            if (back != std::string_view::npos && text[back] == '=' &&
                (back == 0 || (text[back - 1] != '=' && text[back - 1] != '!' &&
                               text[back - 1] != '<' && text[back - 1] != '>'))) {
                std::size_t nend = prev_sig(text, back);
                if (nend != std::string_view::npos) {
                    std::size_t nstart = ident_start_back(text, nend);
                    if (nstart != std::string_view::npos) {
                        name = text.substr(nstart, nend - nstart + 1);
                        name_offset = nstart;
                        sig_start = nstart;
                    }
                }
            }
        }

        std::size_t paren = text.find('(', q + (name.empty() ? 0 : name.size()));
        if (paren == std::string_view::npos) break;
        std::size_t paren_close = match_bracket(text, paren);
        if (paren_close == std::string_view::npos) {
            fail(out, "unbalanced parameter list in function '" + name + "'");
            return;
        }
        std::size_t body_open = text.find('{', paren_close + 1);
        if (body_open == std::string_view::npos) {
            fail(out, "missing body for function '" + name + "'");
            return;
        }
        std::size_t body_close = match_bracket(text, body_open);
        if (body_close == std::string_view::npos) {
            fail(out, "unbalanced braces in function '" + name + "'");
            return;
        }

        if (!name.empty() && !js_stmt_keywords().count(name)) {
            RawFunction fn;
            fn.name = name;
            fn.name_offset = name_offset;
            fn.start_line = lines.line_of(sig_start);
            fn.end_line = lines.line_of(body_close);
            fn.signature = file.content.substr(sig_start, paren_close - sig_start + 1);
            out.def_names.insert(name_offset);
            out.raw.push_back(std::move(fn));
        }
        pos = body_open + 1; // keep scanning for nested definitions
    }
}

// Pass 2: arrow functions bound to a name (`x = ... =>`, `x: ... => {`).
void extract_arrows(const SourceFile& file, const Mask& mask, const LineIndex& lines,
                    Extraction& out) {
    const std::string& text = mask.text;
    std::size_t pos = 0;
    while (out.failure.empty()) {
        pos = text.find("=>", pos);
        if (pos == std::string_view::npos) break;
        std::size_t arrow = pos;
        pos += 2;

        std::size_t before = prev_sig(text, arrow);
        if (before == std::string_view::npos) continue;

        // Skip one optional `: SimpleType` return annotation.
        std::size_t params_end = before;
        if (is_ident_char(text[params_end])) {
            std::size_t tstart = ident_start_back(text, params_end);
            if (tstart != std::string_view::npos) {
                std::size_t colon = prev_sig(text, tstart);
                if (colon != std::string_view::npos && text[colon] == ':') {
                    std::size_t maybe_paren = prev_sig(text, colon);
                    if (maybe_paren != std::string_view::npos && text[maybe_paren] == ')')
                        params_end = maybe_paren;
                }
            }
        }

        std::size_t params_start;
        if (text[params_end] == ')') {
            params_start = match_bracket_back(text, params_end);
            if (params_start == std::string_view::npos) continue;
        } else if (is_ident_char(text[params_end])) {
            params_start = ident_start_back(text, params_end);
            if (params_start == std::string_view::npos) continue;
        } else {
            continue;
        }

        // Optional `async` before the parameter list.
        std::size_t head = params_start;
        std::size_t b = prev_sig(text, head);
        if (b != std::string_view::npos && is_ident_char(text[b])) {
            std::size_t astart = ident_start_back(text, b);
            if (astart != std::string_view::npos &&
                text.substr(astart, b - astart + 1) == "async") {
                head = astart;
                b = prev_sig(text, head);
            } else if (text[params_end] != ')') {
                // `ident ident =>` is not a binding we recognize.
                continue;
            } else {
                continue; // e.g. `return (x) =>`, `&& (x) =>`
            }
        }
        if (b == std::string_view::npos) continue;

        bool is_assign = text[b] == '=' && (b == 0 || (text[b - 1] != '=' && text[b - 1] != '!' &&
                                                       text[b - 1] != '<' && text[b - 1] != '>'));
        bool is_property = text[b] == ':';
        if (!is_assign && !is_property) continue;

        std::size_t body_start = skip_ws(text, arrow + 2);
        if (body_start == std::string_view::npos) continue;
        bool block_body = text[body_start] == '{';
        if (is_property && !block_body) continue; // likely a TS type annotation

        std::size_t nend = prev_sig(text, b);
        if (nend == std::string_view::npos || !is_ident_char(text[nend])) continue;
        std::size_t nstart = ident_start_back(text, nend);
        if (nstart == std::string_view::npos) continue;
        std::string name = text.substr(nstart, nend - nstart + 1);
        if (js_stmt_keywords().count(name)) continue;

        std::size_t body_end;
        if (block_body) {
            body_end = match_bracket(text, body_start);
            if (body_end == std::string_view::npos) {
                fail(out, "unbalanced braces in arrow function '" + name + "'");
                return;
            }
        } else {
            body_end = expression_end(text, body_start);
            if (body_end > 0) --body_end;
        }

        RawFunction fn;
        fn.name = name;
        fn.name_offset = nstart;
        fn.start_line = lines.line_of(nstart);
        fn.end_line = lines.line_of(body_end);
        fn.signature = file.content.substr(nstart, arrow + 2 - nstart);
        out.def_names.insert(nstart);
        out.raw.push_back(std::move(fn));
    }
}

// Pass 3: class and object-literal method definitions (`name(args) {`).
void extract_methods(const SourceFile& file, const Mask& mask, const LineIndex& lines,
                     Extraction& out) {
    const std::string& text = mask.text;
    for (int line = 1; line <= lines.line_count() && out.failure.empty(); ++line) {
        std::size_t o = lines.start_of(line);
        std::size_t line_end = lines.end_of(line);
        o = skip_ws(text, o);
        if (o == std::string_view::npos || o >= line_end) continue;

        // Swallow leading modifiers; stop at the identifier directly followed
        // by '(' (that one is the candidate name, modifiers included).
        std::string name;
        std::size_t name_offset = 0;
        std::size_t cursor = o;
        for (int hops = 0; hops < 4; ++hops) {
            std::string word = read_identifier(text, cursor);
            if (word.empty()) break;
            std::size_t after = skip_ws(text, cursor + word.size());
            if (after == std::string_view::npos) break;
            if (text[after] == '(') {
                name = word;
                name_offset = cursor;
                break;
            }
            if (method_modifier(word) && after > cursor + word.size()) {
                cursor = after;
                continue;
            }
            break;
        }
        if (name.empty() || js_stmt_keywords().count(name) || js_call_keywords().count(name))
            continue;
        if (out.def_names.count(name_offset)) continue; // already claimed by pass 1/2

        std::size_t paren = skip_ws(text, name_offset + name.size());
        std::size_t paren_close = match_bracket(text, paren);
        if (paren_close == std::string_view::npos) continue;

        std::size_t after = skip_ws(text, paren_close + 1);
        if (after == std::string_view::npos) continue;
        if (text[after] == ':') {
            // TS return annotation: accept only a simple type before '{'.
            std::size_t brace = text.find_first_of("{;=\n", after + 1);
            if (brace == std::string_view::npos || text[brace] != '{') continue;
            after = brace;
        }
        if (text[after] != '{') continue;
        std::size_t body_close = match_bracket(text, after);
        if (body_close == std::string_view::npos) {
            fail(out, "unbalanced braces in method '" + name + "'");
            return;
        }

        RawFunction fn;
        fn.name = name;
        fn.name_offset = name_offset;
        fn.start_line = line;
        fn.end_line = lines.line_of(body_close);
        fn.signature = file.content.substr(name_offset, paren_close - name_offset + 1);
        out.def_names.insert(name_offset);
        out.raw.push_back(std::move(fn));
    }
}

class JsGrammar : public GrammarAdapter {
public:
    ParseResult parse(const SourceFile& file) const override {
        ParseResult result;
        Mask mask = build_mask(file.content, syntax_for(Language::JavaScript));
        LineIndex lines(file.content);

        Extraction out;
        extract_function_keyword(file, mask, lines, out);
        if (out.failure.empty()) extract_arrows(file, mask, lines, out);
        if (out.failure.empty()) extract_methods(file, mask, lines, out);
        if (!out.failure.empty()) {
            result.diagnostics.push_back("parse_failure: " + file.relative_path + ": " +
                                         out.failure);
            return result;
        }

        auto sites =
            scan_call_sites(mask, lines, js_call_keywords(), {"function"}, out.def_names);
        result.nodes = assemble_nodes(file, lines, std::move(out.raw), sites);
        return result;
    }
};

} // namespace

const GrammarAdapter* javascript_grammar() {
    static const JsGrammar grammar;
    return &grammar;
}

} // namespace mcpaudit
