// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/declarations.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "grammar_detail.hpp"
#include "mcpaudit/errors.hpp"

namespace mcpaudit {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

int line_of_offset(std::string_view text, std::size_t offset) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

// ---- tool descriptions from JSON manifests ----

void walk_json(const json& value, const SourceFile& file, std::vector<ToolDescription>& out) {
    if (value.is_object()) {
        auto name = value.find("name");
        auto desc = value.find("description");
        if (name != value.end() && name->is_string() && desc != value.end() &&
            desc->is_string() && value.contains("inputSchema")) {
            ToolDescription tool;
            tool.name = name->get<std::string>();
            tool.description = desc->get<std::string>();
            tool.input_schema = value["inputSchema"].dump();
            tool.file = file.relative_path;
            std::size_t pos = file.content.find("\"" + tool.name + "\"");
            tool.line = pos == std::string::npos ? 1 : line_of_offset(file.content, pos);
            if (!tool.name.empty()) out.push_back(std::move(tool));
        }
        for (const auto& item : value.items()) walk_json(item.value(), file, out);
    } else if (value.is_array()) {
        for (const auto& item : value) walk_json(item, file, out);
    }
}

// ---- string-literal runs inside a masked window ----

std::vector<std::string> literals_in_window(const std::string& content,
                                            const detail::Mask& mask, std::size_t begin,
                                            std::size_t end) {
    std::vector<std::string> literals;
    std::size_t i = begin;
    while (i < end) {
        if (!mask.in_string[i]) {
            ++i;
            continue;
        }
        std::size_t run_start = i;
        while (i < end && mask.in_string[i]) ++i;
        std::string raw = content.substr(run_start, i - run_start);
        // Strip up to three quote characters from each side (covers
        // single/double/backtick and Python triple quotes).
        std::size_t lead = 0;
        while (lead < raw.size() && lead < 3 &&
               (raw[lead] == '"' || raw[lead] == '\'' || raw[lead] == '`'))
            ++lead;
        std::size_t tail = 0;
        while (tail < raw.size() - lead && tail < 3 &&
               (raw[raw.size() - 1 - tail] == '"' || raw[raw.size() - 1 - tail] == '\'' ||
                raw[raw.size() - 1 - tail] == '`'))
            ++tail;
        literals.push_back(raw.substr(lead, raw.size() - lead - tail));
    }
    return literals;
}

// ---- code-embedded registrations ----

void scan_decorator_pattern(const SourceFile& file, const std::regex& pattern, ToolScan& out) {
    auto lines = split_lines(file.content);
    detail::Mask mask = detail::build_mask(file.content, detail::syntax_for(file.language));
    detail::LineIndex index(file.content);

    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::smatch match;
        if (!std::regex_search(lines[li], match, pattern)) continue;
        ++out.candidates_scanned;

        // Find the decorated def, skipping stacked decorators and blanks.
        std::size_t def_line = std::string::npos;
        for (std::size_t j = li + 1; j < lines.size() && j <= li + 12; ++j) {
            std::string stripped = trim(lines[j]);
            if (stripped.empty() || stripped[0] == '@') continue;
            if (stripped.rfind("def ", 0) == 0 || stripped.rfind("async def ", 0) == 0)
                def_line = j;
            break;
        }
        if (def_line == std::string::npos) continue;

        std::string stripped = trim(lines[def_line]);
        std::size_t def_pos = stripped.rfind("def ", 0) == 0 ? 4 : 10;
        std::string fn_name = detail::read_identifier(stripped, def_pos);
        if (fn_name.empty()) continue;

        // Keyword overrides inside the decorator's argument list.
        std::string name = fn_name;
        std::string description;
        static const std::regex name_kw(R"(name\s*=\s*["']([^"']*)["'])");
        static const std::regex desc_kw(R"(description\s*=\s*["']([^"']*)["'])");
        std::size_t deco_offset = index.start_of(static_cast<int>(li) + 1);
        std::size_t paren = file.content.find('(', deco_offset);
        std::size_t deco_end = deco_offset + lines[li].size();
        if (paren != std::string::npos && paren < deco_end) {
            std::size_t close = detail::match_bracket(mask.text, paren);
            if (close != std::string::npos) {
                std::string args = file.content.substr(paren, close - paren + 1);
                std::smatch kw;
                if (std::regex_search(args, kw, name_kw)) name = kw[1];
                if (std::regex_search(args, kw, desc_kw)) description = kw[1];
            }
        }

        // Docstring: first string literal line right after the def header.
        if (description.empty()) {
            for (std::size_t j = def_line + 1; j < lines.size() && j <= def_line + 3; ++j) {
                std::string s = trim(lines[j]);
                if (s.empty()) continue;
                if (s.rfind("\"\"\"", 0) == 0 || s.rfind("'''", 0) == 0) {
                    std::string quote = s.substr(0, 3);
                    std::string body = s.substr(3);
                    std::size_t closing = body.find(quote);
                    if (closing != std::string::npos) {
                        description = trim(body.substr(0, closing));
                    } else {
                        std::vector<std::string> para;
                        if (!trim(body).empty()) para.push_back(trim(body));
                        for (std::size_t k = j + 1; k < lines.size(); ++k) {
                            std::string cont = trim(lines[k]);
                            std::size_t endq = cont.find(quote);
                            if (endq != std::string::npos) {
                                std::string last = trim(cont.substr(0, endq));
                                if (!last.empty()) para.push_back(last);
                                break;
                            }
                            if (cont.empty()) break; // first paragraph only
                            para.push_back(cont);
                        }
                        std::string joined;
                        for (const auto& p : para) {
                            if (!joined.empty()) joined += " ";
                            joined += p;
                        }
                        description = joined;
                    }
                } else if (s.size() >= 2 && (s[0] == '"' || s[0] == '\'')) {
                    std::size_t closing = s.find(s[0], 1);
                    if (closing != std::string::npos) description = s.substr(1, closing - 1);
                }
                break;
            }
        }

        ToolDescription tool;
        tool.name = name;
        tool.description = description;
        tool.file = file.relative_path;
        tool.line = static_cast<int>(li) + 1;
        out.tools.push_back(std::move(tool));
    }
}

void scan_call_pattern(const SourceFile& file, const std::regex& pattern, ToolScan& out) {
    auto lines = split_lines(file.content);
    detail::Mask mask = detail::build_mask(file.content, detail::syntax_for(file.language));
    detail::LineIndex index(file.content);

    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::smatch match;
        if (!std::regex_search(lines[li], match, pattern)) continue;
        ++out.candidates_scanned;

        std::size_t line_offset = index.start_of(static_cast<int>(li) + 1);
        std::size_t search_from = line_offset + static_cast<std::size_t>(match.position(0));
        std::size_t open = mask.text.find('(', search_from);
        if (open == std::string::npos) continue;
        std::size_t close = detail::match_bracket(mask.text, open);
        if (close == std::string::npos) continue;

        auto literals = literals_in_window(file.content, mask, open + 1, close);
        if (literals.empty() || literals[0].empty()) continue;

        ToolDescription tool;
        tool.name = literals[0];
        tool.description = literals.size() > 1 ? literals[1] : "";
        tool.file = file.relative_path;
        tool.line = static_cast<int>(li) + 1;
        out.tools.push_back(std::move(tool));
    }
}

bool looks_like_json(const SourceFile& file) {
    std::size_t pos = file.content.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (file.content[pos] == '{' || file.content[pos] == '[');
}

} // namespace

const char* to_string(FeatureOrigin origin) {
    switch (origin) {
        case FeatureOrigin::Description: return "description";
        case FeatureOrigin::Manifest: return "manifest";
        case FeatureOrigin::ToolRegistration: return "tool_registration";
    }
    return "description";
}

RegistrationPatterns RegistrationPatterns::parse(std::string_view text) {
    RegistrationPatterns result;
    for (auto& line : split_lines(text)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw AuditError(ErrorKind::UsageError,
                             "registration pattern line needs language<TAB>kind<TAB>pattern: " +
                                 line);
        RegistrationPattern entry;
        entry.language = line.substr(0, t1);
        std::string kind = line.substr(t1 + 1, t2 - t1 - 1);
        if (kind == "decorator")
            entry.kind = RegistrationPattern::Kind::Decorator;
        else if (kind == "call")
            entry.kind = RegistrationPattern::Kind::Call;
        else
            throw AuditError(ErrorKind::UsageError, "unknown pattern kind: " + kind);
        entry.pattern = line.substr(t2 + 1);
        result.patterns.push_back(std::move(entry));
    }
    return result;
}

RegistrationPatterns RegistrationPatterns::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AuditError(ErrorKind::UsageError, "cannot read pattern file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

ToolScan extract_tool_descriptions(const Repository& repo, const RegistrationPatterns& patterns) {
    ToolScan scan;

    // (a) standalone manifests
    for (const auto& file : repo.files) {
        if (file.kind != FileKind::Manifest || !looks_like_json(file)) continue;
        json parsed = json::parse(file.content, nullptr, false);
        if (parsed.is_discarded()) continue;
        ++scan.candidates_scanned;
        walk_json(parsed, file, scan.tools);
    }

    // (b) code-embedded registrations
    std::vector<std::pair<const RegistrationPattern*, std::regex>> compiled;
    for (const auto& entry : patterns.patterns) {
        try {
            compiled.emplace_back(&entry, std::regex(entry.pattern));
        } catch (const std::regex_error&) {
            // invalid user pattern: skip silently, validation happens at load
        }
    }
    for (const auto& file : repo.files) {
        if (file.kind != FileKind::Code) continue;
        for (const auto& [entry, regex] : compiled) {
            if (entry->language != to_string(file.language)) continue;
            if (entry->kind == RegistrationPattern::Kind::Decorator)
                scan_decorator_pattern(file, regex, scan);
            else
                scan_call_pattern(file, regex, scan);
        }
    }

    // dedup by (name, description), keep first occurrence
    std::vector<ToolDescription> unique;
    for (auto& tool : scan.tools) {
        bool seen = std::any_of(unique.begin(), unique.end(), [&](const ToolDescription& t) {
            return t.name == tool.name && t.description == tool.description;
        });
        if (!seen) unique.push_back(std::move(tool));
    }
    scan.tools = std::move(unique);
    return scan;
}

std::vector<DeclaredFeature> extract_readme_features(const Repository& repo) {
    std::vector<DeclaredFeature> features;

    auto add_unit = [&](const std::string& text, const SourceFile& file, int line) {
        DeclaredFeature feature;
        feature.text = trim(text);
        if (feature.text.empty()) return;
        feature.tokens = normalize_feature(feature.text);
        if (feature.tokens.size() < 2) return;
        feature.origin = FeatureOrigin::Description;
        feature.file = file.relative_path;
        feature.line = line;
        features.push_back(std::move(feature));
    };

    static const std::regex heading_re(R"(^(#{1,6})\s+(.*?)\s*#*\s*$)");
    static const std::regex bullet_re(R"(^\s*[-*+]\s+(.+)$)");
    static const std::regex numbered_re(R"(^\s*\d+[.)]\s+(.+)$)");

    auto feature_heading = [](const std::string& heading) {
        std::string lower = to_lower(heading);
        static const char* words[] = {"feature", "capabilit", "tool",      "command",
                                      "function", "usage",    "operation", "support",
                                      "what"};
        for (const char* w : words)
            if (lower.find(w) != std::string::npos) return true;
        return false;
    };

    for (const auto& file : repo.files) {
        if (file.kind != FileKind::Description) continue;
        auto lines = split_lines(file.content);
        bool in_feature_section = false;
        bool in_fence = false;
        std::string paragraph;
        int paragraph_line = 0;

        auto flush_paragraph = [&]() {
            if (paragraph.empty()) return;
            if (in_feature_section) {
                // one unit per sentence
                std::string sentence;
                int line = paragraph_line;
                for (std::size_t i = 0; i < paragraph.size(); ++i) {
                    char c = paragraph[i];
                    sentence.push_back(c);
                    bool end = (c == '.' || c == '!' || c == '?') &&
                               (i + 1 >= paragraph.size() || paragraph[i + 1] == ' ');
                    if (end) {
                        add_unit(sentence, file, line);
                        sentence.clear();
                    }
                }
                add_unit(sentence, file, line);
            }
            paragraph.clear();
        };

        for (std::size_t li = 0; li < lines.size(); ++li) {
            const std::string& line = lines[li];
            if (trim(line).rfind("```", 0) == 0) {
                flush_paragraph();
                in_fence = !in_fence;
                continue;
            }
            if (in_fence) continue;

            std::smatch match;
            if (std::regex_match(line, match, heading_re)) {
                flush_paragraph();
                std::string heading = match[2];
                in_feature_section = feature_heading(heading);
                add_unit(heading, file, static_cast<int>(li) + 1);
                continue;
            }
            if (std::regex_match(line, match, bullet_re) ||
                std::regex_match(line, match, numbered_re)) {
                flush_paragraph();
                add_unit(match[1], file, static_cast<int>(li) + 1);
                continue;
            }
            if (trim(line).empty()) {
                flush_paragraph();
                continue;
            }
            if (paragraph.empty()) paragraph_line = static_cast<int>(li) + 1;
            if (!paragraph.empty()) paragraph += " ";
            paragraph += trim(line);
        }
        flush_paragraph();
    }
    return features;
}

std::vector<DeclaredFeature> collect_declared_features(const Repository& repo,
                                                       const std::vector<ToolDescription>& tools,
                                                       std::vector<DeclaredFeature> readme_features) {
    std::vector<DeclaredFeature> all = std::move(readme_features);

    // manifest top-level descriptions (e.g. package.json "description")
    for (const auto& file : repo.files) {
        if (file.kind != FileKind::Manifest) continue;
        std::size_t pos = file.content.find_first_not_of(" \t\r\n");
        if (pos == std::string::npos || file.content[pos] != '{') continue;
        json parsed = json::parse(file.content, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) continue;
        auto desc = parsed.find("description");
        if (desc == parsed.end() || !desc->is_string()) continue;
        DeclaredFeature feature;
        feature.text = desc->get<std::string>();
        feature.tokens = normalize_feature(feature.text);
        if (feature.tokens.size() < 2) continue;
        feature.origin = FeatureOrigin::Manifest;
        feature.file = file.relative_path;
        std::size_t at = file.content.find("\"description\"");
        feature.line = at == std::string::npos ? 1 : line_of_offset(file.content, at);
        all.push_back(std::move(feature));
    }

    // one feature per tool description; the tool name folds into the tokens
    std::vector<const ToolDescription*> ordered;
    for (const auto& tool : tools) ordered.push_back(&tool);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ToolDescription* a, const ToolDescription* b) {
                         return std::tie(a->file, a->line, a->name) <
                                std::tie(b->file, b->line, b->name);
                     });
    for (const ToolDescription* tool : ordered) {
        DeclaredFeature feature;
        feature.text = tool->description;
        feature.tokens = normalize_feature(tool->name + " " + tool->description);
        feature.origin = FeatureOrigin::ToolRegistration;
        feature.file = tool->file;
        feature.line = tool->line;
        all.push_back(std::move(feature));
    }
    return all;
}

} // namespace mcpaudit
