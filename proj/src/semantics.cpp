// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/semantics.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/text.hpp"

namespace mcpaudit {

namespace {

std::string collapse_ws(std::string_view text, std::size_t cap = 160) {
    std::string out;
    bool in_ws = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in_ws = !out.empty();
            continue;
        }
        if (in_ws) out.push_back(' ');
        in_ws = false;
        out.push_back(c);
        if (out.size() >= cap) break;
    }
    return out;
}

std::string instantiate(const std::string& phrase_template, const std::string& token) {
    std::string out = phrase_template;
    std::size_t pos = out.find("{token}");
    if (pos != std::string::npos) out.replace(pos, 7, token);
    return out;
}

// Consecutive run match of entry.tokens inside `tokens`.
bool contains_run(const std::vector<std::string>& tokens,
                  const std::vector<std::string>& run) {
    if (run.empty() || tokens.size() < run.size()) return false;
    for (std::size_t i = 0; i + run.size() <= tokens.size(); ++i) {
        bool hit = true;
        for (std::size_t k = 0; k < run.size(); ++k) {
            if (tokens[i + k] != run[k]) {
                hit = false;
                break;
            }
        }
        if (hit) return true;
    }
    return false;
}

std::string dedup_key(const CodeFeature& feature) {
    std::string key = join_tokens(feature.tokens);
    for (auto category : feature.categories) {
        key += "|";
        key += to_string(category);
    }
    return key;
}

} // namespace

std::vector<CodeFeature> dedup_code_features(std::vector<CodeFeature> features) {
    std::vector<CodeFeature> unique;
    std::map<std::string, std::size_t> index;
    for (auto& feature : features) {
        std::string key = dedup_key(feature);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), unique.size());
            unique.push_back(std::move(feature));
        } else {
            auto& kept = unique[it->second];
            kept.evidence.insert(kept.evidence.end(), feature.evidence.begin(),
                                 feature.evidence.end());
        }
    }
    return unique;
}

const char* to_string(AnalyzerKind kind) {
    return kind == AnalyzerKind::Rule ? "rule" : "llm";
}

CapabilityLexicon CapabilityLexicon::parse(std::string_view text) {
    CapabilityLexicon lexicon;
    std::size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line[0] == '#') continue;

        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string_view::npos ? std::string_view::npos
                                                      : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos)
            throw AuditError(ErrorKind::UsageError,
                             "lexicon line " + std::to_string(line_no) +
                                 " needs token<TAB>category<TAB>template");
        LexiconEntry entry;
        entry.pattern = std::string(line.substr(0, t1));
        auto category = parse_category(line.substr(t1 + 1, t2 - t1 - 1));
        if (!category)
            throw AuditError(ErrorKind::UsageError, "lexicon line " + std::to_string(line_no) +
                                                        ": unknown category");
        if (*category == CapabilityCategory::Benign)
            throw AuditError(ErrorKind::UsageError,
                             "lexicon line " + std::to_string(line_no) +
                                 ": benign entries are not allowed");
        entry.category = *category;
        entry.phrase_template = std::string(line.substr(t2 + 1));
        entry.tokens = normalize_feature(entry.pattern);
        if (entry.tokens.empty())
            throw AuditError(ErrorKind::UsageError, "lexicon line " + std::to_string(line_no) +
                                                        ": pattern normalizes to nothing");
        lexicon.entries_.push_back(std::move(entry));
    }

    // patterns unique after normalization
    std::map<std::string, CapabilityCategory> seen;
    for (const auto& entry : lexicon.entries_) {
        std::string key = join_tokens(entry.tokens) + "\t" + to_string(entry.category);
        if (!seen.emplace(key, entry.category).second)
            throw AuditError(ErrorKind::UsageError,
                             "duplicate lexicon pattern: " + entry.pattern);
    }
    return lexicon;
}

CapabilityLexicon CapabilityLexicon::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AuditError(ErrorKind::UsageError, "cannot read lexicon: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::uint64_t CapabilityLexicon::hash() const {
    std::string canonical;
    for (const auto& entry : entries_) {
        canonical += join_tokens(entry.tokens);
        canonical += '\t';
        canonical += to_string(entry.category);
        canonical += '\t';
        canonical += entry.phrase_template;
        canonical += '\n';
    }
    return fnv1a64(canonical);
}

CategorySet categorize_tokens(const std::vector<std::string>& tokens,
                              const CapabilityLexicon& lexicon) {
    CategorySet categories;
    for (const auto& entry : lexicon.entries()) {
        if (contains_run(tokens, entry.tokens)) categories.insert(entry.category);
    }
    if (categories.empty()) categories.insert(CapabilityCategory::Benign);
    return categories;
}

std::vector<CodeFeature> rule_based_analyze(const ChainContext& context, const CallGraph& graph,
                                            const CapabilityLexicon& lexicon) {
    std::vector<CodeFeature> features;

    auto emit = [&](const LexiconEntry& entry, const std::string& fid, int line) {
        CodeFeature feature;
        std::string token = join_tokens(entry.tokens);
        feature.text = instantiate(entry.phrase_template, token);
        feature.tokens = normalize_feature(feature.text);
        feature.categories = {entry.category};
        feature.chain = context.chain.path;
        feature.evidence.push_back({fid, line, token});
        features.push_back(std::move(feature));
    };

    for (const auto& fid : context.chain.path) {
        const FunctionNode* node = graph.find(fid);
        if (!node) continue;

        for (const auto& site : node->call_sites) {
            auto tokens = normalize_feature(site.name);
            for (const auto& entry : lexicon.entries()) {
                if (contains_run(tokens, entry.tokens)) emit(entry, fid, site.line);
            }
        }

        std::istringstream body(node->body);
        std::string line_text;
        int line_no = node->start_line;
        while (std::getline(body, line_text)) {
            auto tokens = normalize_feature(line_text);
            for (const auto& entry : lexicon.entries()) {
                if (contains_run(tokens, entry.tokens)) emit(entry, fid, line_no);
            }
            ++line_no;
        }
    }
    return features;
}

ChainAnalysis analyze_chain(const ChainContext& context, const CallGraph& graph,
                            const AnalyzerOptions& options) {
    if (!options.lexicon)
        throw AuditError(ErrorKind::AnalyzerUnavailable, "no lexicon configured");

    ChainAnalysis analysis;
    if (options.kind == AnalyzerKind::Llm) {
        if (!options.llm || options.llm->url.empty())
            throw AuditError(ErrorKind::AnalyzerUnavailable, "llm analyzer has no endpoint");
        try {
            analysis.features = llm_analyze(context, *options.llm);
        } catch (const AuditError& error) {
            analysis.diagnostics.push_back(
                std::string("analyzer_degraded: ") +
                (context.chain.path.empty() ? "?" : context.chain.path.front()) + ": " +
                to_string(error.kind()));
            analysis.features = rule_based_analyze(context, graph, *options.lexicon);
        }
    } else {
        analysis.features = rule_based_analyze(context, graph, *options.lexicon);
    }

    // Entry summary feature: name tokens + signature tokens.
    if (!context.chain.path.empty()) {
        const FunctionNode* entry = graph.find(context.chain.path.front());
        if (entry) {
            CodeFeature summary;
            summary.text = collapse_ws(entry->signature);
            if (summary.text.empty()) summary.text = entry->name;
            summary.tokens = normalize_feature(entry->name + " " + entry->signature);
            summary.categories = categorize_tokens(summary.tokens, *options.lexicon);
            summary.chain = context.chain.path;
            summary.evidence.push_back({entry->fid, entry->start_line, entry->name});
            analysis.features.push_back(std::move(summary));
        }
    }

    analysis.features = dedup_code_features(std::move(analysis.features));
    return analysis;
}

} // namespace mcpaudit
