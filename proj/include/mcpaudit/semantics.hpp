// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpaudit/categories.hpp"
#include "mcpaudit/code_graph.hpp"

namespace mcpaudit {

struct CodeFeature {
    struct Evidence {
        std::string fid;
        int line = 0;
        std::string token; // normalized pattern that matched
    };

    std::string text; // short feature phrase
    std::vector<std::string> tokens;
    CategorySet categories;
    std::vector<std::string> chain; // fids, entry first
    std::vector<Evidence> evidence; // non-empty for rule-based features
};

struct LexiconEntry {
    std::string pattern;             // as written in the lexicon file
    std::vector<std::string> tokens; // normalized, matched as a consecutive run
    CapabilityCategory category = CapabilityCategory::Benign;
    std::string phrase_template; // may contain {token}
};

/// Pattern table realizing the deterministic capability analysis. Shipped as
/// editable data (`token<TAB>category<TAB>template` lines); the frozen builtin
/// copy backs golden tests.
class CapabilityLexicon {
public:
    static CapabilityLexicon builtin();
    static CapabilityLexicon parse(std::string_view text);
    static CapabilityLexicon from_file(const std::string& path);

    const std::vector<LexiconEntry>& entries() const { return entries_; }

    /// FNV-1a over the canonical entry serialization; part of the report's
    /// config fingerprint.
    std::uint64_t hash() const;

private:
    std::vector<LexiconEntry> entries_;
};

enum class AnalyzerKind { Rule, Llm };

const char* to_string(AnalyzerKind kind);

struct LlmConfig {
    std::string url; // empty = not configured
    std::string key;
    int timeout_ms = 30000;
    int max_tokens = 512;
    int max_concurrency = 4;
    std::string prompt_template; // empty = builtin
};

struct AnalyzerOptions {
    AnalyzerKind kind = AnalyzerKind::Rule;
    const CapabilityLexicon* lexicon = nullptr; // required
    const LlmConfig* llm = nullptr;             // required for AnalyzerKind::Llm
};

struct ChainAnalysis {
    std::vector<CodeFeature> features;
    std::vector<std::string> diagnostics; // analyzer degradations
};

/// Dispatches to the configured analyzer, appends the entry-function summary
/// feature (so even lexicon-miss chains yield one feature), and de-duplicates
/// by (tokens, categories), merging evidence.
/// Throws AuditError{AnalyzerUnavailable} for an unconfigured LLM analyzer.
ChainAnalysis analyze_chain(const ChainContext& context, const CallGraph& graph,
                            const AnalyzerOptions& options);

/// Scans chain members' callee names and body tokens against the lexicon
/// (whole-token runs after normalization); deterministic evidence order.
std::vector<CodeFeature> rule_based_analyze(const ChainContext& context, const CallGraph& graph,
                                            const CapabilityLexicon& lexicon);

/// Sends the prompt template with the chain context and parses
/// `category | feature phrase` response lines. One retry on an unparseable
/// response. Throws AuditError{EndpointUnreachable, ResponseUnparseable}.
std::vector<CodeFeature> llm_analyze(const ChainContext& context, const LlmConfig& config);

/// Union of lexicon categories over consecutive token runs; empty -> {Benign}.
CategorySet categorize_tokens(const std::vector<std::string>& tokens,
                              const CapabilityLexicon& lexicon);

/// (tokens, categories) de-duplication, first occurrence kept, evidence
/// merged. analyze_chain applies it per chain; the repository pipeline
/// applies it once more across chains.
std::vector<CodeFeature> dedup_code_features(std::vector<CodeFeature> features);

const char* builtin_prompt_template();

/// Canonical text of the builtin lexicon (matches data/lexicon.tsv).
std::string builtin_lexicon_text();

} // namespace mcpaudit
