// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcpaudit/config.hpp"
#include "mcpaudit/consistency.hpp"
#include "mcpaudit/declarations.hpp"
#include "mcpaudit/risk.hpp"

namespace mcpaudit {

struct ConsistencyReport {
    std::string repo_id;
    double coverage_value = 1.0;
    MatchLevel match_level = MatchLevel::Full;
    std::vector<DeclaredFeature> declared_features;
    std::vector<CodeFeature> code_features;
    Matching matching;
    std::vector<RiskFlag> flags;
    std::vector<std::string> diagnostics;
    ConfigFingerprint config;

    bool has_flag_at_least(Severity severity) const;
};

struct RepoSummaryRow {
    std::string id;
    std::string category; // empty = unknown
    std::optional<std::uint64_t> stars;
    std::string source;
    double coverage_value = 1.0;
    MatchLevel match_level = MatchLevel::Full;
    int high_flags = 0;
    int medium_flags = 0;
};

// cross-tab cell order: [full, mostly, partial, rare]
using LevelCounts = std::array<int, 4>;

struct CorpusSummary {
    std::vector<RepoSummaryRow> rows; // repository id ascending
    std::map<std::string, LevelCounts> by_category;
    std::map<std::string, LevelCounts> by_source;
    std::map<std::string, LevelCounts> by_star_bin;
    std::vector<std::pair<std::string, std::string>> load_errors; // (entry, message)
    int total_analyzed = 0;
};

enum class ReportFormat { Json, Csv, Markdown };

/// Table 2's popularity ranges plus an explicit "unknown" bucket.
std::string star_bin(std::optional<std::uint64_t> stars);

/// Runs the full pipeline on a scanned repository:
/// code_graph -> semantics -> declarations -> consistency -> risk.
/// Per-file parse problems degrade into diagnostics; the analysis continues.
ConsistencyReport analyze_repository(const Repository& repo, const AnalysisConfig& config);
ConsistencyReport analyze_repository(const Repository& repo, const AnalysisConfig& config,
                                     const CapabilityLexicon& lexicon,
                                     const RegistrationPatterns& patterns);

/// Analyzes every manifest entry (worker pool), aggregates the cross-tabs.
/// Per-entry failures land in load_errors; the run never aborts.
CorpusSummary run_corpus(const CorpusManifest& manifest, const AnalysisConfig& config);

/// Canonical json (byte-deterministic), csv (summary cross-tab rows), or a
/// human markdown rendering. csv is only defined for summaries.
std::string render_report(const ConsistencyReport& report, ReportFormat format);
std::string render_summary(const CorpusSummary& summary, ReportFormat format);

/// Writes to a file path, or to the given stream when destination is "-".
/// Throws AuditError{DestinationUnwritable}.
void write_output(const std::string& text, const std::string& destination, std::ostream& stdout_stream);

} // namespace mcpaudit
