// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mcpaudit/ingest.hpp"
#include "mcpaudit/semantics.hpp"

namespace mcpaudit {

enum class FailOn { None, Medium, High };

struct AnalysisConfig {
    IngestConfig ingest;

    int max_depth = 32;             // call-chain depth cap
    int max_chains_per_entry = 256; // lexicographically first kept
    std::size_t context_budget_bytes = 65536;

    double match_threshold = 0.35;
    AnalyzerKind analyzer = AnalyzerKind::Rule;

    std::string lexicon_path;  // empty = builtin
    std::string patterns_path; // empty = builtin

    LlmConfig llm;

    int workers = 1; // corpus-level parallelism
    FailOn fail_on = FailOn::None;
};

/// The reproducibility fingerprint embedded in every report.
struct ConfigFingerprint {
    std::string analyzer;
    double match_threshold = 0.35;
    std::string lexicon_hash; // fnv1a64 hex
    int max_depth = 32;
    int max_chains_per_entry = 256;
};

ConfigFingerprint fingerprint(const AnalysisConfig& config, const CapabilityLexicon& lexicon);

} // namespace mcpaudit
