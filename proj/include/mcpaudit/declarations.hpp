// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mcpaudit/categories.hpp"
#include "mcpaudit/ingest.hpp"
#include "mcpaudit/text.hpp"

namespace mcpaudit {

struct ToolDescription {
    std::string name;
    std::string description;
    std::string input_schema; // raw schema text, empty when none was declared
    std::string file;
    int line = 1;
};

enum class FeatureOrigin { Description, Manifest, ToolRegistration };

const char* to_string(FeatureOrigin origin);

struct DeclaredFeature {
    std::string text;                // original sentence/fragment
    std::vector<std::string> tokens; // normalize_feature output
    FeatureOrigin origin = FeatureOrigin::Description;
    std::string file;
    int line = 1;
    CategorySet categories; // filled by the analysis pipeline
};

struct RegistrationPattern {
    enum class Kind { Decorator, Call };
    std::string language; // matches to_string(Language)
    Kind kind = Kind::Call;
    std::string pattern; // ECMAScript regex applied per source line
};

/// Data-driven registration idioms (`language<TAB>kind<TAB>pattern` lines).
struct RegistrationPatterns {
    std::vector<RegistrationPattern> patterns;

    static RegistrationPatterns builtin();
    static RegistrationPatterns parse(std::string_view text);
    static RegistrationPatterns from_file(const std::string& path);
};

/// Canonical text of the builtin patterns (matches data/registration_patterns.tsv).
std::string builtin_patterns_text();

struct ToolScan {
    std::vector<ToolDescription> tools; // deduplicated by (name, description)
    int candidates_scanned = 0;
};

/// Finds tool declarations in JSON manifests (objects carrying name /
/// description / inputSchema) and in code-embedded registrations matched by
/// the configured per-language patterns. Pattern misses are silent.
ToolScan extract_tool_descriptions(const Repository& repo, const RegistrationPatterns& patterns);

/// Splits Description-kind files into feature units: one per list item, per
/// heading, and per sentence of paragraphs under feature-announcing headings.
/// Units shorter than two tokens are dropped.
std::vector<DeclaredFeature> extract_readme_features(const Repository& repo);

/// The declared-feature universe used for matching: README/doc units,
/// manifest top-level descriptions, and one feature per tool description
/// (tool features keep the description as text and fold the tool name into
/// the tokens; they are never dropped for brevity).
std::vector<DeclaredFeature> collect_declared_features(const Repository& repo,
                                                       const std::vector<ToolDescription>& tools,
                                                       std::vector<DeclaredFeature> readme_features);

} // namespace mcpaudit
