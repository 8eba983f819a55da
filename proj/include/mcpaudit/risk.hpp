// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mcpaudit/semantics.hpp"

namespace mcpaudit {

enum class RiskClass { C1, C2, C3, Other };
enum class Severity { Medium, High }; // ascending

const char* to_string(RiskClass risk_class);
const char* to_string(Severity severity);

struct RiskFlag {
    RiskClass risk_class = RiskClass::Other;
    Severity severity = Severity::Medium;
    int feature_index = 0; // index into the report's code-feature list
    std::string feature_text;
    std::string rationale;
};

/// One flag per non-Benign uncovered code feature, ordered by
/// (severity desc, class, feature text). C1 = process/code execution,
/// C2 = financial transactions, C3 = state mutation (precedence C1 > C2 > C3);
/// anything else non-benign flags as Other.
std::vector<RiskFlag> flag_risks(const std::vector<CodeFeature>& features,
                                 const std::vector<int>& uncovered_code);

} // namespace mcpaudit
