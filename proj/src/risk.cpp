// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/risk.hpp"

#include <algorithm>
#include <tuple>

namespace mcpaudit {

const char* to_string(RiskClass risk_class) {
    switch (risk_class) {
        case RiskClass::C1: return "C1";
        case RiskClass::C2: return "C2";
        case RiskClass::C3: return "C3";
        case RiskClass::Other: return "other";
    }
    return "other";
}

const char* to_string(Severity severity) {
    return severity == Severity::High ? "high" : "medium";
}

namespace {

bool any_of(const CategorySet& categories, std::initializer_list<CapabilityCategory> wanted) {
    for (auto category : wanted)
        if (categories.count(category)) return true;
    return false;
}

const char* rationale_for(RiskClass risk_class) {
    switch (risk_class) {
        case RiskClass::C1: return "undocumented privileged system operation";
        case RiskClass::C2: return "hidden financial transaction capability";
        case RiskClass::C3: return "undeclared state-mutating capability";
        case RiskClass::Other: return "undocumented side-effecting capability";
    }
    return "";
}

} // namespace

std::vector<RiskFlag> flag_risks(const std::vector<CodeFeature>& features,
                                 const std::vector<int>& uncovered_code) {
    std::vector<RiskFlag> flags;
    for (int index : uncovered_code) {
        const CodeFeature& feature = features[static_cast<std::size_t>(index)];
        if (feature.categories == CategorySet{CapabilityCategory::Benign}) continue;

        RiskFlag flag;
        flag.feature_index = index;
        flag.feature_text = feature.text;
        if (any_of(feature.categories,
                   {CapabilityCategory::ProcessControl, CapabilityCategory::CodeExecution})) {
            flag.risk_class = RiskClass::C1;
            flag.severity = Severity::High;
        } else if (feature.categories.count(CapabilityCategory::FinancialTransaction)) {
            flag.risk_class = RiskClass::C2;
            flag.severity = Severity::High;
        } else if (any_of(feature.categories,
                          {CapabilityCategory::DatabaseWrite, CapabilityCategory::FileWrite,
                           CapabilityCategory::AuthOrUserDataMutation})) {
            flag.risk_class = RiskClass::C3;
            flag.severity = Severity::Medium;
        } else {
            flag.risk_class = RiskClass::Other;
            flag.severity = Severity::Medium;
        }
        flag.rationale = rationale_for(flag.risk_class);
        flags.push_back(std::move(flag));
    }

    std::sort(flags.begin(), flags.end(), [](const RiskFlag& a, const RiskFlag& b) {
        return std::make_tuple(a.severity == Severity::High ? 0 : 1, static_cast<int>(a.risk_class),
                               a.feature_text) <
               std::make_tuple(b.severity == Severity::High ? 0 : 1, static_cast<int>(b.risk_class),
                               b.feature_text);
    });
    return flags;
}

} // namespace mcpaudit
