// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/categories.hpp"

#include <string>

namespace mcpaudit {

const char* to_string(CapabilityCategory category) {
    switch (category) {
        case CapabilityCategory::ProcessControl: return "process_control";
        case CapabilityCategory::CodeExecution: return "code_execution";
        case CapabilityCategory::FileRead: return "file_read";
        case CapabilityCategory::FileWrite: return "file_write";
        case CapabilityCategory::NetworkEgress: return "network_egress";
        case CapabilityCategory::DatabaseRead: return "database_read";
        case CapabilityCategory::DatabaseWrite: return "database_write";
        case CapabilityCategory::FinancialTransaction: return "financial_transaction";
        case CapabilityCategory::AuthOrUserDataMutation: return "auth_or_user_data_mutation";
        case CapabilityCategory::Benign: return "benign";
    }
    return "benign";
}

std::optional<CapabilityCategory> parse_category(std::string_view name) {
    static const std::pair<std::string_view, CapabilityCategory> table[] = {
        {"process_control", CapabilityCategory::ProcessControl},
        {"code_execution", CapabilityCategory::CodeExecution},
        {"file_read", CapabilityCategory::FileRead},
        {"file_write", CapabilityCategory::FileWrite},
        {"network_egress", CapabilityCategory::NetworkEgress},
        {"database_read", CapabilityCategory::DatabaseRead},
        {"database_write", CapabilityCategory::DatabaseWrite},
        {"financial_transaction", CapabilityCategory::FinancialTransaction},
        {"auth_or_user_data_mutation", CapabilityCategory::AuthOrUserDataMutation},
        {"benign", CapabilityCategory::Benign},
    };
    for (const auto& [key, value] : table)
        if (key == name) return value;
    return std::nullopt;
}

} // namespace mcpaudit
