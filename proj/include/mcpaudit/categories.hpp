// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string_view>

namespace mcpaudit {

/// Capability classes distilled from the consequence taxonomy plus the
/// conventional side-effect classes needed for coverage scoring. Benign never
/// co-occurs with another category.
enum class CapabilityCategory {
    ProcessControl,
    CodeExecution,
    FileRead,
    FileWrite,
    NetworkEgress,
    DatabaseRead,
    DatabaseWrite,
    FinancialTransaction,
    AuthOrUserDataMutation,
    Benign,
};

using CategorySet = std::set<CapabilityCategory>;

const char* to_string(CapabilityCategory category);
std::optional<CapabilityCategory> parse_category(std::string_view name);

} // namespace mcpaudit
