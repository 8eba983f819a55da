// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mcpaudit {

enum class ErrorKind {
    RootNotFound,
    RootNotReadable,
    ManifestNotFound,
    ManifestUnparseable,
    UnsupportedLanguage,
    ParseFailure,
    DanglingEdge,
    MissingNode,
    AnalyzerUnavailable,
    EndpointUnreachable,
    ResponseUnparseable,
    RepositoryUnreadable,
    DestinationUnwritable,
    UsageError,
    Internal,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a stable error kind so the CLI can map it to exit codes.
class AuditError : public std::runtime_error {
public:
    AuditError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace mcpaudit
