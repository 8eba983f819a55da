// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mcpaudit {

enum class Language {
    Python,
    JavaScript,
    TypeScript,
    Go,
    Rust,
    Java,
    Ruby,
    CFamily,
    Shell,
    Unknown,
};

const char* to_string(Language language);

enum class FileKind { Code, Description, Manifest, Other };

const char* to_string(FileKind kind);

struct SourceFile {
    std::string relative_path; // '/'-separated, relative to the repository root
    Language language = Language::Unknown;
    FileKind kind = FileKind::Other;
    std::uint64_t size_bytes = 0;
    std::string content; // empty when the file is undecodable
};

struct Repository {
    std::string id;
    std::filesystem::path root;
    std::string category; // empty = unknown
    std::optional<std::uint64_t> stars;
    std::string source; // marketplace label, empty = unknown
    std::vector<SourceFile> files; // sorted by relative_path ascending
};

struct IngestConfig {
    std::uint64_t size_cap_bytes = 1024 * 1024;
    // Directory basenames skipped during the scan. Hidden directories
    // (leading '.') are always skipped.
    std::vector<std::string> excluded_dirs = {
        "node_modules", "vendor",      "venv",          "__pycache__",
        "dist",         "build",       "target",        "site-packages",
        "bower_components",
    };
};

struct ManifestEntry {
    std::string path;
    std::string id;
    std::string category;
    std::optional<std::uint64_t> stars;
    std::string source;
};

struct RowError {
    int line = 0; // 1-based line in the manifest file
    std::string message;
};

struct CorpusManifest {
    std::vector<ManifestEntry> entries;
    std::vector<RowError> row_errors;
};

/// Walks `root` and loads every regular file not excluded by `config`.
/// Files are ordered by relative path ascending; scanning twice over an
/// unchanged tree yields identical Repository values.
/// Throws AuditError{RootNotFound, RootNotReadable}.
Repository scan_repository(const std::filesystem::path& root, const IngestConfig& config);

/// Extension-first language mapping with a shebang fallback for extensionless
/// files. Total: unrecognized inputs map to Language::Unknown.
Language detect_language(std::string_view relative_path, std::string_view content);

/// Manifest name patterns win over Description patterns; recognized source
/// languages map to Code; everything else is Other. Undecodable content
/// (empty `content` with non-zero size) is always Other.
FileKind classify_file(const SourceFile& file);

/// Parses the corpus manifest CSV (`path,id,category,stars,source`).
/// Malformed or unresolvable rows are collected as RowErrors, never dropped
/// silently. Throws AuditError{ManifestNotFound, ManifestUnparseable}.
CorpusManifest load_corpus_manifest(const std::filesystem::path& path);

} // namespace mcpaudit
