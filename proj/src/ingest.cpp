// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/text.hpp"

namespace fs = std::filesystem;

namespace mcpaudit {

namespace {

bool valid_utf8(std::string_view data) {
    size_t i = 0;
    while (i < data.size()) {
        unsigned char c = static_cast<unsigned char>(data[i]);
        size_t extra;
        if (c < 0x80) {
            if (c == 0) return false; // NUL: treat as binary
            extra = 0;
        } else if ((c & 0xE0) == 0xC0) {
            if (c < 0xC2) return false; // overlong
            extra = 1;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
        } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
            extra = 3;
        } else {
            return false;
        }
        if (i + extra >= data.size()) return false;
        for (size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(data[i + k]) & 0xC0) != 0x80) return false;
        }
        i += extra + 1;
    }
    return true;
}

std::string basename_of(std::string_view relative_path) {
    auto pos = relative_path.find_last_of('/');
    return std::string(pos == std::string_view::npos ? relative_path
                                                     : relative_path.substr(pos + 1));
}

std::string extension_of(std::string_view name) {
    auto pos = name.find_last_of('.');
    if (pos == std::string_view::npos || pos == 0) return "";
    return to_lower(name.substr(pos));
}

bool is_manifest_name(const std::string& lower_base) {
    static const std::unordered_set<std::string> names = {
        "package.json",     "package-lock.json",
        "pyproject.toml",   "setup.cfg",
        "requirements.txt", "pipfile",
        "cargo.toml",       "go.mod",
        "go.sum",           "composer.json",
        "gemfile",          "mcp.json",
        "mcp_config.json",  "mcp-config.json",
        "server.json",      "manifest.json",
        "tools.json",       "smithery.yaml",
        "smithery.json",    "claude_desktop_config.json",
    };
    return names.count(lower_base) > 0;
}

bool is_description_path(std::string_view relative_path) {
    std::string base = to_lower(basename_of(relative_path));
    if (base.rfind("readme", 0) == 0) return true;
    std::string lower_path = to_lower(relative_path);
    bool in_docs = lower_path.rfind("docs/", 0) == 0 ||
                   lower_path.find("/docs/") != std::string::npos;
    if (in_docs) {
        std::string ext = extension_of(base);
        if (ext == ".md" || ext == ".markdown") return true;
    }
    return false;
}

std::optional<std::uint64_t> parse_stars(std::string_view field) {
    if (field.empty()) return std::nullopt;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, 10);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw AuditError(ErrorKind::ManifestUnparseable, "stars is not a non-negative integer");
    }
    return value;
}

// Minimal RFC 4180 row split: quoted fields, "" escapes, comma separator.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

} // namespace

const char* to_string(Language language) {
    switch (language) {
        case Language::Python: return "python";
        case Language::JavaScript: return "javascript";
        case Language::TypeScript: return "typescript";
        case Language::Go: return "go";
        case Language::Rust: return "rust";
        case Language::Java: return "java";
        case Language::Ruby: return "ruby";
        case Language::CFamily: return "c-family";
        case Language::Shell: return "shell";
        case Language::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(FileKind kind) {
    switch (kind) {
        case FileKind::Code: return "code";
        case FileKind::Description: return "description";
        case FileKind::Manifest: return "manifest";
        case FileKind::Other: return "other";
    }
    return "other";
}

Language detect_language(std::string_view relative_path, std::string_view content) {
    static const std::unordered_map<std::string, Language> by_extension = {
        {".py", Language::Python},      {".pyw", Language::Python},
        {".js", Language::JavaScript},  {".mjs", Language::JavaScript},
        {".cjs", Language::JavaScript}, {".jsx", Language::JavaScript},
        {".ts", Language::TypeScript},  {".tsx", Language::TypeScript},
        {".mts", Language::TypeScript}, {".cts", Language::TypeScript},
        {".go", Language::Go},          {".rs", Language::Rust},
        {".java", Language::Java},      {".rb", Language::Ruby},
        {".c", Language::CFamily},      {".h", Language::CFamily},
        {".cc", Language::CFamily},     {".cpp", Language::CFamily},
        {".hpp", Language::CFamily},    {".cxx", Language::CFamily},
        {".sh", Language::Shell},       {".bash", Language::Shell},
    };
    std::string base = basename_of(relative_path);
    std::string ext = extension_of(base);
    if (!ext.empty()) {
        auto it = by_extension.find(ext);
        return it == by_extension.end() ? Language::Unknown : it->second;
    }
    // Shebang fallback for extensionless executables.
    if (content.rfind("#!", 0) == 0) {
        auto eol = content.find('\n');
        std::string first(content.substr(0, eol == std::string_view::npos ? content.size() : eol));
        if (first.find("python") != std::string::npos) return Language::Python;
        if (first.find("node") != std::string::npos) return Language::JavaScript;
        if (first.find("bash") != std::string::npos || first.find("/sh") != std::string::npos)
            return Language::Shell;
    }
    return Language::Unknown;
}

FileKind classify_file(const SourceFile& file) {
    if (file.content.empty() && file.size_bytes > 0) return FileKind::Other;
    std::string lower_base = to_lower(basename_of(file.relative_path));
    if (is_manifest_name(lower_base)) return FileKind::Manifest;
    if (is_description_path(file.relative_path)) return FileKind::Description;
    if (file.language != Language::Unknown) return FileKind::Code;
    return FileKind::Other;
}

Repository scan_repository(const fs::path& root, const IngestConfig& config) {
    std::error_code ec;
    if (!fs::exists(root, ec) || ec)
        throw AuditError(ErrorKind::RootNotFound, "root not found: " + root.string());
    if (!fs::is_directory(root, ec) || ec)
        throw AuditError(ErrorKind::RootNotReadable, "root is not a directory: " + root.string());

    Repository repo;
    repo.root = root;
    repo.id = root.filename().string();
    if (repo.id.empty()) repo.id = root.string();

    std::unordered_set<std::string> excluded(config.excluded_dirs.begin(),
                                             config.excluded_dirs.end());

    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec)
        throw AuditError(ErrorKind::RootNotReadable, "cannot read root: " + root.string());
    fs::recursive_directory_iterator end;
    for (; it != end; it.increment(ec)) {
        if (ec) throw AuditError(ErrorKind::RootNotReadable, "scan failed: " + ec.message());
        const fs::directory_entry& entry = *it;
        std::string name = entry.path().filename().string();
        if (entry.is_directory(ec)) {
            bool hidden = !name.empty() && name[0] == '.';
            if (hidden || excluded.count(name)) it.disable_recursion_pending();
            continue;
        }
        if (entry.is_symlink(ec) || !entry.is_regular_file(ec)) continue;

        std::uint64_t size = entry.file_size(ec);
        if (ec || size > config.size_cap_bytes) continue;

        SourceFile file;
        file.relative_path = entry.path().lexically_relative(root).generic_string();
        file.size_bytes = size;
        std::ifstream in(entry.path(), std::ios::binary);
        if (!in) continue;
        std::ostringstream buffer;
        buffer << in.rdbuf();
        std::string content = buffer.str();
        if (valid_utf8(content)) {
            file.content = std::move(content);
        } // else: undecodable, leave content empty
        file.language = detect_language(file.relative_path, file.content);
        file.kind = classify_file(file);
        repo.files.push_back(std::move(file));
    }

    std::sort(repo.files.begin(), repo.files.end(),
              [](const SourceFile& a, const SourceFile& b) {
                  return a.relative_path < b.relative_path;
              });
    return repo;
}

CorpusManifest load_corpus_manifest(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec) || ec)
        throw AuditError(ErrorKind::ManifestNotFound, "manifest not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw AuditError(ErrorKind::ManifestNotFound, "manifest not readable: " + path.string());

    CorpusManifest manifest;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    std::unordered_set<std::string> seen_ids;
    fs::path base_dir = path.parent_path();

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "path,id,category,stars,source")
                throw AuditError(ErrorKind::ManifestUnparseable,
                                 "unexpected manifest header: " + line);
            saw_header = true;
            continue;
        }
        auto fields = split_csv_row(line);
        if (fields.size() != 5) {
            manifest.row_errors.push_back({line_no, "expected 5 fields, got " +
                                                        std::to_string(fields.size())});
            continue;
        }
        ManifestEntry entry;
        entry.path = fields[0];
        entry.id = fields[1];
        entry.category = fields[2];
        entry.source = fields[4];
        if (entry.path.empty() || entry.id.empty()) {
            manifest.row_errors.push_back({line_no, "path and id are required"});
            continue;
        }
        try {
            entry.stars = parse_stars(fields[3]);
        } catch (const AuditError&) {
            manifest.row_errors.push_back({line_no, "invalid stars value: " + fields[3]});
            continue;
        }
        if (!seen_ids.insert(entry.id).second) {
            manifest.row_errors.push_back({line_no, "duplicate id: " + entry.id});
            continue;
        }
        fs::path repo_path = fs::path(entry.path).is_absolute()
                                 ? fs::path(entry.path)
                                 : base_dir / entry.path;
        if (!fs::exists(repo_path, ec) || ec) {
            manifest.row_errors.push_back({line_no, "path does not exist: " + entry.path});
            continue;
        }
        entry.path = repo_path.string();
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::RootNotFound: return "root_not_found";
        case ErrorKind::RootNotReadable: return "root_not_readable";
        case ErrorKind::ManifestNotFound: return "manifest_not_found";
        case ErrorKind::ManifestUnparseable: return "manifest_unparseable";
        case ErrorKind::UnsupportedLanguage: return "unsupported_language";
        case ErrorKind::ParseFailure: return "parse_failure";
        case ErrorKind::DanglingEdge: return "dangling_edge";
        case ErrorKind::MissingNode: return "missing_node";
        case ErrorKind::AnalyzerUnavailable: return "analyzer_unavailable";
        case ErrorKind::EndpointUnreachable: return "endpoint_unreachable";
        case ErrorKind::ResponseUnparseable: return "response_unparseable";
        case ErrorKind::RepositoryUnreadable: return "repository_unreadable";
        case ErrorKind::DestinationUnwritable: return "destination_unwritable";
        case ErrorKind::UsageError: return "usage_error";
        case ErrorKind::Internal: return "internal";
    }
    return "internal";
}

} // namespace mcpaudit
