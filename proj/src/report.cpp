// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/report.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/grammars.hpp"
#include "mcpaudit/json_writer.hpp"
#include "mcpaudit/text.hpp"

namespace mcpaudit {

namespace {

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

int level_slot(MatchLevel level) {
    switch (level) {
        case MatchLevel::Full: return 0;
        case MatchLevel::Mostly: return 1;
        case MatchLevel::Partial: return 2;
        case MatchLevel::Rare: return 3;
    }
    return 3;
}

JsonValue tokens_json(const std::vector<std::string>& tokens) {
    JsonValue array = JsonValue::array();
    for (const auto& token : tokens) array.push_back(token);
    return array;
}

JsonValue categories_json(const CategorySet& categories) {
    JsonValue array = JsonValue::array();
    for (auto category : categories) array.push_back(to_string(category));
    return array;
}

JsonValue report_json(const ConsistencyReport& report) {
    JsonValue root = JsonValue::object();
    root["repo_id"] = report.repo_id;
    root["coverage"] = report.coverage_value;
    root["match_level"] = to_string(report.match_level);
    root["code_feature_count"] = static_cast<std::int64_t>(report.code_features.size());
    root["declared_feature_count"] = static_cast<std::int64_t>(report.declared_features.size());

    JsonValue config = JsonValue::object();
    config["analyzer"] = report.config.analyzer;
    config["match_threshold"] = report.config.match_threshold;
    config["lexicon_hash"] = report.config.lexicon_hash;
    config["max_depth"] = report.config.max_depth;
    config["max_chains_per_entry"] = report.config.max_chains_per_entry;
    root["config"] = std::move(config);

    // pair info per code feature
    std::vector<int> matched_declared(report.code_features.size(), -1);
    std::vector<double> similarity(report.code_features.size(), 0.0);
    for (const auto& pair : report.matching.pairs) {
        matched_declared[static_cast<std::size_t>(pair.code_index)] = pair.declared_index;
        similarity[static_cast<std::size_t>(pair.code_index)] = pair.similarity;
    }

    JsonValue code = JsonValue::array();
    for (std::size_t i = 0; i < report.code_features.size(); ++i) {
        const CodeFeature& feature = report.code_features[i];
        JsonValue item = JsonValue::object();
        item["text"] = feature.text;
        item["tokens"] = tokens_json(feature.tokens);
        item["categories"] = categories_json(feature.categories);
        JsonValue chain = JsonValue::array();
        for (const auto& fid : feature.chain) chain.push_back(fid);
        item["chain"] = std::move(chain);
        JsonValue evidence = JsonValue::array();
        for (const auto& ev : feature.evidence) {
            JsonValue entry = JsonValue::object();
            entry["fid"] = ev.fid;
            entry["line"] = ev.line;
            entry["token"] = ev.token;
            evidence.push_back(std::move(entry));
        }
        item["evidence"] = std::move(evidence);
        item["matched"] = matched_declared[i] >= 0;
        item["matched_declared"] = matched_declared[i];
        item["similarity"] = similarity[i];
        code.push_back(std::move(item));
    }

    JsonValue declared = JsonValue::array();
    for (const auto& feature : report.declared_features) {
        JsonValue item = JsonValue::object();
        item["text"] = feature.text;
        item["tokens"] = tokens_json(feature.tokens);
        item["categories"] = categories_json(feature.categories);
        item["origin"] = to_string(feature.origin);
        item["file"] = feature.file;
        item["line"] = feature.line;
        declared.push_back(std::move(item));
    }

    JsonValue features = JsonValue::object();
    features["code"] = std::move(code);
    features["declared"] = std::move(declared);
    root["features"] = std::move(features);

    JsonValue uncovered = JsonValue::object();
    JsonValue uncovered_code = JsonValue::array();
    for (int index : report.matching.uncovered_code) uncovered_code.push_back(index);
    JsonValue uncovered_declared = JsonValue::array();
    for (int index : report.matching.uncovered_declared) uncovered_declared.push_back(index);
    uncovered["code"] = std::move(uncovered_code);
    uncovered["declared"] = std::move(uncovered_declared);
    root["uncovered"] = std::move(uncovered);

    JsonValue flags = JsonValue::array();
    for (const auto& flag : report.flags) {
        JsonValue item = JsonValue::object();
        item["class"] = to_string(flag.risk_class);
        item["severity"] = to_string(flag.severity);
        item["feature_index"] = flag.feature_index;
        item["feature"] = flag.feature_text;
        item["rationale"] = flag.rationale;
        flags.push_back(std::move(item));
    }
    root["flags"] = std::move(flags);

    JsonValue diagnostics = JsonValue::array();
    for (const auto& diagnostic : report.diagnostics) diagnostics.push_back(diagnostic);
    root["diagnostics"] = std::move(diagnostics);
    return root;
}

std::string report_markdown(const ConsistencyReport& report) {
    std::ostringstream out;
    out << "# Consistency report: " << report.repo_id << "\n\n";
    out << "- coverage: " << format_fixed4(report.coverage_value) << "\n";
    out << "- match level: " << to_string(report.match_level) << "\n";
    out << "- code features: " << report.code_features.size()
        << " (uncovered: " << report.matching.uncovered_code.size() << ")\n";
    out << "- declared features: " << report.declared_features.size() << "\n\n";

    if (!report.flags.empty()) {
        out << "## Risk flags\n\n";
        out << "| class | severity | feature | rationale |\n";
        out << "|-------|----------|---------|-----------|\n";
        for (const auto& flag : report.flags) {
            out << "| " << to_string(flag.risk_class) << " | " << to_string(flag.severity)
                << " | " << flag.feature_text << " | " << flag.rationale << " |\n";
        }
        out << "\n";
    }

    if (!report.matching.uncovered_code.empty()) {
        out << "## Undocumented code features\n\n";
        for (int index : report.matching.uncovered_code) {
            const CodeFeature& feature = report.code_features[static_cast<std::size_t>(index)];
            out << "- " << feature.text << " [";
            bool first = true;
            for (auto category : feature.categories) {
                if (!first) out << ", ";
                first = false;
                out << to_string(category);
            }
            out << "]";
            if (!feature.evidence.empty()) {
                out << " (" << feature.evidence.front().fid << ":"
                    << feature.evidence.front().line << ")";
            }
            out << "\n";
        }
        out << "\n";
    }

    if (!report.diagnostics.empty()) {
        out << "## Diagnostics\n\n";
        for (const auto& diagnostic : report.diagnostics) out << "- " << diagnostic << "\n";
    }
    return out.str();
}

JsonValue summary_json(const CorpusSummary& summary) {
    JsonValue root = JsonValue::object();
    root["total_analyzed"] = summary.total_analyzed;

    JsonValue rows = JsonValue::array();
    for (const auto& row : summary.rows) {
        JsonValue item = JsonValue::object();
        item["id"] = row.id;
        item["category"] = row.category.empty() ? "unknown" : row.category;
        item["stars"] = row.stars ? JsonValue(static_cast<std::int64_t>(*row.stars))
                                  : JsonValue(nullptr);
        item["source"] = row.source.empty() ? "unknown" : row.source;
        item["coverage"] = row.coverage_value;
        item["match_level"] = to_string(row.match_level);
        item["high_flags"] = row.high_flags;
        item["medium_flags"] = row.medium_flags;
        rows.push_back(std::move(item));
    }
    root["repositories"] = std::move(rows);

    auto tab_json = [](const std::map<std::string, LevelCounts>& tab) {
        JsonValue object = JsonValue::object();
        for (const auto& [value, counts] : tab) {
            JsonValue cell = JsonValue::object();
            cell["full"] = counts[0];
            cell["mostly"] = counts[1];
            cell["partial"] = counts[2];
            cell["rare"] = counts[3];
            cell["total"] = counts[0] + counts[1] + counts[2] + counts[3];
            object[value] = std::move(cell);
        }
        return object;
    };
    JsonValue tabs = JsonValue::object();
    tabs["category"] = tab_json(summary.by_category);
    tabs["source"] = tab_json(summary.by_source);
    tabs["stars"] = tab_json(summary.by_star_bin);
    root["cross_tabs"] = std::move(tabs);

    JsonValue errors = JsonValue::array();
    for (const auto& [entry, message] : summary.load_errors) {
        JsonValue item = JsonValue::object();
        item["entry"] = entry;
        item["message"] = message;
        errors.push_back(std::move(item));
    }
    root["load_errors"] = std::move(errors);
    return root;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

std::string summary_csv(const CorpusSummary& summary) {
    std::ostringstream out;
    out << "dimension,value,full,mostly,partial,rare,total\n";
    auto emit_tab = [&](const std::string& dimension,
                        const std::map<std::string, LevelCounts>& tab,
                        const std::vector<std::string>& order) {
        auto emit_row = [&](const std::string& value, const LevelCounts& counts) {
            out << dimension << ',' << csv_field(value) << ',' << counts[0] << ',' << counts[1]
                << ',' << counts[2] << ',' << counts[3] << ','
                << counts[0] + counts[1] + counts[2] + counts[3] << "\n";
        };
        if (order.empty()) {
            for (const auto& [value, counts] : tab) emit_row(value, counts);
        } else {
            for (const auto& value : order) {
                auto it = tab.find(value);
                if (it != tab.end()) emit_row(value, it->second);
            }
        }
    };
    emit_tab("category", summary.by_category, {});
    emit_tab("source", summary.by_source, {});
    emit_tab("stars", summary.by_star_bin,
             {"0-9", "10-99", "100-999", "1000-9999", "10000+", "unknown"});
    return out.str();
}

std::string summary_markdown(const CorpusSummary& summary) {
    std::ostringstream out;
    out << "# Corpus summary\n\n";
    out << "- repositories analyzed: " << summary.total_analyzed << "\n";
    out << "- load errors: " << summary.load_errors.size() << "\n\n";
    auto table = [&](const std::string& title, const std::map<std::string, LevelCounts>& tab) {
        out << "## By " << title << "\n\n";
        out << "| " << title << " | full | mostly | partial | rare | total |\n";
        out << "|---|---|---|---|---|---|\n";
        for (const auto& [value, counts] : tab) {
            out << "| " << value << " | " << counts[0] << " | " << counts[1] << " | " << counts[2]
                << " | " << counts[3] << " | "
                << counts[0] + counts[1] + counts[2] + counts[3] << " |\n";
        }
        out << "\n";
    };
    table("category", summary.by_category);
    table("source", summary.by_source);
    table("stars", summary.by_star_bin);
    if (!summary.load_errors.empty()) {
        out << "## Load errors\n\n";
        for (const auto& [entry, message] : summary.load_errors)
            out << "- " << entry << ": " << message << "\n";
    }
    return out.str();
}

} // namespace

bool ConsistencyReport::has_flag_at_least(Severity severity) const {
    for (const auto& flag : flags) {
        if (severity == Severity::Medium || flag.severity == Severity::High) return true;
    }
    return false;
}

ConfigFingerprint fingerprint(const AnalysisConfig& config, const CapabilityLexicon& lexicon) {
    ConfigFingerprint print;
    print.analyzer = to_string(config.analyzer);
    print.match_threshold = config.match_threshold;
    print.lexicon_hash = hex64(lexicon.hash());
    print.max_depth = config.max_depth;
    print.max_chains_per_entry = config.max_chains_per_entry;
    return print;
}

std::string star_bin(std::optional<std::uint64_t> stars) {
    if (!stars) return "unknown";
    std::uint64_t n = *stars;
    if (n <= 9) return "0-9";
    if (n <= 99) return "10-99";
    if (n <= 999) return "100-999";
    if (n <= 9999) return "1000-9999";
    return "10000+";
}

ConsistencyReport analyze_repository(const Repository& repo, const AnalysisConfig& config) {
    CapabilityLexicon lexicon = config.lexicon_path.empty()
                                    ? CapabilityLexicon::builtin()
                                    : CapabilityLexicon::from_file(config.lexicon_path);
    RegistrationPatterns patterns = config.patterns_path.empty()
                                        ? RegistrationPatterns::builtin()
                                        : RegistrationPatterns::from_file(config.patterns_path);
    return analyze_repository(repo, config, lexicon, patterns);
}

ConsistencyReport analyze_repository(const Repository& repo, const AnalysisConfig& config,
                                     const CapabilityLexicon& lexicon,
                                     const RegistrationPatterns& patterns) {
    if (config.analyzer == AnalyzerKind::Llm && config.llm.url.empty())
        throw AuditError(ErrorKind::AnalyzerUnavailable,
                         "analyzer=llm requires MCPAUDIT_LLM_URL");

    // File order must not influence the result.
    Repository local = repo;
    std::sort(local.files.begin(), local.files.end(),
              [](const SourceFile& a, const SourceFile& b) {
                  return a.relative_path < b.relative_path;
              });

    ConsistencyReport report;
    report.repo_id = local.id;
    report.config = fingerprint(config, lexicon);

    // P-I: functions, edges, graph, chains.
    std::vector<FunctionNode> nodes;
    for (const auto& file : local.files) {
        if (file.kind != FileKind::Code) continue;
        ParseResult parsed = parse_functions(file);
        report.diagnostics.insert(report.diagnostics.end(), parsed.diagnostics.begin(),
                                  parsed.diagnostics.end());
        nodes.insert(nodes.end(), std::make_move_iterator(parsed.nodes.begin()),
                     std::make_move_iterator(parsed.nodes.end()));
    }
    std::vector<CallEdge> edges = resolve_call_edges(nodes);
    CallGraph graph = build_call_graph(std::move(nodes), std::move(edges));

    AnalyzerOptions options;
    options.kind = config.analyzer;
    options.lexicon = &lexicon;
    options.llm = &config.llm;

    // P-II, code side.
    std::vector<CodeFeature> code_features;
    for (const auto& entry : find_entry_functions(graph)) {
        ChainEnumeration chains =
            enumerate_call_chains(graph, entry, config.max_depth, config.max_chains_per_entry);
        if (chains.capped)
            report.diagnostics.push_back("chain_cap: " + entry + " exceeded " +
                                         std::to_string(config.max_chains_per_entry) +
                                         " chains");
        for (const auto& chain : chains.chains) {
            ChainContext context =
                render_chain_context(chain, graph, config.context_budget_bytes);
            if (context.truncated)
                report.diagnostics.push_back("context_truncated: " + entry);
            ChainAnalysis analysis = analyze_chain(context, graph, options);
            report.diagnostics.insert(report.diagnostics.end(), analysis.diagnostics.begin(),
                                      analysis.diagnostics.end());
            code_features.insert(code_features.end(),
                                 std::make_move_iterator(analysis.features.begin()),
                                 std::make_move_iterator(analysis.features.end()));
        }
    }
    report.code_features = dedup_code_features(std::move(code_features));

    // P-II, description side.
    ToolScan tools = extract_tool_descriptions(local, patterns);
    report.declared_features =
        collect_declared_features(local, tools.tools, extract_readme_features(local));
    for (auto& feature : report.declared_features)
        feature.categories = categorize_tokens(feature.tokens, lexicon);

    // P-III: embed, match, classify.
    std::vector<std::vector<std::string>> code_token_lists;
    for (const auto& feature : report.code_features) code_token_lists.push_back(feature.tokens);
    Vocabulary vocabulary = build_vocabulary(code_token_lists);
    std::vector<FeatureVector> code_vectors, declared_vectors;
    for (const auto& feature : report.code_features)
        code_vectors.push_back(embed(feature.tokens, vocabulary));
    for (const auto& feature : report.declared_features)
        declared_vectors.push_back(embed(feature.tokens, vocabulary));
    report.matching = match_features(code_vectors, declared_vectors, config.match_threshold);
    report.coverage_value =
        coverage(report.matching, static_cast<int>(report.code_features.size()));
    report.match_level = classify(report.coverage_value);

    report.flags = flag_risks(report.code_features, report.matching.uncovered_code);
    return report;
}

CorpusSummary run_corpus(const CorpusManifest& manifest, const AnalysisConfig& config) {
    CorpusSummary summary;
    for (const auto& error : manifest.row_errors)
        summary.load_errors.emplace_back("line " + std::to_string(error.line), error.message);

    std::vector<const ManifestEntry*> entries;
    for (const auto& entry : manifest.entries) entries.push_back(&entry);
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry* a, const ManifestEntry* b) { return a->id < b->id; });

    CapabilityLexicon lexicon = config.lexicon_path.empty()
                                    ? CapabilityLexicon::builtin()
                                    : CapabilityLexicon::from_file(config.lexicon_path);
    RegistrationPatterns patterns = config.patterns_path.empty()
                                        ? RegistrationPatterns::builtin()
                                        : RegistrationPatterns::from_file(config.patterns_path);

    struct Slot {
        bool ok = false;
        RepoSummaryRow row;
        std::string error;
    };
    std::vector<Slot> slots(entries.size());

    auto work = [&](std::size_t index) {
        const ManifestEntry& entry = *entries[index];
        Slot& slot = slots[index];
        try {
            Repository repo = scan_repository(entry.path, config.ingest);
            repo.id = entry.id;
            repo.category = entry.category;
            repo.stars = entry.stars;
            repo.source = entry.source;
            ConsistencyReport report = analyze_repository(repo, config, lexicon, patterns);
            slot.row.id = entry.id;
            slot.row.category = entry.category;
            slot.row.stars = entry.stars;
            slot.row.source = entry.source;
            slot.row.coverage_value = report.coverage_value;
            slot.row.match_level = report.match_level;
            for (const auto& flag : report.flags) {
                if (flag.severity == Severity::High)
                    slot.row.high_flags += 1;
                else
                    slot.row.medium_flags += 1;
            }
            slot.ok = true;
        } catch (const std::exception& error) {
            slot.error = error.what();
        }
    };

    int workers = std::max(1, config.workers);
    if (workers == 1 || entries.size() <= 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int count = std::min<std::size_t>(static_cast<std::size_t>(workers), entries.size());
        for (int t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t index = next.fetch_add(1);
                    if (index >= entries.size()) break;
                    work(index);
                }
            });
        }
        for (auto& thread : pool) thread.join();
    }

    // Deterministic fold in id order.
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Slot& slot = slots[i];
        if (!slot.ok) {
            summary.load_errors.emplace_back(entries[i]->id, slot.error);
            continue;
        }
        summary.rows.push_back(slot.row);
        summary.total_analyzed += 1;
        int cell = level_slot(slot.row.match_level);
        std::string category = slot.row.category.empty() ? "unknown" : slot.row.category;
        std::string source = slot.row.source.empty() ? "unknown" : slot.row.source;
        summary.by_category[category][static_cast<std::size_t>(cell)] += 1;
        summary.by_source[source][static_cast<std::size_t>(cell)] += 1;
        summary.by_star_bin[star_bin(slot.row.stars)][static_cast<std::size_t>(cell)] += 1;
    }
    return summary;
}

std::string render_report(const ConsistencyReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return report_json(report).dump();
        case ReportFormat::Markdown: return report_markdown(report);
        case ReportFormat::Csv:
            throw AuditError(ErrorKind::UsageError,
                             "csv output is only defined for corpus summaries");
    }
    return "";
}

std::string render_summary(const CorpusSummary& summary, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return summary_json(summary).dump();
        case ReportFormat::Csv: return summary_csv(summary);
        case ReportFormat::Markdown: return summary_markdown(summary);
    }
    return "";
}

void write_output(const std::string& text, const std::string& destination,
                  std::ostream& stdout_stream) {
    if (destination.empty() || destination == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out)
        throw AuditError(ErrorKind::DestinationUnwritable,
                         "cannot write to: " + destination);
    out << text;
    if (!out)
        throw AuditError(ErrorKind::DestinationUnwritable, "write failed: " + destination);
}

} // namespace mcpaudit
