// SPDX-License-Identifier: Apache-2.0

// mcpaudit: audits MCP server repositories for gaps between declared tool
// descriptions/documentation and implemented behavior.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/grammars.hpp"
#include "mcpaudit/report.hpp"

namespace {

using namespace mcpaudit;

struct CommonOptions {
    std::string input;
    std::string output = "-";
    std::string format = "json";
    AnalysisConfig config;
};

void add_analysis_flags(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("-o,--output", options.output, "Destination path ('-' = standard output)")
        ->capture_default_str();
    cmd->add_option("--threshold", options.config.match_threshold,
                    "Similarity threshold for feature matching")
        ->check(CLI::Range(0.000001, 1.0))
        ->capture_default_str();
    cmd->add_option_function<std::string>(
           "--analyzer",
           [&options](const std::string& value) {
               options.config.analyzer =
                   value == "llm" ? AnalyzerKind::Llm : AnalyzerKind::Rule;
           },
           "Chain analyzer: rule | llm")
        ->check(CLI::IsMember({"rule", "llm"}))
        ->default_str("rule");
    cmd->add_option("--max-depth", options.config.max_depth, "Call-chain depth cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-chains", options.config.max_chains_per_entry,
                    "Chain count cap per entry function")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--context-budget", options.config.context_budget_bytes,
                    "Chain context byte budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--size-cap", options.config.ingest.size_cap_bytes,
                    "Per-file size cap in bytes")
        ->capture_default_str();
    cmd->add_option("--lexicon", options.config.lexicon_path,
                    "Capability lexicon file (default: builtin)");
    cmd->add_option("--patterns", options.config.patterns_path,
                    "Tool registration pattern file (default: builtin)");
    cmd->add_option("--workers", options.config.workers, "Corpus worker count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option_function<std::string>(
           "--fail-on",
           [&options](const std::string& value) {
               options.config.fail_on = value == "high"     ? FailOn::High
                                        : value == "medium" ? FailOn::Medium
                                                            : FailOn::None;
           },
           "Exit 3 when flags at or above this severity exist: none | medium | high")
        ->check(CLI::IsMember({"none", "medium", "high"}))
        ->default_str("none");
}

void read_llm_env(AnalysisConfig& config) {
    if (const char* url = std::getenv("MCPAUDIT_LLM_URL")) config.llm.url = url;
    if (const char* key = std::getenv("MCPAUDIT_LLM_KEY")) config.llm.key = key;
}

ReportFormat parse_format(const std::string& format) {
    if (format == "json") return ReportFormat::Json;
    if (format == "csv") return ReportFormat::Csv;
    if (format == "markdown" || format == "md") return ReportFormat::Markdown;
    throw AuditError(ErrorKind::UsageError, "unknown format: " + format);
}

int exit_code_for(const AuditError& error) {
    switch (error.kind()) {
        case ErrorKind::RootNotFound:
        case ErrorKind::RootNotReadable:
        case ErrorKind::ManifestNotFound:
        case ErrorKind::RepositoryUnreadable: return 2;
        default: return 1;
    }
}

int fail_on_exit(const ConsistencyReport& report, FailOn fail_on) {
    if (fail_on == FailOn::High && report.has_flag_at_least(Severity::High)) return 3;
    if (fail_on == FailOn::Medium && report.has_flag_at_least(Severity::Medium)) return 3;
    return 0;
}

int run_analyze(const CommonOptions& options) {
    Repository repo = scan_repository(options.input, options.config.ingest);
    ConsistencyReport report = analyze_repository(repo, options.config);
    write_output(render_report(report, parse_format(options.format)), options.output, std::cout);
    return fail_on_exit(report, options.config.fail_on);
}

int run_corpus_cmd(const CommonOptions& options) {
    CorpusManifest manifest = load_corpus_manifest(options.input);
    CorpusSummary summary = run_corpus(manifest, options.config);
    write_output(render_summary(summary, parse_format(options.format)), options.output,
                 std::cout);
    for (const auto& [entry, message] : summary.load_errors)
        std::cerr << "load error: " << entry << ": " << message << "\n";
    return 0;
}

int run_graph(const CommonOptions& options) {
    Repository repo = scan_repository(options.input, options.config.ingest);
    std::vector<FunctionNode> nodes;
    for (const auto& file : repo.files) {
        if (file.kind != FileKind::Code) continue;
        ParseResult parsed = parse_functions(file);
        for (const auto& diagnostic : parsed.diagnostics)
            std::cerr << diagnostic << "\n";
        nodes.insert(nodes.end(), std::make_move_iterator(parsed.nodes.begin()),
                     std::make_move_iterator(parsed.nodes.end()));
    }
    std::vector<CallEdge> edges = resolve_call_edges(nodes);
    CallGraph graph = build_call_graph(std::move(nodes), std::move(edges));
    write_output(dump_graph(graph), options.output, std::cout);
    return 0;
}

int run_features(const CommonOptions& options) {
    Repository repo = scan_repository(options.input, options.config.ingest);
    ConsistencyReport report = analyze_repository(repo, options.config);
    std::ostringstream out;
    for (const auto& feature : report.declared_features) {
        out << "declared\t" << to_string(feature.origin) << "\t" << feature.file << ":"
            << feature.line << "\t" << feature.text << "\n";
    }
    for (const auto& feature : report.code_features) {
        out << "code\t";
        bool first = true;
        for (auto category : feature.categories) {
            if (!first) out << ";";
            first = false;
            out << to_string(category);
        }
        out << "\t";
        if (!feature.evidence.empty())
            out << feature.evidence.front().fid << ":" << feature.evidence.front().line;
        out << "\t" << feature.text << "\n";
    }
    write_output(out.str(), options.output, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audits MCP server repositories for description/code inconsistencies"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file ([analyze]/[corpus] sections)");

    CommonOptions analyze_options, corpus_options, graph_options, features_options;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze one repository");
    analyze->add_option("repo", analyze_options.input, "Repository root directory")->required();
    analyze->add_option("--format", analyze_options.format, "json | markdown")
        ->check(CLI::IsMember({"json", "markdown", "md"}))
        ->capture_default_str();
    add_analysis_flags(analyze, analyze_options);

    CLI::App* corpus = app.add_subcommand("corpus", "Analyze a corpus manifest (csv)");
    corpus->add_option("manifest", corpus_options.input, "Corpus manifest path")->required();
    corpus->add_option("--format", corpus_options.format, "json | csv | markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown", "md"}))
        ->capture_default_str();
    add_analysis_flags(corpus, corpus_options);

    CLI::App* graph = app.add_subcommand("graph", "Dump the call graph (debug format)");
    graph->add_option("repo", graph_options.input, "Repository root directory")->required();
    graph->add_option("-o,--output", graph_options.output, "Destination path")
        ->capture_default_str();
    graph->add_option("--size-cap", graph_options.config.ingest.size_cap_bytes,
                      "Per-file size cap in bytes")
        ->capture_default_str();

    CLI::App* features = app.add_subcommand("features", "Dump declared and code features");
    features->add_option("repo", features_options.input, "Repository root directory")->required();
    features->add_option("-o,--output", features_options.output, "Destination path")
        ->capture_default_str();
    add_analysis_flags(features, features_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        int code = app.exit(error);
        return code == 0 ? 0 : 1; // --help exits 0, every usage error exits 1
    }

    try {
        if (*analyze) {
            read_llm_env(analyze_options.config);
            return run_analyze(analyze_options);
        }
        if (*corpus) {
            read_llm_env(corpus_options.config);
            return run_corpus_cmd(corpus_options);
        }
        if (*graph) return run_graph(graph_options);
        if (*features) {
            read_llm_env(features_options.config);
            return run_features(features_options);
        }
    } catch (const AuditError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 1;
}
