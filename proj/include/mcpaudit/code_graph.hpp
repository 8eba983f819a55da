// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcpaudit/ingest.hpp"

namespace mcpaudit {

struct CallSite {
    std::string name; // bare identifier or final attribute of a qualified call
    int line = 0;     // 1-based
};

struct FunctionNode {
    std::string fid; // "<relative_path>:<name>:<start_line>", unique per repo
    std::string name;
    Language language = Language::Unknown;
    std::string file;
    int start_line = 0;
    int end_line = 0;
    std::string signature;
    std::string body; // exact source slice of [start_line, end_line]
    std::vector<CallSite> call_sites;

    std::vector<std::string> callee_names() const;
};

struct CallEdge {
    std::string caller;
    std::string callee;
    int site_line = 0;

    friend auto operator<=>(const CallEdge&, const CallEdge&) = default;
};

struct CallGraph {
    std::vector<FunctionNode> nodes; // sorted by fid
    std::vector<CallEdge> edges;     // sorted, exact duplicates removed
    std::map<std::string, int> in_degree;

    // successor fids per node, sorted, parallel edges collapsed
    std::map<std::string, std::vector<std::string>> successors;

    const FunctionNode* find(const std::string& fid) const;
    bool empty() const { return nodes.empty(); }
};

struct CallChain {
    std::vector<std::string> path; // entry first, no fid repeats
    bool truncated = false;        // depth cap or cycle hit
};

struct ChainContext {
    CallChain chain;
    std::string text;
    bool truncated = false; // context byte budget hit
};

struct ParseResult {
    std::vector<FunctionNode> nodes;
    // soft failures; the repository analysis continues without this file
    std::vector<std::string> diagnostics;
};

struct ChainEnumeration {
    std::vector<CallChain> chains; // lexicographic path order
    bool capped = false;           // chain-count cap hit for this entry
};

/// Extracts one FunctionNode per function/method definition (nested
/// definitions included). A file whose text defeats the language's extractor
/// yields zero nodes plus a ParseFailure diagnostic; an unsupported language
/// yields an UnsupportedLanguage diagnostic. Never throws for file content.
ParseResult parse_functions(const SourceFile& file);

/// Name-based resolution: each call site fans out to every repository-local
/// node with a matching name (ambiguity becomes multiple edges); names with
/// no local match produce no edge.
std::vector<CallEdge> resolve_call_edges(const std::vector<FunctionNode>& nodes);

/// Assembles the graph and recomputes in-degrees. Input order does not affect
/// the result. Throws AuditError{DanglingEdge} if an edge endpoint is missing.
CallGraph build_call_graph(std::vector<FunctionNode> nodes, std::vector<CallEdge> edges);

/// Zero-in-degree fids sorted ascending; when the graph is non-empty but has
/// none (every node sits inside a cycle), falls back to the lexicographically
/// smallest fid of each source strongly-connected component.
std::vector<std::string> find_entry_functions(const CallGraph& graph);

/// All simple paths from `entry` that end at a node with no unvisited
/// successor, children visited in sorted fid order. A path whose tail would
/// revisit a fid stops there with truncated set; likewise when it reaches
/// `max_depth` nodes with unvisited successors remaining. At most
/// `max_chains` chains are kept (lexicographically first).
ChainEnumeration enumerate_call_chains(const CallGraph& graph, const std::string& entry,
                                       int max_depth, int max_chains = 256);

/// Deterministic concatenation (header + signature + body per member, path
/// order), capped at `budget_bytes` with tail truncation flagged.
/// Throws AuditError{MissingNode} if a chain member is not in the graph.
ChainContext render_chain_context(const CallChain& chain, const CallGraph& graph,
                                  std::size_t budget_bytes = 65536);

/// Debug dump: sorted `node <fid>` lines then sorted `edge <fid> <fid>` lines.
std::string dump_graph(const CallGraph& graph);

} // namespace mcpaudit
