// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/code_graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/grammars.hpp"

namespace mcpaudit {

const GrammarAdapter* python_grammar();
const GrammarAdapter* javascript_grammar();
const GrammarAdapter* go_grammar();

const GrammarAdapter* grammar_for(Language language) {
    switch (language) {
        case Language::Python: return python_grammar();
        case Language::JavaScript:
        case Language::TypeScript: return javascript_grammar();
        case Language::Go: return go_grammar();
        default: return nullptr;
    }
}

std::vector<Language> supported_languages() {
    return {Language::Python, Language::JavaScript, Language::TypeScript, Language::Go};
}

std::vector<std::string> FunctionNode::callee_names() const {
    std::vector<std::string> names;
    names.reserve(call_sites.size());
    for (const auto& site : call_sites) names.push_back(site.name);
    return names;
}

const FunctionNode* CallGraph::find(const std::string& fid) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), fid,
                               [](const FunctionNode& n, const std::string& f) {
                                   return n.fid < f;
                               });
    return it != nodes.end() && it->fid == fid ? &*it : nullptr;
}

ParseResult parse_functions(const SourceFile& file) {
    const GrammarAdapter* grammar = grammar_for(file.language);
    if (!grammar) {
        ParseResult result;
        result.diagnostics.push_back("unsupported_language: " + file.relative_path + " (" +
                                     to_string(file.language) + ")");
        return result;
    }
    return grammar->parse(file);
}

std::vector<CallEdge> resolve_call_edges(const std::vector<FunctionNode>& nodes) {
    std::unordered_map<std::string, std::vector<const FunctionNode*>> by_name;
    for (const auto& node : nodes) by_name[node.name].push_back(&node);

    std::vector<CallEdge> edges;
    for (const auto& node : nodes) {
        for (const auto& site : node.call_sites) {
            auto it = by_name.find(site.name);
            if (it == by_name.end()) continue; // library/builtin call, no edge
            for (const FunctionNode* target : it->second) {
                edges.push_back({node.fid, target->fid, site.line});
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

CallGraph build_call_graph(std::vector<FunctionNode> nodes, std::vector<CallEdge> edges) {
    CallGraph graph;
    std::sort(nodes.begin(), nodes.end(),
              [](const FunctionNode& a, const FunctionNode& b) { return a.fid < b.fid; });
    graph.nodes = std::move(nodes);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    graph.edges = std::move(edges);

    for (const auto& node : graph.nodes) graph.in_degree[node.fid] = 0;
    for (const auto& edge : graph.edges) {
        if (!graph.find(edge.caller))
            throw AuditError(ErrorKind::DanglingEdge, "unknown caller: " + edge.caller);
        if (!graph.find(edge.callee))
            throw AuditError(ErrorKind::DanglingEdge, "unknown callee: " + edge.callee);
        graph.in_degree[edge.callee] += 1;
        graph.successors[edge.caller].push_back(edge.callee);
    }
    for (auto& [fid, succ] : graph.successors) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
    return graph;
}

namespace {

// Tarjan strongly-connected components, iterative to survive deep graphs.
struct SccResult {
    std::unordered_map<std::string, int> component; // fid -> scc id
    int count = 0;
};

SccResult tarjan_scc(const CallGraph& graph) {
    SccResult result;
    std::unordered_map<std::string, int> index, lowlink;
    std::unordered_set<std::string> on_stack;
    std::vector<std::string> stack;
    int next_index = 0;

    struct Frame {
        const std::string* fid;
        std::size_t child = 0;
    };

    static const std::vector<std::string> no_succ;
    auto succ_of = [&](const std::string& fid) -> const std::vector<std::string>& {
        auto it = graph.successors.find(fid);
        return it == graph.successors.end() ? no_succ : it->second;
    };

    for (const auto& root : graph.nodes) {
        if (index.count(root.fid)) continue;
        std::vector<Frame> frames;
        frames.push_back({&root.fid});
        index[root.fid] = lowlink[root.fid] = next_index++;
        stack.push_back(root.fid);
        on_stack.insert(root.fid);

        while (!frames.empty()) {
            Frame& frame = frames.back();
            const auto& succ = succ_of(*frame.fid);
            if (frame.child < succ.size()) {
                const std::string& next = succ[frame.child++];
                if (!index.count(next)) {
                    index[next] = lowlink[next] = next_index++;
                    stack.push_back(next);
                    on_stack.insert(next);
                    frames.push_back({&next});
                } else if (on_stack.count(next)) {
                    lowlink[*frame.fid] = std::min(lowlink[*frame.fid], index[next]);
                }
            } else {
                if (lowlink[*frame.fid] == index[*frame.fid]) {
                    int scc = result.count++;
                    while (true) {
                        std::string popped = stack.back();
                        stack.pop_back();
                        on_stack.erase(popped);
                        result.component[popped] = scc;
                        if (popped == *frame.fid) break;
                    }
                }
                std::string done = *frame.fid;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[*frames.back().fid] =
                        std::min(lowlink[*frames.back().fid], lowlink[done]);
            }
        }
    }
    return result;
}

} // namespace

std::vector<std::string> find_entry_functions(const CallGraph& graph) {
    std::vector<std::string> entries;
    for (const auto& node : graph.nodes) {
        if (graph.in_degree.at(node.fid) == 0) entries.push_back(node.fid);
    }
    if (!entries.empty() || graph.empty()) return entries; // nodes are sorted

    // Every node sits inside a cycle: pick the smallest fid of each source
    // SCC (no incoming edge from outside the component).
    SccResult scc = tarjan_scc(graph);
    std::vector<bool> has_external_in(static_cast<std::size_t>(scc.count), false);
    for (const auto& edge : graph.edges) {
        int from = scc.component.at(edge.caller);
        int to = scc.component.at(edge.callee);
        if (from != to) has_external_in[static_cast<std::size_t>(to)] = true;
    }
    std::vector<std::string> representative(static_cast<std::size_t>(scc.count));
    for (const auto& node : graph.nodes) {
        auto id = static_cast<std::size_t>(scc.component.at(node.fid));
        if (representative[id].empty() || node.fid < representative[id])
            representative[id] = node.fid;
    }
    for (std::size_t id = 0; id < representative.size(); ++id) {
        if (!has_external_in[id]) entries.push_back(representative[id]);
    }
    std::sort(entries.begin(), entries.end());
    return entries;
}

ChainEnumeration enumerate_call_chains(const CallGraph& graph, const std::string& entry,
                                       int max_depth, int max_chains) {
    ChainEnumeration result;
    if (!graph.find(entry))
        throw AuditError(ErrorKind::MissingNode, "entry not in graph: " + entry);

    static const std::vector<std::string> no_succ;
    auto succ_of = [&](const std::string& fid) -> const std::vector<std::string>& {
        auto it = graph.successors.find(fid);
        return it == graph.successors.end() ? no_succ : it->second;
    };

    std::vector<std::string> path{entry};
    std::unordered_set<std::string> on_path{entry};

    // Children visited in sorted fid order, so emission order is the
    // lexicographic order of fid sequences.
    std::function<void()> dfs = [&]() {
        if (static_cast<int>(result.chains.size()) >= max_chains) {
            result.capped = true;
            return;
        }
        const auto& succ = succ_of(path.back());
        std::vector<const std::string*> unvisited;
        bool cycle_hit = false;
        for (const auto& next : succ) {
            if (on_path.count(next))
                cycle_hit = true;
            else
                unvisited.push_back(&next);
        }
        if (unvisited.empty()) {
            result.chains.push_back({path, cycle_hit});
            return;
        }
        if (static_cast<int>(path.size()) >= max_depth) {
            result.chains.push_back({path, true});
            return;
        }
        for (const std::string* next : unvisited) {
            if (static_cast<int>(result.chains.size()) >= max_chains) {
                result.capped = true;
                return;
            }
            path.push_back(*next);
            on_path.insert(*next);
            dfs();
            on_path.erase(*next);
            path.pop_back();
        }
    };
    dfs();
    return result;
}

ChainContext render_chain_context(const CallChain& chain, const CallGraph& graph,
                                  std::size_t budget_bytes) {
    ChainContext context;
    context.chain = chain;
    std::string text;
    for (const auto& fid : chain.path) {
        const FunctionNode* node = graph.find(fid);
        if (!node) throw AuditError(ErrorKind::MissingNode, "chain member missing: " + fid);
        text += "## " + fid + "\n";
        text += node->signature;
        text += "\n";
        text += node->body;
        text += "\n";
    }
    if (text.size() > budget_bytes) {
        // Cut at the budget, backing up over a split UTF-8 sequence.
        std::size_t cut = budget_bytes;
        while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
        text.resize(cut);
        context.truncated = true;
    }
    context.text = std::move(text);
    return context;
}

std::string dump_graph(const CallGraph& graph) {
    std::ostringstream out;
    for (const auto& node : graph.nodes) out << "node " << node.fid << "\n";
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& edge : graph.edges) pairs.emplace_back(edge.caller, edge.callee);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [caller, callee] : pairs) out << "edge " << caller << " " << callee << "\n";
    return out.str();
}

} // namespace mcpaudit
