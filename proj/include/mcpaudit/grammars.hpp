// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mcpaudit/code_graph.hpp"

namespace mcpaudit {

/// Uniform seam between the call-graph builder and per-language function
/// extractors. Additional grammars plug in by extending the registry in
/// grammar_registry.cpp.
class GrammarAdapter {
public:
    virtual ~GrammarAdapter() = default;
    virtual ParseResult parse(const SourceFile& file) const = 0;
};

/// nullptr when the language has no registered grammar.
const GrammarAdapter* grammar_for(Language language);

std::vector<Language> supported_languages();

} // namespace mcpaudit
