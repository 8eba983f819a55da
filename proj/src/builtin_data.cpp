// SPDX-License-Identifier: Apache-2.0

// Frozen builtin copies of the shipped data files (data/lexicon.tsv,
// data/registration_patterns.tsv, data/prompts/chain_analysis.txt). Golden
// tests pin these; the CLI can override each with --lexicon / --patterns.

#include "mcpaudit/declarations.hpp"
#include "mcpaudit/semantics.hpp"

namespace mcpaudit {

namespace {

struct BuiltinLexiconRow {
    const char* pattern;
    const char* category;
    const char* phrase_template;
};

// clang-format off
constexpr BuiltinLexiconRow kLexicon[] = {
    {"kill",        "process_control", "terminates processes ({token})"},
    {"killtree",    "process_control", "terminates a process tree ({token})"},
    {"pkill",       "process_control", "terminates processes by name ({token})"},
    {"taskkill",    "process_control", "terminates processes ({token})"},
    {"terminate",   "process_control", "terminates a running process ({token})"},
    {"sigkill",     "process_control", "sends a kill signal ({token})"},
    {"sigterm",     "process_control", "sends a termination signal ({token})"},
    {"reboot",      "process_control", "reboots the host system ({token})"},
    {"shutdown",    "process_control", "shuts down the host system ({token})"},
    {"ptrace",      "process_control", "attaches to another process ({token})"},
    {"eval",        "code_execution",  "evaluates dynamic code ({token})"},
    {"exec",        "code_execution",  "executes a system command ({token})"},
    {"spawn",       "code_execution",  "spawns an external process ({token})"},
    {"popen",       "code_execution",  "runs a shell pipeline ({token})"},
    {"subprocess",  "code_execution",  "launches a subprocess ({token})"},
    {"system",      "code_execution",  "runs a shell command ({token})"},
    {"shell",       "code_execution",  "invokes a shell ({token})"},
    {"read",        "file_read",       "reads files or local data ({token})"},
    {"readdir",     "file_read",       "lists directory contents ({token})"},
    {"listdir",     "file_read",       "lists directory contents ({token})"},
    {"scandir",     "file_read",       "lists directory contents ({token})"},
    {"write",       "file_write",      "writes files or local data ({token})"},
    {"unlink",      "file_write",      "deletes files ({token})"},
    {"rmdir",       "file_write",      "removes directories ({token})"},
    {"mkdir",       "file_write",      "creates directories ({token})"},
    {"chmod",       "file_write",      "changes file permissions ({token})"},
    {"chown",       "file_write",      "changes file ownership ({token})"},
    {"rename",      "file_write",      "renames or moves files ({token})"},
    {"truncate",    "file_write",      "truncates files ({token})"},
    {"rimraf",      "file_write",      "recursively deletes files ({token})"},
    {"remove",      "file_write",      "removes files or entries ({token})"},
    {"delete file", "file_write",      "deletes files ({token})"},
    {"fetch",       "network_egress",  "performs network requests ({token})"},
    {"request",     "network_egress",  "performs network requests ({token})"},
    {"curl",        "network_egress",  "transfers data over the network ({token})"},
    {"wget",        "network_egress",  "downloads remote content ({token})"},
    {"urlopen",     "network_egress",  "opens remote urls ({token})"},
    {"http",        "network_egress",  "talks to http endpoints ({token})"},
    {"socket",      "network_egress",  "opens network sockets ({token})"},
    {"websocket",   "network_egress",  "opens websocket connections ({token})"},
    {"axios",       "network_egress",  "performs network requests ({token})"},
    {"upload",      "network_egress",  "uploads data to a remote service ({token})"},
    {"download",    "network_egress",  "downloads remote content ({token})"},
    {"select",      "database_read",   "reads records from a database ({token})"},
    {"query",       "database_read",   "queries records from a database ({token})"},
    {"insert",      "database_write",  "inserts records into a database ({token})"},
    {"update",      "database_write",  "updates records in a data store ({token})"},
    {"delete",      "database_write",  "deletes records from a data store ({token})"},
    {"drop",        "database_write",  "drops database objects ({token})"},
    {"upsert",      "database_write",  "writes records into a database ({token})"},
    {"alter",       "database_write",  "alters database schema ({token})"},
    {"order",       "financial_transaction", "places or manages trading orders ({token})"},
    {"trade",       "financial_transaction", "executes trades ({token})"},
    {"payment",     "financial_transaction", "processes payments ({token})"},
    {"pay",         "financial_transaction", "processes payments ({token})"},
    {"purchase",    "financial_transaction", "makes purchases ({token})"},
    {"refund",      "financial_transaction", "issues refunds ({token})"},
    {"invoice",     "financial_transaction", "manages invoices ({token})"},
    {"billing",     "financial_transaction", "manages billing ({token})"},
    {"withdraw",    "financial_transaction", "withdraws funds ({token})"},
    {"deposit",     "financial_transaction", "deposits funds ({token})"},
    {"transaction", "financial_transaction", "executes transactions ({token})"},
    {"checkout",    "financial_transaction", "performs checkout ({token})"},
    {"wallet",      "financial_transaction", "accesses a wallet ({token})"},
    {"sell",        "financial_transaction", "sells assets ({token})"},
    {"buy",         "financial_transaction", "buys assets ({token})"},
    {"password",    "auth_or_user_data_mutation", "handles passwords or credentials ({token})"},
    {"credential",  "auth_or_user_data_mutation", "handles credentials ({token})"},
    {"auth",        "auth_or_user_data_mutation", "performs authentication actions ({token})"},
    {"login",       "auth_or_user_data_mutation", "performs login actions ({token})"},
    {"logout",      "auth_or_user_data_mutation", "performs logout actions ({token})"},
    {"grant",       "auth_or_user_data_mutation", "grants permissions ({token})"},
    {"revoke",      "auth_or_user_data_mutation", "revokes permissions ({token})"},
    {"permission",  "auth_or_user_data_mutation", "modifies permissions ({token})"},
    {"privilege",   "auth_or_user_data_mutation", "modifies privileges ({token})"},
    {"secret",      "auth_or_user_data_mutation", "handles secrets ({token})"},
    {"passwd",      "auth_or_user_data_mutation", "modifies system passwords ({token})"},
    {"update user", "auth_or_user_data_mutation", "modifies user account data ({token})"},
    {"delete user", "auth_or_user_data_mutation", "deletes user account data ({token})"},
    {"create user", "auth_or_user_data_mutation", "creates user accounts ({token})"},
    {"api key",     "auth_or_user_data_mutation", "handles api keys ({token})"},
};

struct BuiltinPatternRow {
    const char* language;
    const char* kind;
    const char* pattern;
};

constexpr BuiltinPatternRow kPatterns[] = {
    {"python",     "decorator", R"(^\s*@\s*[A-Za-z_][\w.]*\.tool\b)"},
    {"python",     "decorator", R"(^\s*@\s*tool\b)"},
    {"python",     "call",      R"(\.add_tool\s*\()"},
    {"javascript", "call",      R"(\.(tool|registerTool)\s*\()"},
    {"typescript", "call",      R"(\.(tool|registerTool)\s*\()"},
    {"go",         "call",      R"(\bNewTool\s*\()"},
};
// clang-format on

const char* kPromptTemplate =
    "You are auditing the implementation of an MCP server tool.\n"
    "Below is one complete call chain (entry function first). List every\n"
    "behavior it performs, one per line, in the form:\n"
    "\n"
    "category | feature phrase\n"
    "\n"
    "Allowed categories: process_control, code_execution, file_read,\n"
    "file_write, network_egress, database_read, database_write,\n"
    "financial_transaction, auth_or_user_data_mutation, benign.\n"
    "\n"
    "Use a short verb phrase for each feature. Output nothing else.\n"
    "\n"
    "Call chain:\n"
    "{context}\n";

} // namespace

std::string builtin_lexicon_text() {
    std::string out;
    for (const auto& row : kLexicon) {
        out += row.pattern;
        out += '\t';
        out += row.category;
        out += '\t';
        out += row.phrase_template;
        out += '\n';
    }
    return out;
}

CapabilityLexicon CapabilityLexicon::builtin() {
    static const CapabilityLexicon lexicon = CapabilityLexicon::parse(builtin_lexicon_text());
    return lexicon;
}

std::string builtin_patterns_text() {
    std::string out;
    for (const auto& row : kPatterns) {
        out += row.language;
        out += '\t';
        out += row.kind;
        out += '\t';
        out += row.pattern;
        out += '\n';
    }
    return out;
}

RegistrationPatterns RegistrationPatterns::builtin() {
    return RegistrationPatterns::parse(builtin_patterns_text());
}

const char* builtin_prompt_template() { return kPromptTemplate; }

} // namespace mcpaudit
