// SPDX-License-Identifier: Apache-2.0
#include <condition_variable>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "mcpaudit/errors.hpp"
#include "mcpaudit/semantics.hpp"
#include "mcpaudit/text.hpp"

namespace mcpaudit {

namespace {

struct ParsedUrl {
    std::string host_port; // "host:port" form accepted by httplib::Client
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    std::string prefix = "http://";
    std::string no_scheme = url;
    auto scheme_end = url.find("://");
    if (scheme_end != std::string::npos) {
        std::string scheme = url.substr(0, scheme_end);
        if (scheme != "http" && scheme != "https")
            throw AuditError(ErrorKind::AnalyzerUnavailable, "unsupported url scheme: " + scheme);
        prefix = url.substr(0, scheme_end + 3);
        no_scheme = url.substr(scheme_end + 3);
    }
    ParsedUrl parsed;
    auto slash = no_scheme.find('/');
    parsed.host_port =
        prefix + (slash == std::string::npos ? no_scheme : no_scheme.substr(0, slash));
    parsed.path = slash == std::string::npos ? "/" : no_scheme.substr(slash);
    return parsed;
}

// Process-wide limit on in-flight LLM requests.
class RequestGate {
public:
    explicit RequestGate(int limit) : limit_(limit < 1 ? 1 : limit) {
        std::unique_lock lock(mutex());
        cv().wait(lock, [&] { return active() < limit_; });
        ++active();
    }
    ~RequestGate() {
        {
            std::lock_guard lock(mutex());
            --active();
        }
        cv().notify_one();
    }

private:
    static std::mutex& mutex() {
        static std::mutex m;
        return m;
    }
    static std::condition_variable& cv() {
        static std::condition_variable c;
        return c;
    }
    static int& active() {
        static int n = 0;
        return n;
    }
    int limit_;
};

std::vector<CodeFeature> parse_response(const std::string& body, const ChainContext& context) {
    std::vector<CodeFeature> features;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t end = body.find('\n', start);
        std::string line = body.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? body.size() + 1 : end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        auto bar = line.find('|');
        if (bar == std::string::npos) continue;
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string category_name = strip(line.substr(0, bar));
        std::string phrase = strip(line.substr(bar + 1));
        auto category = parse_category(category_name);
        if (!category || phrase.empty()) continue;

        CodeFeature feature;
        feature.text = phrase;
        feature.tokens = normalize_feature(phrase);
        feature.categories = {*category};
        feature.chain = context.chain.path;
        features.push_back(std::move(feature));
    }
    return features;
}

} // namespace

std::vector<CodeFeature> llm_analyze(const ChainContext& context, const LlmConfig& config) {
    if (config.url.empty())
        throw AuditError(ErrorKind::AnalyzerUnavailable, "llm endpoint not configured");

    std::string prompt_template =
        config.prompt_template.empty() ? builtin_prompt_template() : config.prompt_template;
    std::string prompt = prompt_template;
    std::size_t slot = prompt.find("{context}");
    if (slot != std::string::npos) prompt.replace(slot, 9, context.text);

    nlohmann::json request = {{"prompt", prompt}, {"max_tokens", config.max_tokens}};
    std::string request_body = request.dump();

    ParsedUrl url = parse_url(config.url);
    httplib::Client client(url.host_port);
    client.set_connection_timeout(0, config.timeout_ms * 1000);
    client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
    httplib::Headers headers;
    if (!config.key.empty()) headers.emplace("Authorization", "Bearer " + config.key);

    for (int attempt = 0; attempt < 2; ++attempt) {
        RequestGate gate(config.max_concurrency);
        auto response = client.Post(url.path, headers, request_body, "application/json");
        if (!response)
            throw AuditError(ErrorKind::EndpointUnreachable,
                             "llm endpoint unreachable: " + config.url + " (" +
                                 httplib::to_string(response.error()) + ")");
        if (response->status != 200)
            throw AuditError(ErrorKind::EndpointUnreachable,
                             "llm endpoint returned status " + std::to_string(response->status));
        auto features = parse_response(response->body, context);
        if (!features.empty()) return features;
    }
    throw AuditError(ErrorKind::ResponseUnparseable,
                     "llm response contained no `category | phrase` lines after retry");
}

} // namespace mcpaudit
