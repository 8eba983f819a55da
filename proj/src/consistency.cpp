// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/consistency.hpp"

#include <cmath>
#include <set>

namespace mcpaudit {

const char* to_string(MatchLevel level) {
    switch (level) {
        case MatchLevel::Full: return "full";
        case MatchLevel::Mostly: return "mostly";
        case MatchLevel::Partial: return "partial";
        case MatchLevel::Rare: return "rare";
    }
    return "rare";
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& features) {
    Vocabulary vocabulary;
    vocabulary.feature_count = static_cast<int>(features.size());
    std::map<std::string, int> df;
    for (const auto& tokens : features) {
        std::set<std::string> unique(tokens.begin(), tokens.end());
        for (const auto& token : unique) df[token] += 1;
    }
    double n = static_cast<double>(vocabulary.feature_count);
    for (const auto& [token, count] : df) {
        vocabulary.idf[token] = std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0;
    }
    return vocabulary;
}

FeatureVector embed(const std::vector<std::string>& tokens, const Vocabulary& vocabulary) {
    FeatureVector vector;
    std::map<std::string, int> tf;
    for (const auto& token : tokens) tf[token] += 1;
    for (const auto& [token, count] : tf) {
        auto it = vocabulary.idf.find(token);
        if (it == vocabulary.idf.end()) continue;
        vector.weights[token] = static_cast<double>(count) * it->second;
    }
    return vector;
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
    if (a.zero() || b.zero()) return 0.0;
    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    auto ia = a.weights.begin();
    auto ib = b.weights.begin();
    while (ia != a.weights.end() && ib != b.weights.end()) {
        if (ia->first < ib->first) {
            norm_a += ia->second * ia->second;
            ++ia;
        } else if (ib->first < ia->first) {
            norm_b += ib->second * ib->second;
            ++ib;
        } else {
            dot += ia->second * ib->second;
            norm_a += ia->second * ia->second;
            norm_b += ib->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    for (; ia != a.weights.end(); ++ia) norm_a += ia->second * ia->second;
    for (; ib != b.weights.end(); ++ib) norm_b += ib->second * ib->second;
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    double value = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    if (value < 0.0) return 0.0;
    return value > 1.0 ? 1.0 : value;
}

Matching match_features(const std::vector<FeatureVector>& code_features,
                        const std::vector<FeatureVector>& declared_features, double threshold) {
    Matching matching;
    std::set<int> matched_declared;
    for (int ci = 0; ci < static_cast<int>(code_features.size()); ++ci) {
        double best = -1.0;
        int best_declared = -1;
        for (int di = 0; di < static_cast<int>(declared_features.size()); ++di) {
            double similarity = cosine(code_features[static_cast<std::size_t>(ci)],
                                       declared_features[static_cast<std::size_t>(di)]);
            if (similarity > best) { // strict: ties keep the lowest index
                best = similarity;
                best_declared = di;
            }
        }
        if (best_declared >= 0 && best >= threshold) {
            matching.pairs.push_back({ci, best_declared, best});
            matched_declared.insert(best_declared);
        } else {
            matching.uncovered_code.push_back(ci);
        }
    }
    for (int di = 0; di < static_cast<int>(declared_features.size()); ++di) {
        if (!matched_declared.count(di)) matching.uncovered_declared.push_back(di);
    }
    return matching;
}

double coverage(const Matching& matching, int code_feature_count) {
    if (code_feature_count == 0) return 1.0; // an empty tool surface hides nothing
    return static_cast<double>(matching.pairs.size()) / static_cast<double>(code_feature_count);
}

MatchLevel classify(double coverage_value) {
    if (coverage_value >= 1.0) return MatchLevel::Full;
    if (coverage_value >= 0.8) return MatchLevel::Mostly;
    if (coverage_value >= 0.4) return MatchLevel::Partial;
    return MatchLevel::Rare;
}

} // namespace mcpaudit
