// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace mcpaudit {

/// Sparse term-weight vector over the repository's feature vocabulary.
struct FeatureVector {
    std::map<std::string, double> weights; // token -> tf*idf, all >= 0

    bool zero() const { return weights.empty(); }
};

struct Vocabulary {
    std::map<std::string, double> idf; // deterministic token order
    int feature_count = 0;
};

struct MatchPair {
    int code_index = 0;
    int declared_index = 0;
    double similarity = 0.0; // >= the match threshold
};

struct Matching {
    std::vector<MatchPair> pairs;
    std::vector<int> uncovered_code;
    std::vector<int> uncovered_declared;
};

enum class MatchLevel { Rare, Partial, Mostly, Full }; // ascending order

const char* to_string(MatchLevel level);

/// idf(t) = ln((1 + N) / (1 + df(t))) + 1 over the given feature corpus
/// (N = feature count, df = features containing t).
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& features);

/// weight(t) = tf(t) * idf(t); tokens outside the vocabulary are ignored.
FeatureVector embed(const std::vector<std::string>& tokens, const Vocabulary& vocabulary);

/// Standard cosine in [0, 1]; zero if either vector is zero.
double cosine(const FeatureVector& a, const FeatureVector& b);

/// Each code feature pairs with its maximum-similarity declared feature when
/// that maximum reaches the threshold (many-to-one allowed; ties break to the
/// lowest declared index). The rest go to uncovered_code / uncovered_declared.
Matching match_features(const std::vector<FeatureVector>& code_features,
                        const std::vector<FeatureVector>& declared_features, double threshold);

/// |pairs| / code_feature_count; vacuously 1.0 for zero code features.
/// Uncovered declared features never enter the ratio.
double coverage(const Matching& matching, int code_feature_count);

/// Full at exactly 1.0; Mostly in [0.8, 1.0); Partial in [0.4, 0.8); Rare below.
MatchLevel classify(double coverage_value);

} // namespace mcpaudit
