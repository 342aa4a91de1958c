#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citeforensics/corpus.hpp"

namespace citeforensics {

struct SimilarityConfig {
    double threshold = 0.98;        // match requires similarity strictly above
    bool enable_length_prune = true;
};

/// Unit-cost edit distance.
int levenshtein_distance(std::string_view a, std::string_view b);

/// 1 - d(a,b) / max(|a|,|b|); defined as 1.0 when both strings are empty.
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Largest distance d such that 1 - d/max_len still exceeds the threshold
/// under double arithmetic; -1 when even d = 0 fails (threshold >= 1).
int max_distance_for_match(std::size_t max_len, double threshold);

/// Distance when it is <= limit, nullopt otherwise. Banded DP that abandons a
/// row once even its best cell exceeds the limit.
std::optional<int> bounded_distance(std::string_view a, std::string_view b, int limit);

/// levenshtein_similarity(a, b) > config.threshold, computed without the full
/// DP whenever the length difference alone rules a match out (and, within the
/// band, abandoning early). Pruning never changes the decision.
bool similar(std::string_view a, std::string_view b, const SimilarityConfig& config);

/// Weighted undirected graph over papers; an edge records how many
/// bibliography entries of the two papers fuzzy-match one another under
/// one-to-one matching.
struct RefMatchNetwork {
    struct Edge {
        int weight = 0;
        /// (bibliography index in the lexicographically smaller paper,
        ///  bibliography index in the larger), sorted.
        std::vector<std::pair<int, int>> matched_pairs;
    };

    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, Edge> edges;  // key: (min id, max id)
};

/// Builds the shared-reference network. Comparisons run on normalized
/// reference strings; entries whose normalized form is empty are skipped.
/// Deterministic for any input order and thread count. Throws
/// ValidationError on duplicate paper ids.
RefMatchNetwork build_network(const std::vector<PaperRecord>& papers,
                              const SimilarityConfig& config, int threads = 0);

/// Standard connected components (singletons included); component ids are
/// assigned by descending size, ties broken by smallest member paper id.
std::map<int, std::set<std::string>> connected_components(const RefMatchNetwork& network);

struct ClusterFinding {
    int component_id = 0;
    std::string author_id;
    long long mention_count = 0;             // references across the component
    std::vector<std::string> citing_paper_ids;  // sorted, >= 2 entries
    double consistency = 0.0;                // mean pairwise Jaccard of cited-work sets
};

/// Scans each component for authors referenced at least mention_threshold
/// times by at least two distinct papers. Consistency is 1.0 exactly when all
/// contributing papers cite the identical set of the author's works.
std::vector<ClusterFinding> scan_clusters(const Corpus& corpus,
                                          const RefMatchNetwork& network,
                                          const std::map<int, std::set<std::string>>& components,
                                          int mention_threshold);

}  // namespace citeforensics
