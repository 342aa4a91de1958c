#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citeforensics/corpus.hpp"
#include "citeforensics/metrics.hpp"

namespace citeforensics {

/// Gates for the citation-spike filter. Defaults target flagrant spikes and
/// remain configurable, since fitting thresholds depends on the
/// collection at hand.
struct SpikeFilterConfig {
    long long min_total_citations = 200;
    int min_publications = 10;
    double min_yoy_ratio = 10.0;
    double min_share_of_total = 0.25;
};

struct SpikeFlag {
    std::string author_id;
    int spike_year = 0;
    /// Year-over-year ratio; nullopt marks an infinite ratio (previous year
    /// had zero citations).
    std::optional<double> yoy_ratio;
    double share_of_total = 0.0;
};

struct CitingPaperForensics {
    std::string citing_paper_id;
    int refs_to_author = 0;  // bibliography entries, duplicates included
    int total_refs = 0;
    double share_of_bibliography = 0.0;
    std::optional<double> refs_per_page;  // absent when page_count is missing
    std::optional<double> orphan_share;   // absent when main_text_cited is missing
};

struct MatchCriteria {
    int birth_year_tolerance = 5;
    double pub_count_rel_tolerance = 0.5;
    double citation_rel_tolerance = 0.5;
    bool require_shared_keyword = true;
};

/// Earliest year passing all four gates, or nullopt. A year whose previous
/// year had zero citations qualifies (with an infinite-ratio marker) when the
/// current count is at least min_yoy_ratio.
std::optional<SpikeFlag> spike_filter(const AuthorProfile& profile,
                                      const SpikeFilterConfig& config);

/// Per-citing-paper reference statistics for one author. Throws LookupError
/// for unknown ids and ArgumentError when the paper does not cite the author.
CitingPaperForensics citing_paper_forensics(const Corpus& corpus,
                                            const std::string& author_id,
                                            const std::string& citing_paper_id);

/// Citing papers ordered by refs_to_author descending, ties by paper id.
/// May return fewer than k.
std::vector<std::string> top_citing_papers(const Corpus& corpus,
                                           const std::string& author_id, int k);

/// Year of the author's first publication: first_pub_year when present,
/// otherwise the minimum year over their listed papers.
std::optional<int> academic_birth_year(const Corpus& corpus, const AuthorProfile& profile);

/// Closest comparison author under the gates and normalized distance, or
/// nullopt when no candidate passes.
std::optional<std::string> find_matched_author(const Corpus& corpus,
                                               const std::string& target_id,
                                               const MatchCriteria& criteria);

struct FlagEvidence {
    std::string author_id;
    SpikeFlag spike;
    std::vector<CitingPaperCount> qualifying;  // non-self, n >= threshold
    C2Summary c2;                              // computed excluding self-citations
};

/// The full irregularity pipeline: authors passing the spike filter that also
/// have at least one non-self citing paper with n >= n_threshold. Output is
/// sorted by author_id.
std::vector<FlagEvidence> flag_suspicious(const Corpus& corpus,
                                          const SpikeFilterConfig& config,
                                          int n_threshold);

}  // namespace citeforensics
