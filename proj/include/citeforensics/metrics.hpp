#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "citeforensics/corpus.hpp"

namespace citeforensics {

/// One citing paper's contribution to a target author: n is the number of
/// *distinct* papers by the author that this paper cites (duplicate
/// bibliography entries to the same work collapse).
struct CitingPaperCount {
    std::string citing_paper_id;
    int n = 0;
    bool is_self_citation = false;

    bool operator==(const CitingPaperCount&) const = default;
};

struct C2Summary {
    int c2_index = 0;
    double c2_percentage = 0.0;       // share of citations from qualifying papers
    double adjusted_c2 = 0.0;         // c2_index * c2_percentage
    long long total_citations = 0;    // sum of n over all retained citing papers

    bool operator==(const C2Summary&) const = default;
};

struct TrajectorySummary {
    int peak_year = 0;
    long long peak_value = 0;
    std::map<int, double> relative_series;  // offset (<= 0) -> count / peak
};

/// All papers citing the author at least once (n >= 1), sorted by citing
/// paper id. Throws LookupError for unknown authors.
std::vector<CitingPaperCount> citing_paper_counts(const Corpus& corpus,
                                                  const std::string& author_id);

/// Largest n such that at least n citing papers have count >= n.
int c2_index(const std::vector<CitingPaperCount>& counts, bool include_self);

C2Summary c2_summary(const std::vector<CitingPaperCount>& counts, bool include_self);

/// Sum of n over the top-k citing papers (by n, ties by paper id) divided by
/// the number of distinct works those papers cite. Equals k exactly in the
/// complete-bipartite case; 1.0 when the cited sets are disjoint. Throws
/// NotComputableError when the author has no citing papers.
double bipartite_concentration(const Corpus& corpus, const std::string& author_id, int k);

/// Peak citation year (earliest on ties) and the annual counts relative to
/// the peak for offsets -window..0; missing years count as zero. Throws
/// NotComputableError when the citation history is empty or all zero.
TrajectorySummary trajectory(const AuthorProfile& profile, int window);

/// 1 - count_b/count_a clamped to [0,1]. Throws NotComputableError when
/// count_a is zero.
double source_discrepancy(long long count_a, long long count_b);

/// Nearest-rank percentiles: the ceil(p/100 * N)-th order statistic, clamped
/// to [1, N]. Throws NotComputableError on empty input.
std::map<double, double> percentile_values(const std::vector<double>& values,
                                           const std::vector<double>& percentiles);

/// For each distinct value v in ascending order, the number of inputs >= v.
std::vector<std::pair<double, std::size_t>> ccdf(const std::vector<double>& values);

int h_index(const std::vector<long long>& per_paper_citations);

/// Citations received by each of the author's papers, counted as distinct
/// citing papers, ordered by the author's paper_ids (sorted).
std::vector<long long> per_paper_citation_counts(const Corpus& corpus,
                                                 const std::string& author_id);

}  // namespace citeforensics
