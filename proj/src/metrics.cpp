#include "citeforensics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "citeforensics/errors.hpp"

namespace citeforensics {

std::vector<CitingPaperCount> citing_paper_counts(const Corpus& corpus,
                                                  const std::string& author_id) {
    std::vector<CitingPaperCount> out;
    for (const auto& st : corpus.citations_to(author_id)) {
        if (st.works.empty()) continue;  // references but no resolvable distinct work
        out.push_back({st.citing_paper_id, static_cast<int>(st.works.size()), st.is_self});
    }
    return out;
}

namespace {

std::vector<int> filtered_ns(const std::vector<CitingPaperCount>& counts,
                             bool include_self) {
    std::vector<int> ns;
    ns.reserve(counts.size());
    for (const auto& c : counts) {
        if (!include_self && c.is_self_citation) continue;
        ns.push_back(c.n);
    }
    return ns;
}

}  // namespace

int c2_index(const std::vector<CitingPaperCount>& counts, bool include_self) {
    std::vector<int> ns = filtered_ns(counts, include_self);
    std::sort(ns.begin(), ns.end(), std::greater<>());
    int c2 = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] >= static_cast<int>(i) + 1) {
            c2 = static_cast<int>(i) + 1;
        } else {
            break;
        }
    }
    return c2;
}

C2Summary c2_summary(const std::vector<CitingPaperCount>& counts, bool include_self) {
    C2Summary s;
    s.c2_index = c2_index(counts, include_self);
    long long qualifying = 0;
    long long total = 0;
    for (const auto& c : counts) {
        if (!include_self && c.is_self_citation) continue;
        total += c.n;
        if (s.c2_index > 0 && c.n >= s.c2_index) qualifying += c.n;
    }
    s.total_citations = total;
    if (s.c2_index > 0 && total > 0) {
        s.c2_percentage = static_cast<double>(qualifying) / static_cast<double>(total);
    }
    s.adjusted_c2 = static_cast<double>(s.c2_index) * s.c2_percentage;
    return s;
}

double bipartite_concentration(const Corpus& corpus, const std::string& author_id, int k) {
    if (k < 1) throw ArgumentError("bipartite_concentration: k must be >= 1");
    std::vector<const Corpus::CitingStats*> citing;
    for (const auto& st : corpus.citations_to(author_id)) {
        if (!st.works.empty()) citing.push_back(&st);
    }
    if (citing.empty()) {
        throw NotComputableError("bipartite_concentration: author " + author_id +
                                 " has no citing papers");
    }
    std::sort(citing.begin(), citing.end(), [](const auto* a, const auto* b) {
        if (a->works.size() != b->works.size()) return a->works.size() > b->works.size();
        return a->citing_paper_id < b->citing_paper_id;
    });
    if (static_cast<int>(citing.size()) > k) citing.resize(k);

    long long total_n = 0;
    std::set<std::string> cited_union;
    for (const auto* st : citing) {
        total_n += static_cast<long long>(st->works.size());
        cited_union.insert(st->works.begin(), st->works.end());
    }
    return static_cast<double>(total_n) / static_cast<double>(cited_union.size());
}

TrajectorySummary trajectory(const AuthorProfile& profile, int window) {
    if (window < 0) throw ArgumentError("trajectory: window must be >= 0");
    if (profile.annual_citations.empty()) {
        throw NotComputableError("trajectory: author " + profile.author_id +
                                 " has no citation history");
    }
    TrajectorySummary t;
    t.peak_value = -1;
    for (const auto& [year, count] : profile.annual_citations) {
        if (count > t.peak_value) {  // strictly greater: earliest year wins ties
            t.peak_value = count;
            t.peak_year = year;
        }
    }
    if (t.peak_value <= 0) {
        throw NotComputableError("trajectory: author " + profile.author_id +
                                 " has no peak (all counts zero)");
    }
    for (int offset = -window; offset <= 0; ++offset) {
        const auto it = profile.annual_citations.find(t.peak_year + offset);
        const long long count = it == profile.annual_citations.end() ? 0 : it->second;
        t.relative_series[offset] =
            static_cast<double>(count) / static_cast<double>(t.peak_value);
    }
    return t;
}

double source_discrepancy(long long count_a, long long count_b) {
    if (count_a <= 0) {
        throw NotComputableError("source_discrepancy: reference count must be positive");
    }
    if (count_b >= count_a) return 0.0;  // clamp: only drops are meaningful
    return static_cast<double>(count_a - count_b) / static_cast<double>(count_a);
}

std::map<double, double> percentile_values(const std::vector<double>& values,
                                           const std::vector<double>& percentiles) {
    if (values.empty()) throw NotComputableError("percentile_values: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::map<double, double> out;
    for (const double p : percentiles) {
        if (p < 0.0 || p > 100.0) {
            throw ArgumentError("percentile_values: percentile out of [0,100]");
        }
        auto rank = static_cast<std::ptrdiff_t>(std::ceil(p * n / 100.0));
        rank = std::clamp<std::ptrdiff_t>(rank, 1, sorted.size());
        out[p] = sorted[rank - 1];
    }
    return out;
}

std::vector<std::pair<double, std::size_t>> ccdf(const std::vector<double>& values) {
    if (values.empty()) throw NotComputableError("ccdf: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, std::size_t>> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.emplace_back(sorted[i], sorted.size() - i);  // count at or above
        i = j;
    }
    return out;
}

int h_index(const std::vector<long long>& per_paper_citations) {
    // Bucket-counting formulation (deliberately distinct from the sort-based
    // c2 scan; the two must agree on citing-count multisets).
    const std::size_t n = per_paper_citations.size();
    std::vector<std::size_t> buckets(n + 1, 0);
    for (const long long c : per_paper_citations) {
        const auto capped = static_cast<std::size_t>(
            std::min<long long>(std::max<long long>(c, 0), static_cast<long long>(n)));
        buckets[capped] += 1;
    }
    std::size_t at_or_above = 0;
    for (std::size_t h = n; h > 0; --h) {
        at_or_above += buckets[h];
        if (at_or_above >= h) return static_cast<int>(h);
    }
    return 0;
}

std::vector<long long> per_paper_citation_counts(const Corpus& corpus,
                                                 const std::string& author_id) {
    const AuthorProfile& profile = corpus.author(author_id);
    std::map<std::string, long long> citers;
    std::vector<std::string> papers = profile.paper_ids;
    std::sort(papers.begin(), papers.end());
    papers.erase(std::unique(papers.begin(), papers.end()), papers.end());
    for (const auto& pid : papers) citers[pid] = 0;
    for (const auto& st : corpus.citations_to(author_id)) {
        for (const auto& work : st.works) {
            const auto it = citers.find(work);
            if (it != citers.end()) it->second += 1;
        }
    }
    std::vector<long long> out;
    out.reserve(citers.size());
    for (const auto& [pid, count] : citers) out.push_back(count);
    return out;
}

}  // namespace citeforensics
