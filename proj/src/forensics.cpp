#include "citeforensics/forensics.hpp"

#include <algorithm>
#include <cmath>

#include "citeforensics/errors.hpp"

namespace citeforensics {

std::optional<SpikeFlag> spike_filter(const AuthorProfile& profile,
                                      const SpikeFilterConfig& config) {
    const long long total = profile.total_annual_citations();
    if (total < config.min_total_citations) return std::nullopt;
    if (static_cast<int>(profile.paper_ids.size()) < config.min_publications) {
        return std::nullopt;
    }
    if (total <= 0) return std::nullopt;

    const int first_year = profile.annual_citations.begin()->first;
    for (const auto& [year, current] : profile.annual_citations) {
        if (current <= 0) continue;
        // The first recorded year has no previous year to compare against;
        // a career can only spike once a history exists. Missing years inside
        // the recorded span count as zero.
        if (year == first_year) continue;
        const auto prev_it = profile.annual_citations.find(year - 1);
        const long long prev =
            prev_it == profile.annual_citations.end() ? 0 : prev_it->second;
        bool ratio_ok;
        std::optional<double> ratio;
        if (prev > 0) {
            ratio = static_cast<double>(current) / static_cast<double>(prev);
            ratio_ok = *ratio >= config.min_yoy_ratio;
        } else {
            // Zero-to-positive transition: infinite ratio, qualifies once the
            // jump itself reaches the ratio threshold.
            ratio_ok = static_cast<double>(current) >= config.min_yoy_ratio;
        }
        const double share = static_cast<double>(current) / static_cast<double>(total);
        if (ratio_ok && share >= config.min_share_of_total) {
            return SpikeFlag{profile.author_id, year, ratio, share};
        }
    }
    return std::nullopt;
}

CitingPaperForensics citing_paper_forensics(const Corpus& corpus,
                                            const std::string& author_id,
                                            const std::string& citing_paper_id) {
    const PaperRecord& citing = corpus.paper(citing_paper_id);
    const std::vector<int> author_entries = corpus.entries_to_author(citing_paper_id, author_id);
    if (author_entries.empty()) {
        throw ArgumentError("citing paper \"" + citing_paper_id +
                            "\" does not cite author \"" + author_id + "\"");
    }

    CitingPaperForensics f;
    f.citing_paper_id = citing_paper_id;
    f.refs_to_author = static_cast<int>(author_entries.size());
    f.total_refs = static_cast<int>(citing.bibliography.size());
    f.share_of_bibliography =
        static_cast<double>(f.refs_to_author) / static_cast<double>(f.total_refs);
    if (citing.page_count) {
        f.refs_per_page =
            static_cast<double>(f.refs_to_author) / static_cast<double>(*citing.page_count);
    }
    if (citing.main_text_cited) {
        int orphans = 0;
        for (const int idx : author_entries) {
            if (!citing.main_text_cited->count(idx)) ++orphans;
        }
        f.orphan_share =
            static_cast<double>(orphans) / static_cast<double>(f.refs_to_author);
    }
    return f;
}

std::vector<std::string> top_citing_papers(const Corpus& corpus,
                                           const std::string& author_id, int k) {
    if (k < 1) throw ArgumentError("top_citing_papers: k must be >= 1");
    const auto& stats = corpus.citations_to(author_id);
    std::vector<const Corpus::CitingStats*> ptrs;
    ptrs.reserve(stats.size());
    for (const auto& st : stats) ptrs.push_back(&st);
    std::sort(ptrs.begin(), ptrs.end(), [](const auto* a, const auto* b) {
        if (a->refs != b->refs) return a->refs > b->refs;
        return a->citing_paper_id < b->citing_paper_id;
    });
    if (static_cast<int>(ptrs.size()) > k) ptrs.resize(k);
    std::vector<std::string> out;
    out.reserve(ptrs.size());
    for (const auto* st : ptrs) out.push_back(st->citing_paper_id);
    return out;
}

std::optional<int> academic_birth_year(const Corpus& corpus, const AuthorProfile& profile) {
    if (profile.first_pub_year) return profile.first_pub_year;
    std::optional<int> year;
    for (const auto& pid : profile.paper_ids) {
        const int y = corpus.paper(pid).year;
        if (!year || y < *year) year = y;
    }
    return year;
}

std::optional<std::string> find_matched_author(const Corpus& corpus,
                                               const std::string& target_id,
                                               const MatchCriteria& criteria) {
    const AuthorProfile& target = corpus.author(target_id);
    const auto target_by = academic_birth_year(corpus, target);
    const auto target_pubs = static_cast<long long>(target.paper_ids.size());
    const long long target_cites = target.total_annual_citations();

    const auto log_gap = [](long long a, long long b) {
        return std::abs(std::log1p(static_cast<double>(a)) -
                        std::log1p(static_cast<double>(b)));
    };

    std::optional<std::string> best;
    double best_distance = 0.0;
    for (const auto& cand : corpus.authors()) {
        if (cand.author_id == target_id) continue;

        if (criteria.require_shared_keyword) {
            const bool shared = std::any_of(
                cand.interests.begin(), cand.interests.end(), [&](const std::string& kw) {
                    return std::find(target.interests.begin(), target.interests.end(), kw) !=
                           target.interests.end();
                });
            if (!shared) continue;
        }

        double distance = 0.0;
        const auto cand_by = academic_birth_year(corpus, cand);
        if (target_by && cand_by) {
            const int gap = std::abs(*target_by - *cand_by);
            if (gap > criteria.birth_year_tolerance) continue;
            if (criteria.birth_year_tolerance > 0) {
                distance += static_cast<double>(gap) /
                            static_cast<double>(criteria.birth_year_tolerance);
            }
        }

        const auto cand_pubs = static_cast<long long>(cand.paper_ids.size());
        if (std::abs(cand_pubs - target_pubs) >
            criteria.pub_count_rel_tolerance *
                static_cast<double>(std::max<long long>(target_pubs, 1))) {
            continue;
        }
        const long long cand_cites = cand.total_annual_citations();
        if (std::abs(cand_cites - target_cites) >
            criteria.citation_rel_tolerance *
                static_cast<double>(std::max<long long>(target_cites, 1))) {
            continue;
        }
        distance += log_gap(cand_pubs, target_pubs);
        distance += log_gap(cand_cites, target_cites);

        if (!best || distance < best_distance) {
            best = cand.author_id;
            best_distance = distance;
        }
    }
    return best;
}

std::vector<FlagEvidence> flag_suspicious(const Corpus& corpus,
                                          const SpikeFilterConfig& config,
                                          int n_threshold) {
    if (n_threshold < 1) throw ArgumentError("flag_suspicious: n_threshold must be >= 1");
    std::vector<FlagEvidence> out;
    for (const auto& profile : corpus.authors()) {
        const auto spike = spike_filter(profile, config);
        if (!spike) continue;

        const auto counts = citing_paper_counts(corpus, profile.author_id);
        std::vector<CitingPaperCount> qualifying;
        for (const auto& c : counts) {
            if (!c.is_self_citation && c.n >= n_threshold) qualifying.push_back(c);
        }
        if (qualifying.empty()) continue;
        std::sort(qualifying.begin(), qualifying.end(), [](const auto& a, const auto& b) {
            if (a.n != b.n) return a.n > b.n;
            return a.citing_paper_id < b.citing_paper_id;
        });

        FlagEvidence ev;
        ev.author_id = profile.author_id;
        ev.spike = *spike;
        ev.qualifying = std::move(qualifying);
        ev.c2 = c2_summary(counts, /*include_self=*/false);
        out.push_back(std::move(ev));
    }
    return out;  // authors() is sorted by author_id
}

}  // namespace citeforensics
