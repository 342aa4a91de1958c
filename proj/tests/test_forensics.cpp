#include <doctest.h>

#include <random>

#include "citeforensics/errors.hpp"
#include "citeforensics/forensics.hpp"
#include "testutil.hpp"

namespace cf = citeforensics;
using namespace testutil;

namespace {

cf::AuthorProfile spiky_author(std::map<int, long long> annual, int pubs) {
    std::vector<std::string> papers;
    for (int i = 0; i < pubs; ++i) papers.push_back("p" + std::to_string(i));
    auto a = make_author("spiky", papers, std::move(annual));
    return a;
}

// Corpus with a planted offender: spike in citations plus heavy non-self
// citing papers, alongside benign authors.
cf::Corpus planted_offender_corpus() {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;

    std::vector<std::string> works;
    for (int w = 0; w < 25; ++w) {
        const std::string id = "off_w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"offender"}));
    }
    authors.push_back(
        make_author("offender", works, {{2018, 10}, {2019, 10}, {2020, 480}}));

    authors.push_back(make_author("bystander"));
    for (int c = 0; c < 5; ++c) {
        auto p = make_paper("citing" + std::to_string(c), 2020, {"bystander"});
        for (int w = 0; w < 20; ++w) {
            p.bibliography.push_back(ref_to_paper(works[w]));
        }
        papers.push_back(std::move(p));
    }

    // Benign author: modest, steady citations.
    std::vector<std::string> benign_works;
    for (int w = 0; w < 12; ++w) {
        const std::string id = "ben_w" + std::to_string(w);
        benign_works.push_back(id);
        papers.push_back(make_paper(id, 2016, {"benign"}));
    }
    authors.push_back(make_author(
        "benign", benign_works, {{2017, 80}, {2018, 100}, {2019, 120}, {2020, 140}}));
    auto benign_citing = make_paper("ben_citing", 2020, {"bystander"});
    benign_citing.bibliography.push_back(ref_to_paper(benign_works[0]));
    papers.push_back(std::move(benign_citing));

    return cf::Corpus::from_records(std::move(authors), std::move(papers));
}

}  // namespace

TEST_CASE("spike_filter flags the documented spike pattern") {
    const auto profile =
        spiky_author({{2017, 10}, {2018, 10}, {2019, 20}, {2020, 300}}, 12);
    const auto flag = cf::spike_filter(profile, {});
    REQUIRE(flag.has_value());
    CHECK(flag->spike_year == 2020);
    REQUIRE(flag->yoy_ratio.has_value());
    CHECK(*flag->yoy_ratio == 15.0);
    CHECK(flag->share_of_total == 300.0 / 340.0);
}

TEST_CASE("spike_filter gates reject non-spikes") {
    // ratio 1.5 < 10
    CHECK_FALSE(cf::spike_filter(spiky_author({{2019, 100}, {2020, 150}}, 20), {}));
    // 20x spike but only 150 total citations (< 200)
    CHECK_FALSE(cf::spike_filter(spiky_author({{2019, 7}, {2020, 143}}, 20), {}));
    // spike and citations fine, but only 9 publications
    CHECK_FALSE(cf::spike_filter(spiky_author({{2019, 20}, {2020, 280}}, 9), {}));
    // 10x year present but below the 25% share gate
    CHECK_FALSE(cf::spike_filter(
        spiky_author({{2016, 400}, {2017, 400}, {2018, 400}, {2019, 40}, {2020, 410}}, 20),
        {}));
}

TEST_CASE("spike_filter treats zero-to-positive transitions as infinite ratio") {
    const auto flag = cf::spike_filter(spiky_author({{2019, 0}, {2020, 300}}, 15), {});
    REQUIRE(flag.has_value());
    CHECK(flag->spike_year == 2020);
    CHECK_FALSE(flag->yoy_ratio.has_value());  // infinite marker
    CHECK(flag->share_of_total == 1.0);

    // a gap in the recorded span counts as a zero year
    const auto gap =
        cf::spike_filter(spiky_author({{2017, 4}, {2020, 296}}, 15), {});
    REQUIRE(gap.has_value());
    CHECK(gap->spike_year == 2020);
    CHECK_FALSE(gap->yoy_ratio.has_value());

    // the first recorded year is the start of the history, never a spike
    CHECK_FALSE(cf::spike_filter(spiky_author({{2020, 300}}, 15), {}).has_value());

    // zero-to-small does not qualify: current must reach the ratio threshold
    cf::SpikeFilterConfig cfg;
    cfg.min_total_citations = 5;
    cfg.min_share_of_total = 0.01;
    const auto small = cf::spike_filter(spiky_author({{2019, 0}, {2020, 9}}, 15), cfg);
    CHECK_FALSE(small.has_value());
}

TEST_CASE("spike_filter reports the earliest qualifying year") {
    const auto profile = spiky_author(
        {{2016, 10}, {2017, 150}, {2018, 2}, {2019, 200}}, 15);
    const auto flag = cf::spike_filter(profile, {});
    REQUIRE(flag.has_value());
    CHECK(flag->spike_year == 2017);  // 15x, share 150/362
}

TEST_CASE("spike_filter is monotone under threshold loosening") {
    std::mt19937_64 rng(9090);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<int, long long> annual;
        for (int y = 2014; y <= 2021; ++y) {
            if (rng() % 3 != 0) annual[y] = static_cast<long long>(rng() % 400);
        }
        const auto profile = spiky_author(annual, static_cast<int>(rng() % 25));

        cf::SpikeFilterConfig tight;
        tight.min_total_citations = 100 + static_cast<long long>(rng() % 300);
        tight.min_publications = 5 + static_cast<int>(rng() % 15);
        tight.min_yoy_ratio = 2.0 + static_cast<double>(rng() % 16);
        tight.min_share_of_total = 0.05 + 0.01 * static_cast<double>(rng() % 60);

        cf::SpikeFilterConfig loose = tight;
        loose.min_total_citations -= static_cast<long long>(rng() % 100);
        loose.min_publications -= static_cast<int>(rng() % 5);
        loose.min_yoy_ratio -= 0.5 * static_cast<double>(rng() % 4);
        loose.min_share_of_total -= 0.01 * static_cast<double>(rng() % 5);

        if (cf::spike_filter(profile, tight).has_value()) {
            CHECK(cf::spike_filter(profile, loose).has_value());
        }
    }
}

TEST_CASE("citing_paper_forensics computes bibliography shares") {
    // 50 entries, 45 to the author -> share 0.90
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    std::vector<std::string> works;
    for (int w = 0; w < 45; ++w) {
        const std::string id = "w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"tgt"}));
    }
    authors.push_back(make_author("tgt", works));
    authors.push_back(make_author("other"));
    auto citing = make_paper("citing", 2021, {"other"});
    for (const auto& w : works) citing.bibliography.push_back(ref_to_paper(w));
    for (int i = 0; i < 5; ++i) {
        cf::RefEntry e;
        e.raw = "unrelated entry " + std::to_string(i);
        citing.bibliography.push_back(std::move(e));
    }
    papers.push_back(citing);
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));

    const auto f = cf::citing_paper_forensics(corpus, "tgt", "citing");
    CHECK(f.refs_to_author == 45);
    CHECK(f.total_refs == 50);
    CHECK(f.share_of_bibliography == 0.90);
    CHECK_FALSE(f.refs_per_page.has_value());   // no page_count given
    CHECK_FALSE(f.orphan_share.has_value());    // no main_text_cited given
}

TEST_CASE("citing_paper_forensics on a two-page paper with fully orphaned references") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    std::vector<std::string> works;
    for (int w = 0; w < 30; ++w) {
        const std::string id = "w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"tgt"}));
    }
    authors.push_back(make_author("tgt", works));
    authors.push_back(make_author("other"));

    auto citing = make_paper("short_paper", 2021, {"other"});
    citing.page_count = 2;
    for (const auto& w : works) citing.bibliography.push_back(ref_to_paper(w));
    cf::RefEntry in_text;
    in_text.raw = "the single genuine reference";
    citing.bibliography.push_back(std::move(in_text));
    citing.main_text_cited = std::set<int>{30};  // only the genuine entry
    papers.push_back(citing);
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));

    const auto f = cf::citing_paper_forensics(corpus, "tgt", "short_paper");
    CHECK(f.refs_to_author == 30);
    REQUIRE(f.orphan_share.has_value());
    CHECK(*f.orphan_share == 1.0);
    REQUIRE(f.refs_per_page.has_value());
    CHECK(*f.refs_per_page == 15.0);
}

TEST_CASE("citing_paper_forensics: fully cited reference has zero orphan share") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    papers.push_back(make_paper("w0", 2015, {"tgt"}));
    authors.push_back(make_author("tgt", {"w0"}));
    authors.push_back(make_author("other"));
    auto citing = make_paper("citing", 2021, {"other"});
    citing.bibliography.push_back(ref_to_paper("w0"));
    citing.main_text_cited = std::set<int>{0};
    papers.push_back(citing);
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));

    const auto f = cf::citing_paper_forensics(corpus, "tgt", "citing");
    REQUIRE(f.orphan_share.has_value());
    CHECK(*f.orphan_share == 0.0);
}

TEST_CASE("citing_paper_forensics rejects papers that do not cite the author") {
    const auto rc = random_corpus(55);
    bool checked = false;
    for (const auto& paper : rc.corpus.papers()) {
        for (const auto& author_id : rc.author_ids) {
            if (rc.corpus.entries_to_author(paper.paper_id, author_id).empty()) {
                CHECK_THROWS_AS(
                    cf::citing_paper_forensics(rc.corpus, author_id, paper.paper_id),
                    cf::ArgumentError);
                checked = true;
                break;
            }
        }
        if (checked) break;
    }
    CHECK(checked);
}

TEST_CASE("top_citing_papers sorts by reference count with id tie-break") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    std::vector<std::string> works;
    for (int w = 0; w < 9; ++w) {
        const std::string id = "w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"tgt"}));
    }
    authors.push_back(make_author("tgt", works));
    authors.push_back(make_author("other"));
    const std::vector<std::pair<std::string, int>> citing = {
        {"cA", 5}, {"cB", 9}, {"cC", 2}};
    for (const auto& [id, refs] : citing) {
        auto p = make_paper(id, 2021, {"other"});
        for (int r = 0; r < refs; ++r) p.bibliography.push_back(ref_to_paper(works[r]));
        papers.push_back(std::move(p));
    }
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));

    CHECK(cf::top_citing_papers(corpus, "tgt", 2) ==
          std::vector<std::string>{"cB", "cA"});
    CHECK(cf::top_citing_papers(corpus, "tgt", 10) ==
          std::vector<std::string>{"cB", "cA", "cC"});
}

TEST_CASE("top_citing_papers agrees with a full sort on random corpora") {
    std::mt19937_64 seeds(13);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rc = random_corpus(seeds());
        for (const auto& author_id : rc.author_ids) {
            std::vector<std::pair<int, std::string>> expected;
            for (const auto& paper : rc.corpus.papers()) {
                const auto refs =
                    rc.corpus.entries_to_author(paper.paper_id, author_id).size();
                if (refs > 0) expected.emplace_back(static_cast<int>(refs), paper.paper_id);
            }
            std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            const auto got = cf::top_citing_papers(rc.corpus, author_id, 4);
            REQUIRE(got.size() == std::min<std::size_t>(4, expected.size()));
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i] == expected[i].second);
            }
        }
    }
}

TEST_CASE("find_matched_author picks the unique exact match") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    for (const std::string id : {"t0", "t1", "m0", "m1"}) {
        papers.push_back(make_paper("pub_" + id, 2012, {}));
    }
    auto target = make_author("target", {"pub_t0", "pub_t1"}, {{2015, 50}});
    target.interests = {"networks"};
    auto match = make_author("mirror", {"pub_m0", "pub_m1"}, {{2016, 50}});
    match.interests = {"networks"};
    auto outsider = make_author("outsider", {}, {{2015, 50}});
    outsider.interests = {"pottery"};
    authors = {target, match, outsider};
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));

    cf::MatchCriteria criteria;
    criteria.birth_year_tolerance = 3;
    const auto found = cf::find_matched_author(corpus, "target", criteria);
    REQUIRE(found.has_value());
    CHECK(*found == "mirror");
}

TEST_CASE("find_matched_author returns none when no keyword is shared") {
    std::vector<cf::AuthorProfile> authors;
    auto target = make_author("target");
    target.interests = {"networks"};
    auto other = make_author("other");
    other.interests = {"pottery"};
    authors = {target, other};
    const auto corpus = cf::Corpus::from_records(std::move(authors), {});
    CHECK_FALSE(cf::find_matched_author(corpus, "target", {}).has_value());
}

TEST_CASE("find_matched_author minimizes the stated distance on random corpora") {
    std::mt19937_64 seeds(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rc = random_corpus(seeds(), 12, 40);
        cf::MatchCriteria criteria;
        criteria.birth_year_tolerance = 6;
        criteria.pub_count_rel_tolerance = 2.0;
        criteria.citation_rel_tolerance = 2.0;
        for (const auto& target_id : rc.author_ids) {
            const auto got = cf::find_matched_author(rc.corpus, target_id, criteria);

            // Exhaustive candidate scan.
            const auto& target = rc.corpus.author(target_id);
            const auto t_by = cf::academic_birth_year(rc.corpus, target);
            const auto t_pubs = static_cast<long long>(target.paper_ids.size());
            const long long t_cites = target.total_annual_citations();
            std::optional<std::string> best;
            double best_d = 0.0;
            for (const auto& cand : rc.corpus.authors()) {
                if (cand.author_id == target_id) continue;
                bool shared = false;
                for (const auto& kw : cand.interests) {
                    shared |= std::find(target.interests.begin(), target.interests.end(),
                                        kw) != target.interests.end();
                }
                if (!shared) continue;
                double d = 0.0;
                const auto c_by = cf::academic_birth_year(rc.corpus, cand);
                if (t_by && c_by) {
                    const int gap = std::abs(*t_by - *c_by);
                    if (gap > criteria.birth_year_tolerance) continue;
                    d += static_cast<double>(gap) / criteria.birth_year_tolerance;
                }
                const auto c_pubs = static_cast<long long>(cand.paper_ids.size());
                if (std::abs(c_pubs - t_pubs) >
                    criteria.pub_count_rel_tolerance *
                        static_cast<double>(std::max<long long>(t_pubs, 1))) {
                    continue;
                }
                const long long c_cites = cand.total_annual_citations();
                if (std::abs(c_cites - t_cites) >
                    criteria.citation_rel_tolerance *
                        static_cast<double>(std::max<long long>(t_cites, 1))) {
                    continue;
                }
                d += std::abs(std::log1p(static_cast<double>(c_pubs)) -
                              std::log1p(static_cast<double>(t_pubs)));
                d += std::abs(std::log1p(static_cast<double>(c_cites)) -
                              std::log1p(static_cast<double>(t_cites)));
                if (!best || d < best_d) {
                    best = cand.author_id;
                    best_d = d;
                }
            }
            CHECK(got == best);
        }
    }
}

TEST_CASE("flag_suspicious recovers the planted offender and only it") {
    const auto corpus = planted_offender_corpus();
    const auto flagged = cf::flag_suspicious(corpus, {}, 18);
    REQUIRE(flagged.size() == 1);
    const auto& ev = flagged[0];
    CHECK(ev.author_id == "offender");
    CHECK(ev.qualifying.size() == 5);
    for (const auto& q : ev.qualifying) {
        CHECK(q.n == 20);
        CHECK_FALSE(q.is_self_citation);
    }
    CHECK(ev.c2.c2_index == 5);  // 5 citing papers with n = 20
    CHECK(ev.spike.spike_year == 2020);
}

TEST_CASE("flag_suspicious ignores spikes without concentrated citing papers") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    std::vector<std::string> works;
    for (int w = 0; w < 12; ++w) {
        const std::string id = "w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"spiker"}));
    }
    authors.push_back(make_author("spiker", works, {{2019, 10}, {2020, 300}}));
    authors.push_back(make_author("other"));
    auto citing = make_paper("citing", 2020, {"other"});
    citing.bibliography.push_back(ref_to_paper(works[0]));
    citing.bibliography.push_back(ref_to_paper(works[1]));
    citing.bibliography.push_back(ref_to_paper(works[2]));  // n = 3 < 18
    papers.push_back(std::move(citing));
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));
    CHECK(cf::flag_suspicious(corpus, {}, 18).empty());
}

TEST_CASE("flag_suspicious discounts purely self-cited concentration") {
    std::vector<cf::AuthorProfile> authors;
    std::vector<cf::PaperRecord> papers;
    std::vector<std::string> works;
    for (int w = 0; w < 20; ++w) {
        const std::string id = "w" + std::to_string(w);
        works.push_back(id);
        papers.push_back(make_paper(id, 2015, {"selfie"}));
    }
    authors.push_back(make_author("selfie", works, {{2019, 10}, {2020, 300}}));
    auto citing = make_paper("self_citing", 2020, {"selfie"});  // authored by target
    for (const auto& w : works) citing.bibliography.push_back(ref_to_paper(w));
    papers.push_back(std::move(citing));
    const auto corpus = cf::Corpus::from_records(std::move(authors), std::move(papers));
    CHECK(cf::flag_suspicious(corpus, {}, 18).empty());
}
