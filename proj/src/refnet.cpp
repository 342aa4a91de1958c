#include "citeforensics/refnet.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "citeforensics/errors.hpp"
#include "citeforensics/normalize.hpp"
#include "citeforensics/parallel.hpp"

namespace citeforensics {

int levenshtein_distance(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0) return static_cast<int>(lb);
    std::vector<int> row(la + 1);
    std::iota(row.begin(), row.end(), 0);
    for (std::size_t j = 1; j <= lb; ++j) {
        int diag = row[0];
        row[0] = static_cast<int>(j);
        for (std::size_t i = 1; i <= la; ++i) {
            const int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            diag = row[i];
            row[i] = std::min({row[i] + 1, row[i - 1] + 1, sub});
        }
    }
    return row[la];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return 1.0;
    const int d = levenshtein_distance(a, b);
    return 1.0 - static_cast<double>(d) / static_cast<double>(m);
}

namespace {

// The one place that turns a distance into a match/no-match decision. All
// pruning must agree with this exact comparison.
inline bool distance_matches(int d, std::size_t max_len, double threshold) {
    if (max_len == 0) return 1.0 > threshold;
    const double sim = 1.0 - static_cast<double>(d) / static_cast<double>(max_len);
    return sim > threshold;
}

}  // namespace

int max_distance_for_match(std::size_t max_len, double threshold) {
    if (!distance_matches(0, max_len, threshold)) return -1;
    // distance_matches is monotone non-increasing in d (double division and
    // subtraction are monotone), so binary search for the last matching d.
    std::size_t lo = 0, hi = max_len;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (distance_matches(static_cast<int>(mid), max_len, threshold)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return static_cast<int>(lo);
}

std::optional<int> bounded_distance(std::string_view a, std::string_view b, int limit) {
    if (limit < 0) return std::nullopt;
    // Trimming a common prefix/suffix preserves the distance.
    while (!a.empty() && !b.empty() && a.front() == b.front()) {
        a.remove_prefix(1);
        b.remove_prefix(1);
    }
    while (!a.empty() && !b.empty() && a.back() == b.back()) {
        a.remove_suffix(1);
        b.remove_suffix(1);
    }
    if (a.size() > b.size()) std::swap(a, b);
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    if (lb - la > limit) return std::nullopt;
    if (la == 0) return lb;  // lb <= limit here

    const int k = limit;
    const int width = 2 * k + 1;
    const int inf = limit + 1;
    // Band slot s in row i holds D(i, j) with j = i - k + s.
    std::array<int, 64> prev_buf{}, cur_buf{};
    std::vector<int> prev_vec, cur_vec;
    int *prev, *cur;
    if (width <= 64) {
        prev = prev_buf.data();
        cur = cur_buf.data();
    } else {
        prev_vec.assign(width, inf);
        cur_vec.assign(width, inf);
        prev = prev_vec.data();
        cur = cur_vec.data();
    }
    for (int s = 0; s < width; ++s) {
        const int j = s - k;
        prev[s] = (j >= 0 && j <= std::min(lb, k)) ? j : inf;
    }
    for (int i = 1; i <= la; ++i) {
        int row_min = inf;
        for (int s = 0; s < width; ++s) {
            const int j = i - k + s;
            if (j < 0 || j > lb) {
                cur[s] = inf;
                continue;
            }
            int best;
            if (j == 0) {
                best = i;  // deleting the first i characters of a
            } else {
                const int sub = prev[s] + (a[i - 1] == b[j - 1] ? 0 : 1);
                const int del = (s + 1 < width ? prev[s + 1] : inf) + 1;
                const int ins = (s > 0 ? cur[s - 1] : inf) + 1;
                best = std::min({sub, del, ins});
            }
            cur[s] = std::min(best, inf);
            row_min = std::min(row_min, cur[s]);
        }
        if (row_min > limit) return std::nullopt;
        std::swap(prev, cur);
    }
    const int d = prev[lb - la + k];
    if (d > limit) return std::nullopt;
    return d;
}

bool similar(std::string_view a, std::string_view b, const SimilarityConfig& config) {
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return distance_matches(0, 0, config.threshold);
    if (config.enable_length_prune) {
        const auto diff =
            static_cast<int>(m - std::min(a.size(), b.size()));
        // d >= diff, and distance_matches is monotone in d: if even the length
        // gap alone fails, the real distance fails too.
        if (!distance_matches(diff, m, config.threshold)) return false;
        const int limit = max_distance_for_match(m, config.threshold);
        return bounded_distance(a, b, limit).has_value();
    }
    return distance_matches(levenshtein_distance(a, b), m, config.threshold);
}

namespace {

struct RefOccurrence {
    std::uint32_t paper = 0;  // index into the sorted paper order
    std::int32_t bib_index = 0;
};

struct StringPairMatch {
    std::uint32_t s1 = 0;  // indices into the distinct-string table, s1 < s2
    std::uint32_t s2 = 0;
    double similarity = 1.0;
};

// 16-bucket character histogram. Any single edit changes the bucket-count L1
// distance by at most 2, so L1/2 is a lower bound on the edit distance; a
// pair failing it cannot match and needs no DP.
using CharHistogram = std::array<std::uint16_t, 16>;

CharHistogram char_histogram(std::string_view s) {
    CharHistogram h{};
    for (const char c : s) {
        ++h[static_cast<unsigned char>(c) & 0x0F];
    }
    return h;
}

int histogram_distance_bound(const CharHistogram& a, const CharHistogram& b) {
    int l1 = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        l1 += std::abs(static_cast<int>(a[t]) - static_cast<int>(b[t]));
    }
    return l1 / 2;
}

}  // namespace

RefMatchNetwork build_network(const std::vector<PaperRecord>& papers,
                              const SimilarityConfig& config, int threads) {
    // Sorted paper order makes everything downstream input-order independent.
    std::vector<const PaperRecord*> sorted;
    sorted.reserve(papers.size());
    for (const auto& p : papers) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->paper_id < b->paper_id; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i]->paper_id.empty()) {
            throw ValidationError({"paper with empty paper_id in network input"});
        }
        if (i > 0 && sorted[i]->paper_id == sorted[i - 1]->paper_id) {
            throw ValidationError({"duplicate paper_id \"" + sorted[i]->paper_id +
                                   "\" in network input"});
        }
    }

    RefMatchNetwork net;
    for (const auto* p : sorted) net.nodes.insert(p->paper_id);

    // Distinct normalized strings; uids are assigned while scanning papers in
    // sorted order, so they are input-order independent.
    std::map<std::string, std::uint32_t> distinct;
    std::vector<std::vector<RefOccurrence>> occurrences;
    std::vector<const std::string*> strings;
    for (std::uint32_t pi = 0; pi < sorted.size(); ++pi) {
        const auto& bib = sorted[pi]->bibliography;
        for (std::int32_t bi = 0; bi < static_cast<std::int32_t>(bib.size()); ++bi) {
            const std::string normalized = bib[bi].normalized.empty()
                                               ? normalize_reference(bib[bi].raw)
                                               : bib[bi].normalized;
            if (normalized.empty()) continue;  // no content to match on
            auto [it, inserted] = distinct.emplace(normalized, 0);
            if (inserted) it->second = static_cast<std::uint32_t>(distinct.size()) - 1;
            const std::uint32_t uid = it->second;
            if (uid >= occurrences.size()) occurrences.resize(uid + 1);
            occurrences[uid].push_back({pi, bi});
        }
    }
    strings.resize(distinct.size());
    for (const auto& [s, uid] : distinct) strings[uid] = &s;

    // Candidate generation: strings sorted by length; for each string only a
    // bounded window of longer strings can possibly match, because the length
    // gap alone caps the similarity at shorter/longer.
    std::vector<std::uint32_t> by_length(strings.size());
    std::iota(by_length.begin(), by_length.end(), 0);
    std::sort(by_length.begin(), by_length.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (strings[x]->size() != strings[y]->size()) {
            return strings[x]->size() < strings[y]->size();
        }
        return x < y;
    });

    const std::size_t n = by_length.size();

    // Flat, position-ordered side tables keep the hot loop on contiguous
    // memory: lengths, histograms, and the per-length distance limit.
    std::vector<std::uint32_t> len_at(n);
    std::vector<CharHistogram> hist_at(n);
    std::size_t max_len = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::string& s = *strings[by_length[pos]];
        len_at[pos] = static_cast<std::uint32_t>(s.size());
        hist_at[pos] = char_histogram(s);
        max_len = std::max(max_len, s.size());
    }
    std::vector<int> limit_of_len(max_len + 1, -1);
    for (std::size_t l = 1; l <= max_len; ++l) {
        limit_of_len[l] = max_distance_for_match(l, config.threshold);
    }

    constexpr std::size_t kChunk = 64;
    const int workers = effective_thread_count(threads);
    std::vector<std::vector<StringPairMatch>> chunk_matches(
        n == 0 ? 0 : (n + kChunk - 1) / kChunk);

    parallel_for_chunks(n, kChunk, workers, [&](std::size_t chunk, std::size_t begin,
                                                std::size_t end) {
        auto& local = chunk_matches[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t ui = by_length[i];
            const std::string& si = *strings[ui];
            const CharHistogram& hi = hist_at[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::uint32_t lj = len_at[j];
                const auto diff = static_cast<int>(lj - len_at[i]);
                if (!distance_matches(diff, lj, config.threshold)) {
                    break;  // window is length-sorted: all later j fail too
                }
                const int limit = limit_of_len[lj];
                if (limit < 0) continue;
                if (histogram_distance_bound(hi, hist_at[j]) > limit) continue;
                const std::uint32_t uj = by_length[j];
                const std::string& sj = *strings[uj];
                const auto d = bounded_distance(si, sj, limit);
                if (d) {
                    const double sim =
                        1.0 - static_cast<double>(*d) / static_cast<double>(lj);
                    local.push_back({std::min(ui, uj), std::max(ui, uj), sim});
                }
            }
        }
    });

    // Expand string matches (plus exact-duplicate groups) into per-paper-pair
    // candidate bib-index pairs.
    struct Candidate {
        std::int32_t bib_a = 0;
        std::int32_t bib_b = 0;
        double similarity = 1.0;
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Candidate>> pair_candidates;

    const auto add_cross_pairs = [&](const std::vector<RefOccurrence>& occ_x,
                                     const std::vector<RefOccurrence>& occ_y,
                                     double sim) {
        for (const auto& ox : occ_x) {
            for (const auto& oy : occ_y) {
                if (ox.paper == oy.paper) continue;
                const RefOccurrence& first = ox.paper < oy.paper ? ox : oy;
                const RefOccurrence& second = ox.paper < oy.paper ? oy : ox;
                pair_candidates[{first.paper, second.paper}].push_back(
                    {first.bib_index, second.bib_index, sim});
            }
        }
    };

    // Exact duplicates match iff similarity 1.0 clears the strict threshold.
    if (1.0 > config.threshold) {
        for (std::uint32_t uid = 0; uid < occurrences.size(); ++uid) {
            const auto& occ = occurrences[uid];
            for (std::size_t x = 0; x < occ.size(); ++x) {
                for (std::size_t y = x + 1; y < occ.size(); ++y) {
                    if (occ[x].paper == occ[y].paper) continue;
                    const RefOccurrence& first =
                        occ[x].paper < occ[y].paper ? occ[x] : occ[y];
                    const RefOccurrence& second =
                        occ[x].paper < occ[y].paper ? occ[y] : occ[x];
                    pair_candidates[{first.paper, second.paper}].push_back(
                        {first.bib_index, second.bib_index, 1.0});
                }
            }
        }
    }
    for (const auto& chunk : chunk_matches) {
        for (const auto& m : chunk) {
            add_cross_pairs(occurrences[m.s1], occurrences[m.s2], m.similarity);
        }
    }

    // One-to-one greedy matching per paper pair: best similarity first, then
    // lowest bibliography indices, so a duplicated entry cannot inflate the
    // edge weight.
    for (auto& [pair_key, cands] : pair_candidates) {
        std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
            if (x.similarity != y.similarity) return x.similarity > y.similarity;
            if (x.bib_a != y.bib_a) return x.bib_a < y.bib_a;
            return x.bib_b < y.bib_b;
        });
        std::set<std::int32_t> used_a, used_b;
        std::vector<std::pair<int, int>> matched;
        for (const auto& c : cands) {
            if (used_a.count(c.bib_a) || used_b.count(c.bib_b)) continue;
            used_a.insert(c.bib_a);
            used_b.insert(c.bib_b);
            matched.emplace_back(c.bib_a, c.bib_b);
        }
        if (matched.empty()) continue;
        std::sort(matched.begin(), matched.end());
        RefMatchNetwork::Edge edge;
        edge.weight = static_cast<int>(matched.size());
        edge.matched_pairs = std::move(matched);
        net.edges.emplace(std::make_pair(sorted[pair_key.first]->paper_id,
                                         sorted[pair_key.second]->paper_id),
                          std::move(edge));
    }
    return net;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

}  // namespace

std::map<int, std::set<std::string>> connected_components(const RefMatchNetwork& network) {
    std::vector<std::string> ids(network.nodes.begin(), network.nodes.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

    UnionFind uf(ids.size());
    for (const auto& [key, edge] : network.edges) {
        uf.unite(index.at(key.first), index.at(key.second));
    }

    std::map<std::size_t, std::set<std::string>> groups;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        groups[uf.find(i)].insert(ids[i]);
    }
    std::vector<const std::set<std::string>*> ordered;
    ordered.reserve(groups.size());
    for (const auto& [root, members] : groups) ordered.push_back(&members);
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        if (a->size() != b->size()) return a->size() > b->size();
        return *a->begin() < *b->begin();
    });

    std::map<int, std::set<std::string>> out;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        out[static_cast<int>(i)] = *ordered[i];
    }
    return out;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::vector<ClusterFinding> scan_clusters(const Corpus& corpus,
                                          const RefMatchNetwork& network,
                                          const std::map<int, std::set<std::string>>& components,
                                          int mention_threshold) {
    (void)network;
    if (mention_threshold < 1) {
        throw ArgumentError("scan_clusters: mention_threshold must be >= 1");
    }
    std::vector<ClusterFinding> findings;
    for (const auto& [component_id, members] : components) {
        if (members.size() < 2) continue;
        // author -> citing paper -> (refs, distinct works cited there)
        std::map<std::string, std::map<std::string, std::pair<long long, std::set<std::string>>>>
            per_author;
        for (const auto& paper_id : members) {
            const PaperRecord& record = corpus.paper(paper_id);
            for (const auto& entry : record.bibliography) {
                std::set<std::string> attributed(entry.resolved_author_ids.begin(),
                                                 entry.resolved_author_ids.end());
                const std::vector<std::string>* work_owners = nullptr;
                if (entry.resolved_paper_id && corpus.has_paper(*entry.resolved_paper_id)) {
                    work_owners = &corpus.owners_of(*entry.resolved_paper_id);
                    attributed.insert(work_owners->begin(), work_owners->end());
                }
                for (const auto& aid : attributed) {
                    auto& slot = per_author[aid][paper_id];
                    slot.first += 1;
                    if (work_owners &&
                        std::binary_search(work_owners->begin(), work_owners->end(), aid)) {
                        slot.second.insert(*entry.resolved_paper_id);
                    }
                }
            }
        }
        for (const auto& [author_id, per_paper] : per_author) {
            long long mentions = 0;
            for (const auto& [pid, slot] : per_paper) mentions += slot.first;
            if (mentions < mention_threshold || per_paper.size() < 2) continue;

            std::vector<const std::set<std::string>*> work_sets;
            std::vector<std::string> citing;
            for (const auto& [pid, slot] : per_paper) {
                citing.push_back(pid);
                work_sets.push_back(&slot.second);
            }
            double sum = 0.0;
            std::size_t pairs = 0;
            for (std::size_t i = 0; i < work_sets.size(); ++i) {
                for (std::size_t j = i + 1; j < work_sets.size(); ++j) {
                    sum += jaccard(*work_sets[i], *work_sets[j]);
                    ++pairs;
                }
            }
            ClusterFinding f;
            f.component_id = component_id;
            f.author_id = author_id;
            f.mention_count = mentions;
            f.citing_paper_ids = std::move(citing);
            f.consistency = pairs == 0 ? 1.0 : sum / static_cast<double>(pairs);
            findings.push_back(std::move(f));
        }
    }
    return findings;  // ordered by (component_id, author_id) by construction
}

}  // namespace citeforensics
