#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace citeforensics {

/// One entry of a paper's bibliography. `normalized` is always recomputed
/// from `raw` (normalize_reference) when a corpus is assembled.
struct RefEntry {
    std::string raw;
    std::string normalized;
    std::optional<std::string> resolved_paper_id;
    std::vector<std::string> resolved_author_ids;

    bool operator==(const RefEntry&) const = default;
};

struct PaperRecord {
    std::string paper_id;
    std::string title;
    std::optional<std::string> venue;
    int year = 0;
    std::vector<std::string> author_ids;
    std::optional<int> page_count;
    std::vector<RefEntry> bibliography;
    std::optional<std::set<int>> main_text_cited;

    bool operator==(const PaperRecord&) const = default;
};

struct AuthorProfile {
    std::string author_id;
    std::string name;
    std::optional<std::string> affiliation;
    std::vector<std::string> interests;
    std::vector<std::string> paper_ids;
    std::map<int, long long> annual_citations;
    std::optional<int> first_pub_year;

    bool operator==(const AuthorProfile&) const = default;

    long long total_annual_citations() const;
};

/// Validated, immutable view over a set of profiles and papers. Safe to share
/// across threads; nothing here mutates after construction.
class Corpus {
public:
    Corpus() = default;

    /// Validates invariants (unique non-empty ids, non-negative citation
    /// counts, valid main-text indices, no dangling references) and builds
    /// the lookup indices. Throws ValidationError listing every issue found.
    static Corpus from_records(std::vector<AuthorProfile> authors,
                               std::vector<PaperRecord> papers);

    const std::vector<AuthorProfile>& authors() const { return authors_; }
    const std::vector<PaperRecord>& papers() const { return papers_; }

    bool has_author(const std::string& id) const;
    bool has_paper(const std::string& id) const;
    const AuthorProfile& author(const std::string& id) const;  // throws LookupError
    const PaperRecord& paper(const std::string& id) const;     // throws LookupError

    /// Authors that list `paper_id` among their publications (sorted).
    const std::vector<std::string>& owners_of(const std::string& paper_id) const;

    /// Aggregate of one citing paper's references to one target author.
    /// `refs` counts bibliography entries pointing at the author (duplicates
    /// included); `works` is the set of the author's distinct papers those
    /// entries resolve to.
    struct CitingStats {
        std::string citing_paper_id;
        int refs = 0;
        std::vector<std::string> works;  // sorted, unique
        bool is_self = false;
    };

    /// All papers citing `author_id` at least once (refs >= 1), sorted by
    /// citing paper id. Throws LookupError for unknown authors.
    const std::vector<CitingStats>& citations_to(const std::string& author_id) const;

    /// Bibliography indices of `citing_paper` whose entries point at the
    /// author (same attribution rule as CitingStats::refs).
    std::vector<int> entries_to_author(const std::string& citing_paper_id,
                                       const std::string& author_id) const;

    bool operator==(const Corpus& other) const {
        return authors_ == other.authors_ && papers_ == other.papers_;
    }

private:
    void validate_and_index();

    std::vector<AuthorProfile> authors_;  // sorted by author_id
    std::vector<PaperRecord> papers_;     // sorted by paper_id
    std::map<std::string, std::size_t> author_index_;
    std::map<std::string, std::size_t> paper_index_;
    std::map<std::string, std::vector<std::string>> owners_;
    std::map<std::string, std::vector<CitingStats>> citations_;
};

/// Loads authors.jsonl + papers.jsonl (one JSON object per line) and
/// validates the result. Throws IoError, ParseError (with line number), or
/// ValidationError.
Corpus load_corpus(const std::filesystem::path& authors_path,
                   const std::filesystem::path& papers_path);

/// Writes a corpus back to the two-file JSONL format. Field order is stable
/// and annual_citations years are emitted in increasing order, so the
/// round-trip load yields an equal corpus.
void save_corpus(const Corpus& corpus,
                 const std::filesystem::path& authors_path,
                 const std::filesystem::path& papers_path);

/// Undirected co-author graph. Symmetric by construction; self-loops rejected.
class CoauthorGraph {
public:
    void add_edge(const std::string& a, const std::string& b);
    bool has_node(const std::string& id) const;
    const std::set<std::string>& neighbors(const std::string& id) const;
    const std::map<std::string, std::set<std::string>>& adjacency() const {
        return adjacency_;
    }

private:
    std::map<std::string, std::set<std::string>> adjacency_;
};

/// Parses an edge-list file, one `author_id<TAB>author_id` per line.
CoauthorGraph load_coauthor_graph(const std::filesystem::path& path);

/// BFS level sets from `seeds`: result[d] holds the authors first reached at
/// distance d (depth 0 is exactly the seed set). Depths past exhaustion are
/// omitted. Throws LookupError naming any seed absent from the graph.
std::map<int, std::set<std::string>> snowball_sample(const CoauthorGraph& graph,
                                                     const std::set<std::string>& seeds,
                                                     int max_depth);

}  // namespace citeforensics
