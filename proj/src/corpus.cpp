#include "citeforensics/corpus.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <json.hpp>

#include "citeforensics/errors.hpp"
#include "citeforensics/normalize.hpp"

namespace citeforensics {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string quote_id(const std::string& s) { return "\"" + s + "\""; }

// Field extraction helpers. A failed extraction records an issue and returns
// a default so that one bad record yields every applicable message at once.
struct FieldReader {
    const json& obj;
    std::string ctx;
    std::vector<std::string>& issues;

    bool note(const std::string& msg) const {
        issues.push_back(ctx + ": " + msg);
        return false;
    }

    std::string string_field(const char* key, bool required) const {
        if (!obj.contains(key)) {
            if (required) note(std::string("missing required field ") + quote_id(key));
            return {};
        }
        if (!obj[key].is_string()) {
            note(std::string("field ") + quote_id(key) + " must be a string");
            return {};
        }
        return obj[key].get<std::string>();
    }

    std::optional<std::string> opt_string_field(const char* key) const {
        if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
        if (!obj[key].is_string()) {
            note(std::string("field ") + quote_id(key) + " must be a string");
            return std::nullopt;
        }
        return obj[key].get<std::string>();
    }

    std::optional<long long> opt_int_field(const char* key) const {
        if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
        if (!obj[key].is_number_integer()) {
            note(std::string("field ") + quote_id(key) + " must be an integer");
            return std::nullopt;
        }
        return obj[key].get<long long>();
    }

    std::vector<std::string> string_list_field(const char* key) const {
        std::vector<std::string> out;
        if (!obj.contains(key) || obj[key].is_null()) return out;
        if (!obj[key].is_array()) {
            note(std::string("field ") + quote_id(key) + " must be an array");
            return out;
        }
        for (const auto& v : obj[key]) {
            if (!v.is_string()) {
                note(std::string("field ") + quote_id(key) + " must contain only strings");
                return out;
            }
            out.push_back(v.get<std::string>());
        }
        return out;
    }
};

bool parse_year_key(const std::string& key, int& year) {
    if (key.empty()) return false;
    std::size_t pos = 0;
    try {
        const long v = std::stol(key, &pos);
        if (pos != key.size()) return false;
        year = static_cast<int>(v);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

AuthorProfile parse_author(const json& obj, const std::string& ctx,
                           std::vector<std::string>& issues) {
    FieldReader r{obj, ctx, issues};
    AuthorProfile a;
    a.author_id = r.string_field("author_id", true);
    a.name = r.string_field("name", true);
    a.affiliation = r.opt_string_field("affiliation");
    a.interests = r.string_list_field("interests");
    a.paper_ids = r.string_list_field("paper_ids");
    if (const auto fp = r.opt_int_field("first_pub_year")) {
        a.first_pub_year = static_cast<int>(*fp);
    }
    if (obj.contains("annual_citations") && !obj["annual_citations"].is_null()) {
        if (!obj["annual_citations"].is_object()) {
            r.note("field \"annual_citations\" must be an object");
        } else {
            for (const auto& [key, value] : obj["annual_citations"].items()) {
                int year = 0;
                if (!parse_year_key(key, year)) {
                    r.note("annual_citations key " + quote_id(key) + " is not a year");
                    continue;
                }
                if (!value.is_number_integer()) {
                    r.note("annual_citations[" + key + "] must be an integer");
                    continue;
                }
                const long long count = value.get<long long>();
                if (count < 0) {
                    r.note("annual_citations[" + key + "] is negative");
                    continue;
                }
                a.annual_citations[year] = count;
            }
        }
    }
    return a;
}

PaperRecord parse_paper(const json& obj, const std::string& ctx,
                        std::vector<std::string>& issues) {
    FieldReader r{obj, ctx, issues};
    PaperRecord p;
    p.paper_id = r.string_field("paper_id", true);
    p.title = r.string_field("title", true);
    p.venue = r.opt_string_field("venue");
    if (const auto y = r.opt_int_field("year")) {
        p.year = static_cast<int>(*y);
    } else if (!obj.contains("year")) {
        r.note("missing required field \"year\"");
    }
    p.author_ids = r.string_list_field("author_ids");
    if (const auto pc = r.opt_int_field("page_count")) {
        p.page_count = static_cast<int>(*pc);
    }
    if (obj.contains("bibliography") && !obj["bibliography"].is_null()) {
        if (!obj["bibliography"].is_array()) {
            r.note("field \"bibliography\" must be an array");
        } else {
            for (const auto& e : obj["bibliography"]) {
                if (!e.is_object()) {
                    r.note("bibliography entries must be objects");
                    continue;
                }
                FieldReader er{e, ctx + " bibliography entry", issues};
                RefEntry entry;
                entry.raw = er.string_field("raw", true);
                entry.resolved_paper_id = er.opt_string_field("resolved_paper_id");
                entry.resolved_author_ids = er.string_list_field("resolved_author_ids");
                p.bibliography.push_back(std::move(entry));
            }
        }
    }
    if (obj.contains("main_text_cited") && !obj["main_text_cited"].is_null()) {
        if (!obj["main_text_cited"].is_array()) {
            r.note("field \"main_text_cited\" must be an array");
        } else {
            std::set<int> cited;
            for (const auto& v : obj["main_text_cited"]) {
                if (!v.is_number_integer()) {
                    r.note("main_text_cited must contain only integers");
                    continue;
                }
                cited.insert(v.get<int>());
            }
            p.main_text_cited = std::move(cited);
        }
    }
    return p;
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw ParseError(path.filename().string(), lineno, e.what());
        }
        if (!out.back().is_object()) {
            throw ParseError(path.filename().string(), lineno,
                             "expected a JSON object");
        }
    }
    return out;
}

}  // namespace

long long AuthorProfile::total_annual_citations() const {
    long long total = 0;
    for (const auto& [year, count] : annual_citations) total += count;
    return total;
}

Corpus Corpus::from_records(std::vector<AuthorProfile> authors,
                            std::vector<PaperRecord> papers) {
    Corpus c;
    c.authors_ = std::move(authors);
    c.papers_ = std::move(papers);
    c.validate_and_index();
    return c;
}

void Corpus::validate_and_index() {
    std::vector<std::string> issues;

    std::sort(authors_.begin(), authors_.end(),
              [](const auto& a, const auto& b) { return a.author_id < b.author_id; });
    std::sort(papers_.begin(), papers_.end(),
              [](const auto& a, const auto& b) { return a.paper_id < b.paper_id; });

    for (std::size_t i = 0; i < authors_.size(); ++i) {
        const auto& a = authors_[i];
        if (a.author_id.empty()) {
            issues.push_back("author with empty author_id");
            continue;
        }
        if (!author_index_.emplace(a.author_id, i).second) {
            issues.push_back("duplicate author_id " + quote_id(a.author_id));
        }
        for (const auto& [year, count] : a.annual_citations) {
            if (count < 0) {
                issues.push_back("author " + quote_id(a.author_id) +
                                 ": negative citation count in year " +
                                 std::to_string(year));
            }
        }
    }
    for (std::size_t i = 0; i < papers_.size(); ++i) {
        auto& p = papers_[i];
        if (p.paper_id.empty()) {
            issues.push_back("paper with empty paper_id");
            continue;
        }
        if (!paper_index_.emplace(p.paper_id, i).second) {
            issues.push_back("duplicate paper_id " + quote_id(p.paper_id));
        }
        if (p.page_count && *p.page_count <= 0) {
            issues.push_back("paper " + quote_id(p.paper_id) + ": page_count must be positive");
        }
        if (p.main_text_cited) {
            for (const int idx : *p.main_text_cited) {
                if (idx < 0 || static_cast<std::size_t>(idx) >= p.bibliography.size()) {
                    issues.push_back("paper " + quote_id(p.paper_id) +
                                     ": main_text_cited index " + std::to_string(idx) +
                                     " out of range");
                }
            }
        }
        for (auto& entry : p.bibliography) {
            entry.normalized = normalize_reference(entry.raw);
        }
    }

    // Referential integrity, all dangles reported together.
    for (const auto& a : authors_) {
        for (const auto& pid : a.paper_ids) {
            if (!paper_index_.count(pid)) {
                issues.push_back("author " + quote_id(a.author_id) +
                                 ": dangling paper_id " + quote_id(pid));
            }
        }
    }
    for (const auto& p : papers_) {
        for (const auto& aid : p.author_ids) {
            if (!author_index_.count(aid)) {
                issues.push_back("paper " + quote_id(p.paper_id) +
                                 ": dangling author_id " + quote_id(aid));
            }
        }
        for (std::size_t bi = 0; bi < p.bibliography.size(); ++bi) {
            const auto& e = p.bibliography[bi];
            if (e.resolved_paper_id && !paper_index_.count(*e.resolved_paper_id)) {
                issues.push_back("paper " + quote_id(p.paper_id) + " bibliography[" +
                                 std::to_string(bi) + "]: dangling resolved_paper_id " +
                                 quote_id(*e.resolved_paper_id));
            }
            for (const auto& aid : e.resolved_author_ids) {
                if (!author_index_.count(aid)) {
                    issues.push_back("paper " + quote_id(p.paper_id) + " bibliography[" +
                                     std::to_string(bi) +
                                     "]: dangling resolved_author_id " + quote_id(aid));
                }
            }
        }
    }

    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }

    for (const auto& a : authors_) {
        for (const auto& pid : a.paper_ids) {
            owners_[pid].push_back(a.author_id);
        }
    }
    for (auto& [pid, owners] : owners_) {
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
    }

    // Citation index: one pass over every bibliography entry. An entry points
    // at author A when it resolves to a paper A lists, or names A directly in
    // resolved_author_ids. Distinct works accrue only through resolved papers.
    std::map<std::string, std::map<std::string, CitingStats>> agg;
    for (const auto& citing : papers_) {
        std::set<std::string> self_authors(citing.author_ids.begin(),
                                           citing.author_ids.end());
        for (const auto& entry : citing.bibliography) {
            std::set<std::string> attributed(entry.resolved_author_ids.begin(),
                                             entry.resolved_author_ids.end());
            const std::vector<std::string>* work_owners = nullptr;
            if (entry.resolved_paper_id) {
                if (auto it = owners_.find(*entry.resolved_paper_id); it != owners_.end()) {
                    work_owners = &it->second;
                    attributed.insert(it->second.begin(), it->second.end());
                }
            }
            for (const auto& aid : attributed) {
                auto& st = agg[aid][citing.paper_id];
                if (st.citing_paper_id.empty()) {
                    st.citing_paper_id = citing.paper_id;
                    st.is_self = self_authors.count(aid) > 0;
                }
                st.refs += 1;
            }
            if (work_owners) {
                for (const auto& owner : *work_owners) {
                    auto& works = agg[owner][citing.paper_id].works;
                    works.push_back(*entry.resolved_paper_id);
                }
            }
        }
    }
    for (auto& [aid, per_paper] : agg) {
        auto& list = citations_[aid];
        for (auto& [pid, st] : per_paper) {
            std::sort(st.works.begin(), st.works.end());
            st.works.erase(std::unique(st.works.begin(), st.works.end()), st.works.end());
            list.push_back(std::move(st));
        }
    }
}

bool Corpus::has_author(const std::string& id) const { return author_index_.count(id) > 0; }
bool Corpus::has_paper(const std::string& id) const { return paper_index_.count(id) > 0; }

const AuthorProfile& Corpus::author(const std::string& id) const {
    const auto it = author_index_.find(id);
    if (it == author_index_.end()) throw LookupError("unknown author " + quote_id(id));
    return authors_[it->second];
}

const PaperRecord& Corpus::paper(const std::string& id) const {
    const auto it = paper_index_.find(id);
    if (it == paper_index_.end()) throw LookupError("unknown paper " + quote_id(id));
    return papers_[it->second];
}

const std::vector<std::string>& Corpus::owners_of(const std::string& paper_id) const {
    static const std::vector<std::string> empty;
    const auto it = owners_.find(paper_id);
    return it == owners_.end() ? empty : it->second;
}

const std::vector<Corpus::CitingStats>& Corpus::citations_to(
    const std::string& author_id) const {
    static const std::vector<CitingStats> empty;
    if (!has_author(author_id)) throw LookupError("unknown author " + quote_id(author_id));
    const auto it = citations_.find(author_id);
    return it == citations_.end() ? empty : it->second;
}

std::vector<int> Corpus::entries_to_author(const std::string& citing_paper_id,
                                           const std::string& author_id) const {
    const PaperRecord& citing = paper(citing_paper_id);
    if (!has_author(author_id)) throw LookupError("unknown author " + quote_id(author_id));
    std::vector<int> out;
    for (std::size_t bi = 0; bi < citing.bibliography.size(); ++bi) {
        const auto& e = citing.bibliography[bi];
        bool points = false;
        if (e.resolved_paper_id) {
            const auto& owners = owners_of(*e.resolved_paper_id);
            points = std::binary_search(owners.begin(), owners.end(), author_id);
        }
        if (!points) {
            points = std::find(e.resolved_author_ids.begin(), e.resolved_author_ids.end(),
                               author_id) != e.resolved_author_ids.end();
        }
        if (points) out.push_back(static_cast<int>(bi));
    }
    return out;
}

Corpus load_corpus(const std::filesystem::path& authors_path,
                   const std::filesystem::path& papers_path) {
    std::vector<std::string> issues;

    std::vector<AuthorProfile> authors;
    {
        const auto records = read_jsonl(authors_path);
        for (std::size_t i = 0; i < records.size(); ++i) {
            const std::string ctx =
                authors_path.filename().string() + " record " + std::to_string(i + 1);
            authors.push_back(parse_author(records[i], ctx, issues));
        }
    }
    std::vector<PaperRecord> papers;
    {
        const auto records = read_jsonl(papers_path);
        for (std::size_t i = 0; i < records.size(); ++i) {
            const std::string ctx =
                papers_path.filename().string() + " record " + std::to_string(i + 1);
            papers.push_back(parse_paper(records[i], ctx, issues));
        }
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
    return Corpus::from_records(std::move(authors), std::move(papers));
}

void save_corpus(const Corpus& corpus,
                 const std::filesystem::path& authors_path,
                 const std::filesystem::path& papers_path) {
    std::ofstream authors_out(authors_path);
    if (!authors_out) throw IoError("cannot write " + authors_path.string());
    for (const auto& a : corpus.authors()) {
        ordered_json j;
        j["author_id"] = a.author_id;
        j["name"] = a.name;
        if (a.affiliation) j["affiliation"] = *a.affiliation;
        j["interests"] = a.interests;
        j["paper_ids"] = a.paper_ids;
        ordered_json annual = ordered_json::object();
        for (const auto& [year, count] : a.annual_citations) {
            annual[std::to_string(year)] = count;  // std::map: strictly increasing
        }
        j["annual_citations"] = std::move(annual);
        if (a.first_pub_year) j["first_pub_year"] = *a.first_pub_year;
        authors_out << j.dump() << '\n';
    }

    std::ofstream papers_out(papers_path);
    if (!papers_out) throw IoError("cannot write " + papers_path.string());
    for (const auto& p : corpus.papers()) {
        ordered_json j;
        j["paper_id"] = p.paper_id;
        j["title"] = p.title;
        if (p.venue) j["venue"] = *p.venue;
        j["year"] = p.year;
        j["author_ids"] = p.author_ids;
        if (p.page_count) j["page_count"] = *p.page_count;
        ordered_json bib = ordered_json::array();
        for (const auto& e : p.bibliography) {
            ordered_json je;
            je["raw"] = e.raw;
            if (e.resolved_paper_id) je["resolved_paper_id"] = *e.resolved_paper_id;
            if (!e.resolved_author_ids.empty()) {
                je["resolved_author_ids"] = e.resolved_author_ids;
            }
            bib.push_back(std::move(je));
        }
        j["bibliography"] = std::move(bib);
        if (p.main_text_cited) {
            j["main_text_cited"] = std::vector<int>(p.main_text_cited->begin(),
                                                    p.main_text_cited->end());
        }
        papers_out << j.dump() << '\n';
    }
}

void CoauthorGraph::add_edge(const std::string& a, const std::string& b) {
    if (a == b) {
        throw ValidationError({"self-loop on " + quote_id(a)});
    }
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
}

bool CoauthorGraph::has_node(const std::string& id) const {
    return adjacency_.count(id) > 0;
}

const std::set<std::string>& CoauthorGraph::neighbors(const std::string& id) const {
    static const std::set<std::string> empty;
    const auto it = adjacency_.find(id);
    return it == adjacency_.end() ? empty : it->second;
}

CoauthorGraph load_coauthor_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    CoauthorGraph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
            throw ParseError(path.filename().string(), lineno,
                             "expected author_id<TAB>author_id");
        }
        g.add_edge(line.substr(0, tab), line.substr(tab + 1));
    }
    return g;
}

std::map<int, std::set<std::string>> snowball_sample(const CoauthorGraph& graph,
                                                     const std::set<std::string>& seeds,
                                                     int max_depth) {
    if (seeds.empty()) throw ArgumentError("snowball_sample: seeds must be non-empty");
    if (max_depth < 0) throw ArgumentError("snowball_sample: max_depth must be >= 0");
    std::vector<std::string> missing;
    for (const auto& s : seeds) {
        if (!graph.has_node(s)) missing.push_back(s);
    }
    if (!missing.empty()) {
        std::string msg = "seed not present in graph:";
        for (const auto& s : missing) msg += " " + quote_id(s);
        throw LookupError(msg);
    }

    std::map<int, std::set<std::string>> levels;
    std::set<std::string> visited = seeds;
    levels[0] = seeds;
    std::set<std::string> frontier = seeds;
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::set<std::string> next;
        for (const auto& node : frontier) {
            for (const auto& nb : graph.neighbors(node)) {
                if (!visited.count(nb)) next.insert(nb);
            }
        }
        if (next.empty()) break;
        visited.insert(next.begin(), next.end());
        levels[depth] = next;
        frontier = std::move(next);
    }
    return levels;
}

}  // namespace citeforensics
