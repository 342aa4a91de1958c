// citeforensics: batch workflows over local scholarly corpora.
//
// Subcommands: validate, metrics, flag, network, sample, report.
// Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 bad arguments.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <random>

#include "citeforensics/corpus.hpp"
#include "citeforensics/errors.hpp"
#include "citeforensics/export.hpp"
#include "citeforensics/forensics.hpp"
#include "citeforensics/metrics.hpp"
#include "citeforensics/parallel.hpp"
#include "citeforensics/refnet.hpp"

namespace cf = citeforensics;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kValidationFailure = 2,
    kBadArguments = 3,
};

struct RunConfig {
    std::string authors_path;
    std::string papers_path;
    std::string out_dir = "out";
    std::string format = "csv";
    long long seed = 0;
    bool seed_set = false;
    int threads = 0;

    cf::SpikeFilterConfig spike;
    int n_threshold = 18;

    cf::SimilarityConfig similarity;
    int mention_threshold = 10;
    int top_components = 30;
    std::string venue_filter;
    int year_filter = 0;
    bool year_filter_set = false;

    std::string graph_path;
    std::string seeds_csv;
    int depth = 10;

    int sample_per_interest = 0;
};

void require_corpus_paths(const RunConfig& cfg) {
    if (cfg.authors_path.empty() || cfg.papers_path.empty()) {
        throw CLI::RequiredError("--authors and --papers");
    }
}

cf::Corpus load(const RunConfig& cfg) {
    require_corpus_paths(cfg);
    return cf::load_corpus(cfg.authors_path, cfg.papers_path);
}

ordered_json spike_to_json(const cf::SpikeFlag& s) {
    ordered_json j;
    j["spike_year"] = s.spike_year;
    if (s.yoy_ratio) {
        j["yoy_ratio"] = *s.yoy_ratio;
    } else {
        j["yoy_ratio"] = "infinite";
    }
    j["share_of_total"] = s.share_of_total;
    return j;
}

ordered_json c2_to_json(const cf::C2Summary& s) {
    ordered_json j;
    j["c2_index"] = s.c2_index;
    j["c2_percentage"] = s.c2_percentage;
    j["adjusted_c2"] = s.adjusted_c2;
    j["total_citations"] = s.total_citations;
    return j;
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

std::vector<const cf::AuthorProfile*> select_authors(const cf::Corpus& corpus,
                                                     const RunConfig& cfg) {
    std::vector<const cf::AuthorProfile*> selected;
    if (cfg.sample_per_interest <= 0) {
        for (const auto& a : corpus.authors()) selected.push_back(&a);
        return selected;
    }
    // Stratified sample: group by primary (first listed) interest, draw
    // sample_per_interest authors per group with the seeded generator.
    std::map<std::string, std::vector<const cf::AuthorProfile*>> groups;
    for (const auto& a : corpus.authors()) {
        groups[a.interests.empty() ? std::string() : a.interests.front()].push_back(&a);
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
    for (auto& [interest, members] : groups) {
        deterministic_shuffle(members, rng);
        const auto take = std::min<std::size_t>(members.size(),
                                                static_cast<std::size_t>(cfg.sample_per_interest));
        selected.insert(selected.end(), members.begin(), members.begin() + take);
    }
    std::sort(selected.begin(), selected.end(),
              [](const auto* a, const auto* b) { return a->author_id < b->author_id; });
    return selected;
}

struct AuthorMetricsRow {
    std::string csv_line;
    ordered_json json_record;
    int c2_index = 0;
    double adjusted_c2 = 0.0;
};

AuthorMetricsRow compute_author_metrics(const cf::Corpus& corpus,
                                        const cf::AuthorProfile& profile) {
    const auto counts = cf::citing_paper_counts(corpus, profile.author_id);
    const auto all = cf::c2_summary(counts, /*include_self=*/true);
    const auto nonself = cf::c2_summary(counts, /*include_self=*/false);
    const int h = cf::h_index(cf::per_paper_citation_counts(corpus, profile.author_id));

    std::optional<int> peak_year;
    try {
        peak_year = cf::trajectory(profile, 0).peak_year;
    } catch (const cf::NotComputableError&) {
        // no citation history: peak column stays empty
    }
    std::optional<double> concentration;
    try {
        concentration = cf::bipartite_concentration(corpus, profile.author_id, 10);
    } catch (const cf::NotComputableError&) {
        // no citing papers
    }

    AuthorMetricsRow row;
    row.c2_index = all.c2_index;
    row.adjusted_c2 = all.adjusted_c2;
    row.csv_line = cf::csv_field(profile.author_id) + "," +
                   std::to_string(all.c2_index) + "," +
                   cf::format_double(all.c2_percentage) + "," +
                   cf::format_double(all.adjusted_c2) + "," + std::to_string(h) + "," +
                   (peak_year ? std::to_string(*peak_year) : std::string()) + "\n";

    ordered_json j;
    j["author_id"] = profile.author_id;
    j["name"] = profile.name;
    j["annual_citation_total"] = profile.total_annual_citations();
    j["resolved_citation_total"] = all.total_citations;
    j["all"] = c2_to_json(all);
    j["excluding_self"] = c2_to_json(nonself);
    j["h_index"] = h;
    if (peak_year) {
        j["peak_year"] = *peak_year;
    } else {
        j["peak_year"] = nullptr;
    }
    if (concentration) {
        j["bipartite_concentration_top10"] = *concentration;
    } else {
        j["bipartite_concentration_top10"] = nullptr;
    }
    row.json_record = std::move(j);
    return row;
}

std::string ccdf_csv(const std::vector<double>& values) {
    std::string out = "threshold,count\n";
    for (const auto& [threshold, count] : cf::ccdf(values)) {
        out += cf::format_double(threshold) + "," + std::to_string(count) + "\n";
    }
    return out;
}

int cmd_validate(const RunConfig& cfg) {
    const cf::Corpus corpus = load(cfg);
    ordered_json j;
    j["status"] = "ok";
    j["authors"] = corpus.authors().size();
    j["papers"] = corpus.papers().size();
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_metrics(const RunConfig& cfg) {
    const cf::Corpus corpus = load(cfg);
    if (corpus.authors().empty()) {
        throw cf::ValidationError({"no authors in corpus"});
    }
    const auto selected = select_authors(corpus, cfg);

    std::vector<AuthorMetricsRow> rows(selected.size());
    cf::parallel_for_chunks(selected.size(), 16, cf::effective_thread_count(cfg.threads),
                            [&](std::size_t, std::size_t begin, std::size_t end) {
                                for (std::size_t i = begin; i < end; ++i) {
                                    rows[i] = compute_author_metrics(corpus, *selected[i]);
                                }
                            });

    const fs::path out_dir(cfg.out_dir);
    if (cfg.format == "csv") {
        std::string csv = "author_id,c2_index,c2_percentage,adjusted_c2,h_index,peak_year\n";
        for (const auto& r : rows) csv += r.csv_line;
        cf::write_file(out_dir / "metrics.csv", csv);
    } else {
        ordered_json arr = ordered_json::array();
        for (auto& r : rows) arr.push_back(r.json_record);
        cf::write_file(out_dir / "metrics.json", arr.dump(2) + "\n");
    }

    std::vector<double> c2_values, adjusted_values;
    for (const auto& r : rows) {
        c2_values.push_back(static_cast<double>(r.c2_index));
        adjusted_values.push_back(r.adjusted_c2);
    }
    cf::write_file(out_dir / "ccdf_c2_index.csv", ccdf_csv(c2_values));
    cf::write_file(out_dir / "ccdf_adjusted_c2.csv", ccdf_csv(adjusted_values));
    return kOk;
}

ordered_json flags_to_json(const cf::Corpus& corpus, const RunConfig& cfg) {
    auto evidence = cf::flag_suspicious(corpus, cfg.spike, cfg.n_threshold);
    // Report order: strongest signal first.
    std::sort(evidence.begin(), evidence.end(), [](const auto& a, const auto& b) {
        if (a.c2.adjusted_c2 != b.c2.adjusted_c2) return a.c2.adjusted_c2 > b.c2.adjusted_c2;
        return a.author_id < b.author_id;
    });

    ordered_json j;
    j["note"] = "irregularity indicators, not verdicts of misconduct";
    j["n_threshold"] = cfg.n_threshold;
    ordered_json cfg_json;
    cfg_json["min_total_citations"] = cfg.spike.min_total_citations;
    cfg_json["min_publications"] = cfg.spike.min_publications;
    cfg_json["min_yoy_ratio"] = cfg.spike.min_yoy_ratio;
    cfg_json["min_share_of_total"] = cfg.spike.min_share_of_total;
    j["spike_filter"] = std::move(cfg_json);

    ordered_json flagged = ordered_json::array();
    for (const auto& ev : evidence) {
        ordered_json e;
        e["author_id"] = ev.author_id;
        e["spike"] = spike_to_json(ev.spike);
        ordered_json q = ordered_json::array();
        for (const auto& c : ev.qualifying) {
            ordered_json cj;
            cj["citing_paper_id"] = c.citing_paper_id;
            cj["n"] = c.n;
            cj["is_self_citation"] = c.is_self_citation;
            q.push_back(std::move(cj));
        }
        e["qualifying_citing_papers"] = std::move(q);
        e["c2_excluding_self"] = c2_to_json(ev.c2);
        flagged.push_back(std::move(e));
    }
    j["flagged"] = std::move(flagged);
    return j;
}

int cmd_flag(const RunConfig& cfg) {
    const cf::Corpus corpus = load(cfg);
    const ordered_json j = flags_to_json(corpus, cfg);
    cf::write_file(fs::path(cfg.out_dir) / "flags.json", j.dump(2) + "\n");
    return kOk;
}

std::vector<cf::PaperRecord> filtered_papers(const cf::Corpus& corpus,
                                             const RunConfig& cfg) {
    std::vector<cf::PaperRecord> papers;
    for (const auto& p : corpus.papers()) {
        if (!cfg.venue_filter.empty() && (!p.venue || *p.venue != cfg.venue_filter)) continue;
        if (cfg.year_filter_set && p.year != cfg.year_filter) continue;
        papers.push_back(p);
    }
    return papers;
}

int run_network(const cf::Corpus& corpus, const RunConfig& cfg) {
    const auto papers = filtered_papers(corpus, cfg);
    const auto network = cf::build_network(papers, cfg.similarity, cfg.threads);
    const auto components = cf::connected_components(network);
    const auto findings =
        cf::scan_clusters(corpus, network, components, cfg.mention_threshold);

    const fs::path out_dir(cfg.out_dir);
    cf::write_file(out_dir / "network.dot",
                   cf::network_to_dot(network, components, cfg.top_components));
    cf::write_file(out_dir / "nodes.csv", cf::network_nodes_csv(network));
    cf::write_file(out_dir / "edges.csv", cf::network_edges_csv(network));

    ordered_json comp_json = ordered_json::object();
    for (const auto& [component_id, members] : components) {
        if (component_id >= cfg.top_components) break;
        comp_json[std::to_string(component_id)] = members;
    }
    cf::write_file(out_dir / "components.json", comp_json.dump(2) + "\n");

    ordered_json findings_json = ordered_json::array();
    for (const auto& f : findings) {
        ordered_json fj;
        fj["component_id"] = f.component_id;
        fj["author_id"] = f.author_id;
        fj["mention_count"] = f.mention_count;
        fj["citing_paper_ids"] = f.citing_paper_ids;
        fj["consistency"] = f.consistency;
        findings_json.push_back(std::move(fj));
    }
    cf::write_file(out_dir / "findings.json", findings_json.dump(2) + "\n");
    return kOk;
}

int cmd_network(const RunConfig& cfg) {
    const cf::Corpus corpus = load(cfg);
    return run_network(corpus, cfg);
}

int cmd_sample(const RunConfig& cfg) {
    if (cfg.graph_path.empty() || cfg.seeds_csv.empty()) {
        throw CLI::RequiredError("--graph and --seeds");
    }
    const auto graph = cf::load_coauthor_graph(cfg.graph_path);
    std::set<std::string> seeds;
    std::string token;
    for (const char c : cfg.seeds_csv + ",") {
        if (c == ',') {
            if (!token.empty()) seeds.insert(token);
            token.clear();
        } else {
            token += c;
        }
    }
    const auto levels = cf::snowball_sample(graph, seeds, cfg.depth);

    std::string csv = "depth,new_authors\n";
    long long total = 0;
    for (const auto& [depth, members] : levels) {
        csv += std::to_string(depth) + "," + std::to_string(members.size()) + "\n";
        total += static_cast<long long>(members.size());
    }
    csv += "total," + std::to_string(total) + "\n";
    const fs::path out_dir(cfg.out_dir);
    cf::write_file(out_dir / "sample_counts.csv", csv);

    ordered_json members_json = ordered_json::object();
    for (const auto& [depth, members] : levels) {
        members_json[std::to_string(depth)] = members;
    }
    cf::write_file(out_dir / "sample_members.json", members_json.dump(2) + "\n");
    return kOk;
}

int cmd_report(const RunConfig& cfg) {
    const cf::Corpus corpus = load(cfg);
    if (corpus.authors().empty()) {
        throw cf::ValidationError({"no authors in corpus"});
    }

    RunConfig metrics_cfg = cfg;
    metrics_cfg.format = "csv";
    cmd_metrics(metrics_cfg);
    metrics_cfg.format = "json";
    cmd_metrics(metrics_cfg);

    const ordered_json flags = flags_to_json(corpus, cfg);
    cf::write_file(fs::path(cfg.out_dir) / "flags.json", flags.dump(2) + "\n");

    run_network(corpus, cfg);

    ordered_json summary;
    summary["authors"] = corpus.authors().size();
    summary["papers"] = corpus.papers().size();
    summary["flagged_authors"] = flags["flagged"].size();
    summary["outputs"] = {"metrics.csv",  "metrics.json",    "ccdf_c2_index.csv",
                          "ccdf_adjusted_c2.csv", "flags.json", "network.dot",
                          "nodes.csv",    "edges.csv",       "components.json",
                          "findings.json"};
    cf::write_file(fs::path(cfg.out_dir) / "report.json", summary.dump(2) + "\n");
    return kOk;
}

void emit_error(const std::string& kind, const std::vector<std::string>& errors) {
    ordered_json j;
    j["status"] = kind;
    j["errors"] = errors;
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"citation-forensics toolkit"};
    app.set_config("--config", "", "TOML-style config file (flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--authors", cfg.authors_path, "authors.jsonl path");
    app.add_option("--papers", cfg.papers_path, "papers.jsonl path");
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", cfg.format, "csv|json|dot")
        ->check(CLI::IsMember({"csv", "json", "dot"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized auxiliary features")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads,
                   "worker threads (0 = hardware; capped by CITEFORENSICS_THREADS)")
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "check corpus invariants");
    auto* metrics = app.add_subcommand("metrics", "per-author metric table + CCDFs");
    metrics->add_option("--sample-per-interest", cfg.sample_per_interest,
                        "stratified sample size per primary interest (requires --seed)");
    auto* flag = app.add_subcommand("flag", "suspicious-author evidence report");
    auto* network = app.add_subcommand("network", "shared-reference network + clusters");
    auto* sample = app.add_subcommand("sample", "snowball-sample a co-author graph");
    auto* report = app.add_subcommand("report", "metrics + flag + network bundle");

    for (auto* cmd : {flag, report}) {
        cmd->add_option("--min-total-citations", cfg.spike.min_total_citations)
            ->capture_default_str();
        cmd->add_option("--min-publications", cfg.spike.min_publications)
            ->capture_default_str();
        cmd->add_option("--min-yoy-ratio", cfg.spike.min_yoy_ratio)->capture_default_str();
        cmd->add_option("--min-share", cfg.spike.min_share_of_total)->capture_default_str();
        cmd->add_option("--n-threshold", cfg.n_threshold)->capture_default_str();
    }
    for (auto* cmd : {network, report}) {
        cmd->add_option("--threshold", cfg.similarity.threshold,
                        "similarity ratio a match must exceed")
            ->capture_default_str();
        cmd->add_option("--mention-threshold", cfg.mention_threshold)->capture_default_str();
        cmd->add_option("--components", cfg.top_components, "emit top-N components")
            ->capture_default_str();
        cmd->add_option("--venue", cfg.venue_filter, "restrict to one venue");
        cmd->add_option("--year", cfg.year_filter, "restrict to one year")
            ->each([&cfg](const std::string&) { cfg.year_filter_set = true; });
    }
    sample->add_option("--graph", cfg.graph_path, "co-author edge list (TSV)");
    sample->add_option("--seeds", cfg.seeds_csv, "comma-separated seed author ids");
    sample->add_option("--depth", cfg.depth, "maximum BFS depth")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArguments;
    }

    cfg.seed_set = app.count("--seed") > 0;
    if (metrics->parsed() && cfg.sample_per_interest > 0 && !cfg.seed_set) {
        std::cerr << "error: --sample-per-interest requires an explicit --seed\n";
        return kBadArguments;
    }
    if (metrics->parsed() && cfg.format == "dot") {
        std::cerr << "error: metrics supports --format csv or json\n";
        return kBadArguments;
    }

    try {
        if (validate->parsed()) return cmd_validate(cfg);
        if (metrics->parsed()) return cmd_metrics(cfg);
        if (flag->parsed()) return cmd_flag(cfg);
        if (network->parsed()) return cmd_network(cfg);
        if (sample->parsed()) return cmd_sample(cfg);
        if (report->parsed()) return cmd_report(cfg);
    } catch (const CLI::RequiredError& e) {
        std::cerr << "error: missing required option(s): " << e.what() << "\n";
        return kBadArguments;
    } catch (const cf::IoError& e) {
        emit_error("io_error", {e.what()});
        return kIoFailure;
    } catch (const cf::ParseError& e) {
        emit_error("parse_error", {e.what()});
        return kValidationFailure;
    } catch (const cf::ValidationError& e) {
        emit_error("invalid", e.issues());
        return kValidationFailure;
    } catch (const cf::Error& e) {
        emit_error("error", {e.what()});
        return kValidationFailure;
    }
    return kBadArguments;
}
