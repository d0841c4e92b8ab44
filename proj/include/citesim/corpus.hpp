#ifndef CITESIM_CORPUS_HPP
#define CITESIM_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citesim {

struct Paper {
    std::string id;
    int year;
    bool operator==(const Paper&) const = default;
};

// Edge endpoints are indexes into Corpus::papers (citing, cited).
struct Edge {
    std::uint32_t citing;
    std::uint32_t cited;
    bool operator==(const Edge&) const = default;
};

// Per-category record of what the loader kept and what it dropped.
// retained + drops must add back up to the input counts, per category.
struct LoadReport {
    std::uint64_t paper_records = 0;
    std::uint64_t papers_retained = 0;
    std::uint64_t papers_bad_year = 0;       // missing or unparseable year
    std::uint64_t papers_out_of_range = 0;
    std::uint64_t papers_duplicate_id = 0;   // keep-first
    std::uint64_t papers_isolated = 0;       // no inlink and no outlink

    std::uint64_t edge_records = 0;
    std::uint64_t edges_retained = 0;
    std::uint64_t edges_dangling = 0;        // endpoint not in retained papers
    std::uint64_t edges_future = 0;          // cited year > citing year
    std::uint64_t edges_self_loop = 0;
    std::uint64_t edges_duplicate = 0;

    std::string to_json() const;
};

// Immutable timestamped citation corpus. Every edge satisfies
// year(citing) >= year(cited); every paper has at least one link.
class Corpus {
public:
    std::vector<Paper> papers;
    std::vector<Edge> edges;
    std::pair<int, int> year_range{0, 0};

    std::optional<std::uint32_t> find(const std::string& id) const;
    int year_of(std::uint32_t paper) const { return papers[paper].year; }
    std::uint64_t in_degree_as_of(std::uint32_t paper, int year) const;

    // Iterate (citing_year, cited_year) over all edges.
    template <class F>
    void for_each_edge_years(F&& f) const {
        for (const Edge& e : edges) f(papers[e.citing].year, papers[e.cited].year);
    }

    void rebuild_index();
    bool operator==(const Corpus& other) const {
        return papers == other.papers && edges == other.edges && year_range == other.year_range;
    }

private:
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct LoadedCorpus {
    Corpus corpus;
    LoadReport report;
};

// Loads papers (id<TAB>year) and edges (citing_id<TAB>cited_id) TSV files.
// Without a year_range, the observed min/max of retained papers is recorded.
// Structurally malformed records (wrong field count, empty id) raise DataError
// with the line number; papers whose year does not parse are dropped and
// counted, per the load-report contract.
LoadedCorpus load_corpus(const std::string& papers_file, const std::string& edges_file,
                         std::optional<std::pair<int, int>> year_range = std::nullopt);

// Writes the corpus back out in the same two-file TSV format. Reloading the
// output reproduces the corpus exactly (record order is preserved).
void save_corpus(const Corpus& corpus, const std::string& papers_file,
                 const std::string& edges_file);

// Induced subgraph on papers with year <= end_year. Isolated papers are kept:
// their links to later years simply are not visible yet.
Corpus extract_warmup(const Corpus& corpus, int end_year);

// Per-year arrival counts and out-degree statistics over [start, end].
class ArrivalSchedule {
public:
    ArrivalSchedule(int start, int end);

    int start_year() const { return start_; }
    int end_year() const { return end_; }
    std::uint64_t count(int year) const { return counts_[index(year)]; }
    double mean_out_degree(int year) const;
    double global_mean_out_degree() const;
    // Empirical out-degree histogram for one year (degree -> paper count);
    // backs the sampled out-degree policy.
    const std::map<int, std::uint64_t>& out_degree_hist(int year) const {
        return degree_hist_[index(year)];
    }
    const std::map<int, std::uint64_t>& global_out_degree_hist() const { return global_hist_; }
    std::uint64_t total_arrivals() const;

    void set_count(int year, std::uint64_t count) { counts_[index(year)] = count; }
    void record_paper(int year, int out_degree);
    std::uint64_t fingerprint() const;

private:
    std::size_t index(int year) const;
    int start_;
    int end_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::map<int, std::uint64_t>> degree_hist_;
    std::map<int, std::uint64_t> global_hist_;
};

ArrivalSchedule arrival_schedule(const Corpus& corpus, int start, int end);

// Induced subcorpus of papers carrying `label` in a TSV file (id<TAB>label).
Corpus slice_corpus(const Corpus& corpus, const std::string& paper_label_file,
                    const std::string& label);

}  // namespace citesim

#endif
