#include "citesim/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "citesim/util.hpp"

namespace citesim {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read file: " + path);
    return in;
}

std::string json_field(const char* name, std::uint64_t value, bool last = false) {
    std::ostringstream os;
    os << "  \"" << name << "\": " << value << (last ? "\n" : ",\n");
    return os.str();
}

}  // namespace

std::string LoadReport::to_json() const {
    std::ostringstream os;
    os << "{\n";
    os << json_field("paper_records", paper_records);
    os << json_field("papers_retained", papers_retained);
    os << json_field("papers_bad_year", papers_bad_year);
    os << json_field("papers_out_of_range", papers_out_of_range);
    os << json_field("papers_duplicate_id", papers_duplicate_id);
    os << json_field("papers_isolated", papers_isolated);
    os << json_field("edge_records", edge_records);
    os << json_field("edges_retained", edges_retained);
    os << json_field("edges_dangling", edges_dangling);
    os << json_field("edges_future", edges_future);
    os << json_field("edges_self_loop", edges_self_loop);
    os << json_field("edges_duplicate", edges_duplicate, true);
    os << "}";
    return os.str();
}

std::optional<std::uint32_t> Corpus::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t Corpus::in_degree_as_of(std::uint32_t paper, int year) const {
    std::uint64_t n = 0;
    for (const Edge& e : edges)
        if (e.cited == paper && papers[e.citing].year <= year) ++n;
    return n;
}

void Corpus::rebuild_index() {
    index_.clear();
    index_.reserve(papers.size());
    for (std::uint32_t i = 0; i < papers.size(); ++i) index_.emplace(papers[i].id, i);
}

LoadedCorpus load_corpus(const std::string& papers_file, const std::string& edges_file,
                         std::optional<std::pair<int, int>> year_range) {
    LoadedCorpus out;
    Corpus& corpus = out.corpus;
    LoadReport& report = out.report;

    // Pass 1: papers.
    {
        auto in = open_or_throw(papers_file);
        std::string line;
        std::size_t lineno = 0;
        std::unordered_map<std::string, std::uint32_t> seen;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            ++report.paper_records;
            auto fields = split_tsv(line);
            if (fields.size() != 2 || fields[0].empty())
                throw DataError(papers_file + ":" + std::to_string(lineno) +
                                ": malformed paper record (want id<TAB>year)");
            long long year = 0;
            if (!parse_int(fields[1], year)) {
                ++report.papers_bad_year;
                continue;
            }
            if (year_range && (year < year_range->first || year > year_range->second)) {
                ++report.papers_out_of_range;
                continue;
            }
            if (seen.contains(fields[0])) {
                ++report.papers_duplicate_id;
                continue;
            }
            seen.emplace(fields[0], static_cast<std::uint32_t>(corpus.papers.size()));
            corpus.papers.push_back({std::move(fields[0]), static_cast<int>(year)});
        }
        corpus.rebuild_index();
    }

    // Pass 2: edges.
    {
        auto in = open_or_throw(edges_file);
        std::string line;
        std::size_t lineno = 0;
        std::unordered_set<std::uint64_t> seen_pairs;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            ++report.edge_records;
            auto fields = split_tsv(line);
            if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
                throw DataError(edges_file + ":" + std::to_string(lineno) +
                                ": malformed edge record (want citing<TAB>cited)");
            auto citing = corpus.find(fields[0]);
            auto cited = corpus.find(fields[1]);
            if (!citing || !cited) {
                ++report.edges_dangling;
                continue;
            }
            if (*citing == *cited) {
                ++report.edges_self_loop;
                continue;
            }
            if (corpus.papers[*cited].year > corpus.papers[*citing].year) {
                ++report.edges_future;
                continue;
            }
            std::uint64_t key = (static_cast<std::uint64_t>(*citing) << 32) | *cited;
            if (!seen_pairs.insert(key).second) {
                ++report.edges_duplicate;
                continue;
            }
            corpus.edges.push_back({*citing, *cited});
        }
    }

    // Pass 3: drop isolated papers and remap edges.
    {
        std::vector<bool> linked(corpus.papers.size(), false);
        for (const Edge& e : corpus.edges) {
            linked[e.citing] = true;
            linked[e.cited] = true;
        }
        std::vector<std::uint32_t> remap(corpus.papers.size());
        std::vector<Paper> kept;
        kept.reserve(corpus.papers.size());
        for (std::uint32_t i = 0; i < corpus.papers.size(); ++i) {
            if (!linked[i]) {
                ++report.papers_isolated;
                continue;
            }
            remap[i] = static_cast<std::uint32_t>(kept.size());
            kept.push_back(std::move(corpus.papers[i]));
        }
        corpus.papers = std::move(kept);
        for (Edge& e : corpus.edges) {
            e.citing = remap[e.citing];
            e.cited = remap[e.cited];
        }
        corpus.rebuild_index();
    }

    report.papers_retained = corpus.papers.size();
    report.edges_retained = corpus.edges.size();
    if (corpus.papers.empty()) throw DataError("empty corpus after filtering");

    if (year_range) {
        corpus.year_range = *year_range;
    } else {
        int lo = std::numeric_limits<int>::max();
        int hi = std::numeric_limits<int>::min();
        for (const Paper& p : corpus.papers) {
            lo = std::min(lo, p.year);
            hi = std::max(hi, p.year);
        }
        corpus.year_range = {lo, hi};
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::string& papers_file,
                 const std::string& edges_file) {
    std::ofstream papers(papers_file);
    if (!papers) throw DataError("cannot write file: " + papers_file);
    for (const Paper& p : corpus.papers) papers << p.id << '\t' << p.year << '\n';
    std::ofstream edges(edges_file);
    if (!edges) throw DataError("cannot write file: " + edges_file);
    for (const Edge& e : corpus.edges)
        edges << corpus.papers[e.citing].id << '\t' << corpus.papers[e.cited].id << '\n';
}

Corpus extract_warmup(const Corpus& corpus, int end_year) {
    Corpus out;
    std::vector<std::uint32_t> remap(corpus.papers.size(),
                                     std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < corpus.papers.size(); ++i) {
        if (corpus.papers[i].year > end_year) continue;
        remap[i] = static_cast<std::uint32_t>(out.papers.size());
        out.papers.push_back(corpus.papers[i]);
    }
    if (out.papers.empty()) throw DataError("empty warmup: no papers published by " +
                                            std::to_string(end_year));
    const auto missing = std::numeric_limits<std::uint32_t>::max();
    for (const Edge& e : corpus.edges)
        if (remap[e.citing] != missing && remap[e.cited] != missing)
            out.edges.push_back({remap[e.citing], remap[e.cited]});
    out.year_range = {corpus.year_range.first, end_year};
    out.rebuild_index();
    return out;
}

ArrivalSchedule::ArrivalSchedule(int start, int end) : start_(start), end_(end) {
    if (end < start) throw DataError("arrival schedule: end year before start year");
    std::size_t years = static_cast<std::size_t>(end - start) + 1;
    counts_.assign(years, 0);
    degree_hist_.resize(years);
}

std::size_t ArrivalSchedule::index(int year) const {
    if (year < start_ || year > end_)
        throw DataError("arrival schedule: year " + std::to_string(year) + " outside [" +
                        std::to_string(start_) + "," + std::to_string(end_) + "]");
    return static_cast<std::size_t>(year - start_);
}

void ArrivalSchedule::record_paper(int year, int out_degree) {
    std::size_t i = index(year);
    ++counts_[i];
    ++degree_hist_[i][out_degree];
    ++global_hist_[out_degree];
}

double ArrivalSchedule::mean_out_degree(int year) const {
    std::size_t i = index(year);
    if (counts_[i] == 0) return 0.0;
    double total = 0.0;
    for (auto [deg, n] : degree_hist_[i]) total += static_cast<double>(deg) * n;
    return total / static_cast<double>(counts_[i]);
}

double ArrivalSchedule::global_mean_out_degree() const {
    std::uint64_t papers = total_arrivals();
    if (papers == 0) return 0.0;
    double total = 0.0;
    for (auto [deg, n] : global_hist_) total += static_cast<double>(deg) * n;
    return total / static_cast<double>(papers);
}

std::uint64_t ArrivalSchedule::total_arrivals() const {
    std::uint64_t total = 0;
    for (auto c : counts_) total += c;
    return total;
}

std::uint64_t ArrivalSchedule::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) { h = fnv1a(&v, sizeof v, h); };
    mix(static_cast<std::uint64_t>(start_));
    mix(static_cast<std::uint64_t>(end_));
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        mix(counts_[i]);
        for (auto [deg, n] : degree_hist_[i]) {
            mix(static_cast<std::uint64_t>(deg));
            mix(n);
        }
    }
    return h;
}

ArrivalSchedule arrival_schedule(const Corpus& corpus, int start, int end) {
    ArrivalSchedule schedule(start, end);
    std::vector<int> out_degree(corpus.papers.size(), 0);
    for (const Edge& e : corpus.edges) ++out_degree[e.citing];
    for (std::uint32_t i = 0; i < corpus.papers.size(); ++i) {
        int year = corpus.papers[i].year;
        if (year < start || year > end) continue;
        schedule.record_paper(year, out_degree[i]);
    }
    return schedule;
}

Corpus slice_corpus(const Corpus& corpus, const std::string& paper_label_file,
                    const std::string& label) {
    auto in = open_or_throw(paper_label_file);
    std::string line;
    std::size_t lineno = 0;
    bool label_known = false;
    std::unordered_set<std::string> members;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_tsv(line);
        if (fields.size() != 2 || fields[0].empty())
            throw DataError(paper_label_file + ":" + std::to_string(lineno) +
                            ": malformed label record (want id<TAB>label)");
        if (fields[1] == label) {
            label_known = true;
            members.insert(fields[0]);
        }
    }
    if (!label_known) throw DataError("unknown label: " + label);

    Corpus out;
    std::vector<std::uint32_t> remap(corpus.papers.size(),
                                     std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < corpus.papers.size(); ++i) {
        if (!members.contains(corpus.papers[i].id)) continue;
        remap[i] = static_cast<std::uint32_t>(out.papers.size());
        out.papers.push_back(corpus.papers[i]);
    }
    if (out.papers.empty()) throw DataError("empty slice for label: " + label);
    const auto missing = std::numeric_limits<std::uint32_t>::max();
    for (const Edge& e : corpus.edges)
        if (remap[e.citing] != missing && remap[e.cited] != missing)
            out.edges.push_back({remap[e.citing], remap[e.cited]});
    out.year_range = corpus.year_range;
    out.rebuild_index();
    return out;
}

}  // namespace citesim
