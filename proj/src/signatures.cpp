#include "citesim/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "citesim/util.hpp"

namespace citesim {

void AgeGapHistogram::add(int gap, std::uint64_t n) {
    if (gap < 0) throw std::invalid_argument("age gap must be >= 0");
    counts[gap] += n;
    total += n;
}

double AgeGapHistogram::tail_mass(int threshold) const {
    if (total == 0) return 0.0;
    std::uint64_t tail = 0;
    for (auto it = counts.lower_bound(threshold); it != counts.end(); ++it) tail += it->second;
    return static_cast<double>(tail) / static_cast<double>(total);
}

void AgeGapHistogram::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "gap,count\n";
    for (auto [gap, n] : counts) out << gap << ',' << n << '\n';
}

namespace {

template <class Source>
AgeGapHistogram gap_histogram_impl(const Source& source) {
    AgeGapHistogram h;
    source.for_each_edge_years([&h](int citing, int cited) { h.add(citing - cited); });
    return h;
}

}  // namespace

AgeGapHistogram age_gap_histogram(const Corpus& corpus) { return gap_histogram_impl(corpus); }
AgeGapHistogram age_gap_histogram(const EvolvingGraph& graph) { return gap_histogram_impl(graph); }

DivergenceResult divergence_detail(const AgeGapHistogram& ref, const AgeGapHistogram& sim) {
    if (ref.total == 0 || sim.total == 0)
        throw DataError("divergence: empty histogram");

    std::set<int> support;
    for (auto& [g, n] : ref.counts)
        if (n > 0) support.insert(g);
    for (auto& [g, n] : sim.counts)
        if (n > 0) support.insert(g);

    std::vector<double> p, q;
    p.reserve(support.size());
    q.reserve(support.size());
    std::uint64_t floor_events = 0;
    auto mass = [&floor_events](const AgeGapHistogram& h, int gap) {
        auto it = h.counts.find(gap);
        double value = it == h.counts.end()
                           ? 0.0
                           : static_cast<double>(it->second) / static_cast<double>(h.total);
        if (value < kSmoothingFloor) {
            value = kSmoothingFloor;
            ++floor_events;
        }
        return value;
    };
    double psum = 0.0, qsum = 0.0;
    for (int g : support) {
        p.push_back(mass(ref, g));
        q.push_back(mass(sim, g));
        psum += p.back();
        qsum += q.back();
    }

    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double pi = p[i] / psum;
        double qi = q[i] / qsum;
        kl += pi * std::log(pi / qi);
    }
    // Gibbs: exact zero for identical inputs, and never negative.
    if (kl < 0.0 && kl > -1e-15) kl = 0.0;
    return {kl, floor_events};
}

double divergence(const AgeGapHistogram& ref, const AgeGapHistogram& sim) {
    return divergence_detail(ref, sim).value;
}

int BucketLayout::bucket_of(int year) const {
    if (year < first_bucket_start) return 0;
    int b = (year - first_bucket_start) / bucket_width + 1;
    if (b > bucket_count)
        throw DataError("bucket layout does not cover year " + std::to_string(year));
    return b;
}

BucketLayout make_layout(int first_bucket_start, int end_year, int bucket_width) {
    if (bucket_width <= 0) throw DataError("bucket width must be positive");
    if (end_year < first_bucket_start) throw DataError("bucket layout: end before start");
    int n = (end_year - first_bucket_start) / bucket_width + 1;
    return {first_bucket_start, bucket_width, n};
}

BucketSignature::BucketSignature(BucketLayout layout) : layout_(layout) {
    if (layout.bucket_count < 1) throw DataError("bucket signature needs >= 1 bucket");
    counts_.resize(static_cast<std::size_t>(layout.bucket_count));
    for (int j = 1; j <= layout.bucket_count; ++j)
        counts_[static_cast<std::size_t>(j - 1)].assign(static_cast<std::size_t>(j) + 1, 0);
}

std::uint64_t BucketSignature::raw(int i, int j) const {
    if (j < 1 || j > layout_.bucket_count || i < 0 || i > layout_.bucket_count)
        throw std::out_of_range("bucket signature index");
    if (i > j) return 0;
    return counts_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
}

std::uint64_t BucketSignature::column_total(int j) const {
    std::uint64_t total = 0;
    for (int i = 0; i <= j; ++i) total += raw(i, j);
    return total;
}

double BucketSignature::fraction(int i, int j) const {
    std::uint64_t cj = column_total(j);
    if (cj == 0) return 0.0;
    return static_cast<double>(raw(i, j)) / static_cast<double>(cj);
}

std::uint64_t BucketSignature::edge_total() const {
    std::uint64_t total = 0;
    for (int j = 1; j <= layout_.bucket_count; ++j) total += column_total(j);
    return total;
}

void BucketSignature::count_edge(int citing_year, int cited_year) {
    int j = layout_.bucket_of(citing_year);
    if (j == 0) return;  // sentinel papers' own citations are outside F
    int i = layout_.bucket_of(cited_year);
    if (i > j) throw DataError("bucket signature: citation into a later bucket");
    ++counts_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
}

void BucketSignature::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "cited_bucket,citing_bucket,fraction,count\n";
    for (int j = 1; j <= layout_.bucket_count; ++j)
        for (int i = 0; i <= j; ++i)
            out << i << ',' << j << ',' << fraction(i, j) << ',' << raw(i, j) << '\n';
}

namespace {

template <class Source>
BucketSignature bucket_signature_impl(const Source& source, const BucketLayout& layout) {
    BucketSignature f(layout);
    source.for_each_edge_years(
        [&f](int citing, int cited) { f.count_edge(citing, cited); });
    return f;
}

}  // namespace

BucketSignature bucket_signature(const Corpus& corpus, int bucket_width, int first_bucket_start) {
    return bucket_signature_impl(
        corpus, make_layout(first_bucket_start, corpus.year_range.second, bucket_width));
}

BucketSignature bucket_signature(const Corpus& corpus, const BucketLayout& layout) {
    return bucket_signature_impl(corpus, layout);
}

BucketSignature bucket_signature(const EvolvingGraph& graph, const BucketLayout& layout) {
    return bucket_signature_impl(graph, layout);
}

DistanceResult distance_detail(const BucketSignature& a, const BucketSignature& b) {
    if (!(a.layout() == b.layout())) throw DataError("distance: bucket layout mismatch");
    DistanceResult result{0.0, 0.0, 0, 0};
    for (int j = 1; j <= a.bucket_count(); ++j) {
        if (!a.column_defined(j) || !b.column_defined(j)) {
            ++result.excluded_columns;
            continue;
        }
        for (int i = 0; i <= j; ++i) result.sum += std::fabs(a.fraction(i, j) - b.fraction(i, j));
        ++result.compared_columns;
    }
    result.average = result.compared_columns > 0
                         ? result.sum / static_cast<double>(result.compared_columns)
                         : 0.0;
    return result;
}

double distance(const BucketSignature& a, const BucketSignature& b) {
    return distance_detail(a, b).sum;
}

TurnoverResult turnover_detail(const BucketSignature& f) {
    const int n = f.bucket_count();
    if (n < 2) throw DataError("turnover needs >= 2 buckets");
    double log_product = 0.0;
    std::uint64_t terms = 0;
    std::uint64_t floor_events = 0;
    auto floored = [&floor_events](double x) {
        if (x < kSmoothingFloor) {
            x = kSmoothingFloor;
            ++floor_events;
        }
        return x;
    };
    for (int j = 1; j <= n - 1; ++j) {
        if (!f.column_defined(j) || !f.column_defined(j + 1)) continue;
        for (int i = 0; i <= j; ++i) {
            log_product += std::log(floored(f.fraction(i, j)) / floored(f.fraction(i, j + 1)));
            ++terms;
        }
    }
    if (terms == 0) throw DataError("turnover: no comparable consecutive columns");
    // Exponent 2/((N+2)(N-1)) is exactly 1/terms when every column is defined.
    double value = std::exp(log_product / static_cast<double>(terms));
    return {value, floor_events, terms};
}

double turnover(const BucketSignature& f) { return turnover_detail(f).value; }

std::string SignatureScores::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\n";
    os << "  \"distance\": " << distance << ",\n";
    os << "  \"distance_avg\": " << distance_avg << ",\n";
    os << "  \"turnover_ref\": " << turnover_ref << ",\n";
    os << "  \"turnover_sim\": " << turnover_sim << ",\n";
    os << "  \"turnover_gap\": " << std::fabs(turnover_sim - turnover_ref) << ",\n";
    os << "  \"divergence\": " << divergence << ",\n";
    os << "  \"log_base\": \"e\",\n";
    os << "  \"divergence_floor_events\": " << divergence_floor_events << ",\n";
    os << "  \"turnover_floor_events\": " << turnover_floor_events << ",\n";
    os << "  \"excluded_columns\": " << excluded_columns << "\n";
    os << "}";
    return os.str();
}

SignatureScores score_pair(const BucketSignature& ref_f, const AgeGapHistogram& ref_h,
                           const BucketSignature& sim_f, const AgeGapHistogram& sim_h) {
    SignatureScores s{};
    auto d = distance_detail(ref_f, sim_f);
    auto t_ref = turnover_detail(ref_f);
    auto t_sim = turnover_detail(sim_f);
    auto f = divergence_detail(ref_h, sim_h);
    s.distance = d.sum;
    s.distance_avg = d.average;
    s.excluded_columns = d.excluded_columns;
    s.turnover_ref = t_ref.value;
    s.turnover_sim = t_sim.value;
    s.turnover_floor_events = t_ref.floor_events + t_sim.floor_events;
    s.divergence = f.value;
    s.divergence_floor_events = f.floor_events;
    return s;
}

std::map<int, YearSeries> fraction_to_old_curves(const Corpus& corpus,
                                                 const std::vector<int>& offsets) {
    for (int t : offsets)
        if (t <= 0) throw DataError("fraction_to_old_curves: offsets must be positive");

    // Outbound citation counts per publication year: total and per offset.
    std::map<int, std::uint64_t> total_by_year;
    std::map<int, std::map<int, std::uint64_t>> old_by_year;  // year -> offset -> count
    corpus.for_each_edge_years([&](int citing, int cited) {
        ++total_by_year[citing];
        for (int t : offsets)
            if (cited < citing - t) ++old_by_year[citing][t];
    });

    std::map<int, YearSeries> curves;
    for (int t : offsets) {
        YearSeries& series = curves[t];
        for (auto [year, total] : total_by_year) {
            series.years.push_back(year);
            std::uint64_t old_count = 0;
            auto yit = old_by_year.find(year);
            if (yit != old_by_year.end()) {
                auto oit = yit->second.find(t);
                if (oit != yit->second.end()) old_count = oit->second;
            }
            series.values.push_back(static_cast<double>(old_count) /
                                    static_cast<double>(total));
        }
    }
    return curves;
}

YearSeries target_set_decay(const Corpus& corpus, const std::vector<std::uint32_t>& target_set,
                            int start_year, int end_year) {
    if (target_set.empty()) throw DataError("target_set_decay: empty target set");
    std::vector<bool> in_set(corpus.papers.size(), false);
    for (auto p : target_set) in_set.at(p) = true;

    std::map<int, std::pair<std::uint64_t, std::uint64_t>> by_year;  // year -> (hits, total)
    for (const Edge& e : corpus.edges) {
        int year = corpus.papers[e.citing].year;
        if (year < start_year || year > end_year) continue;
        auto& [hits, total] = by_year[year];
        ++total;
        if (in_set[e.cited]) ++hits;
    }

    YearSeries series;
    for (int y = start_year; y <= end_year; ++y) {
        auto it = by_year.find(y);
        if (it == by_year.end()) continue;  // no outbound citations that year
        series.years.push_back(y);
        series.values.push_back(static_cast<double>(it->second.first) /
                                static_cast<double>(it->second.second));
    }
    return series;
}

DegreeDistribution degree_distribution(const Corpus& corpus) {
    std::vector<std::uint32_t> in_degree(corpus.papers.size(), 0);
    for (const Edge& e : corpus.edges) ++in_degree[e.cited];
    DegreeDistribution d;
    d.node_total = corpus.papers.size();
    for (auto k : in_degree) ++d.counts[k];
    return d;
}

DegreeDistribution degree_distribution(const EvolvingGraph& graph) {
    DegreeDistribution d;
    d.node_total = graph.node_count();
    for (NodeId u = 0; u < graph.node_count(); ++u) ++d.counts[graph.in_degree(u)];
    return d;
}

std::vector<std::pair<std::uint32_t, double>> DegreeDistribution::ccdf() const {
    std::vector<std::pair<std::uint32_t, double>> out;
    if (node_total == 0) return out;
    // Walk degrees descending, accumulating P(K >= k).
    std::uint64_t at_least = 0;
    std::vector<std::pair<std::uint32_t, double>> reversed;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        at_least += it->second;
        reversed.emplace_back(it->first,
                              static_cast<double>(at_least) / static_cast<double>(node_total));
    }
    out.assign(reversed.rbegin(), reversed.rend());
    return out;
}

void DegreeDistribution::write_ccdf_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "degree,ccdf\n";
    for (auto [k, p] : ccdf()) out << k << ',' << p << '\n';
}

void write_year_series_csv(const std::string& path, const YearSeries& series) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "year,value\n";
    for (std::size_t i = 0; i < series.years.size(); ++i)
        out << series.years[i] << ',' << series.values[i] << '\n';
}

void write_curves_csv(const std::string& path, const std::map<int, YearSeries>& curves) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "offset,year,value\n";
    for (const auto& [offset, series] : curves)
        for (std::size_t i = 0; i < series.years.size(); ++i)
            out << offset << ',' << series.years[i] << ',' << series.values[i] << '\n';
}

}  // namespace citesim
