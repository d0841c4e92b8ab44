#ifndef CITESIM_SIGNATURES_HPP
#define CITESIM_SIGNATURES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "citesim/corpus.hpp"
#include "citesim/dyngraph.hpp"

namespace citesim {

// Small probabilities are floored at this value before ratios/logs; every
// application is counted so results stay auditable.
inline constexpr double kSmoothingFloor = 1e-9;

// Count of citation links per integer age gap g = year(citing) - year(cited).
struct AgeGapHistogram {
    std::map<int, std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(int gap, std::uint64_t n = 1);
    // Fraction of links with gap >= threshold.
    double tail_mass(int threshold) const;
    void write_csv(const std::string& path) const;
};

AgeGapHistogram age_gap_histogram(const Corpus& corpus);
AgeGapHistogram age_gap_histogram(const EvolvingGraph& graph);

struct DivergenceResult {
    double value;
    std::uint64_t floor_events;  // union-support cells floored in either histogram
};

// KL divergence (natural log) between the two histograms normalized over their
// union support, with kSmoothingFloor applied before renormalizing.
DivergenceResult divergence_detail(const AgeGapHistogram& ref, const AgeGapHistogram& sim);
double divergence(const AgeGapHistogram& ref, const AgeGapHistogram& sim);

struct BucketLayout {
    int first_bucket_start;  // first year of bucket 1; earlier years fold into P_0
    int bucket_width;
    int bucket_count;        // N

    // Bucket of `year`: 0 for the sentinel, 1..N otherwise.
    int bucket_of(int year) const;
    int last_year() const { return first_bucket_start + bucket_width * bucket_count - 1; }
    bool operator==(const BucketLayout&) const = default;
};

BucketLayout make_layout(int first_bucket_start, int end_year, int bucket_width);

// Column-stochastic citation-fraction matrix F(i,j) = C(i,j)/C(j) over
// temporal buckets, 0 <= i <= j, 1 <= j <= N, with sentinel row 0.
// Columns whose papers make no citations are undefined and excluded from
// distance/turnover (the exclusion is reported by those functions).
class BucketSignature {
public:
    BucketSignature(BucketLayout layout);

    const BucketLayout& layout() const { return layout_; }
    int bucket_count() const { return layout_.bucket_count; }
    std::uint64_t raw(int i, int j) const;     // C(i,j)
    std::uint64_t column_total(int j) const;   // C(j)
    double fraction(int i, int j) const;       // F(i,j); 0 when column undefined
    bool column_defined(int j) const { return column_total(j) > 0; }
    std::uint64_t edge_total() const;

    void count_edge(int citing_year, int cited_year);
    void write_csv(const std::string& path) const;

private:
    BucketLayout layout_;
    std::vector<std::vector<std::uint64_t>> counts_;  // counts_[j-1][i], i in 0..j
};

BucketSignature bucket_signature(const Corpus& corpus, int bucket_width, int first_bucket_start);
BucketSignature bucket_signature(const Corpus& corpus, const BucketLayout& layout);
BucketSignature bucket_signature(const EvolvingGraph& graph, const BucketLayout& layout);

struct DistanceResult {
    double sum;          // the displayed double-sum formula
    double average;      // sum / compared columns (the prose reading, reported too)
    int compared_columns;
    int excluded_columns;  // undefined in either matrix, skipped symmetrically
};

// L1 discrepancy between two signatures with identical layouts.
DistanceResult distance_detail(const BucketSignature& a, const BucketSignature& b);
double distance(const BucketSignature& a, const BucketSignature& b);

struct TurnoverResult {
    double value;
    std::uint64_t floor_events;
    std::uint64_t ratio_terms;  // (N+2)(N-1)/2 when no column is excluded
};

// Geometric mean of column-to-column decay ratios F(i,j)/F(i,j+1).
TurnoverResult turnover_detail(const BucketSignature& f);
double turnover(const BucketSignature& f);

// The three scores bundled the way the CLI and calibration report them.
struct SignatureScores {
    double distance;
    double distance_avg;
    double turnover_ref;
    double turnover_sim;
    double divergence;
    std::uint64_t divergence_floor_events;
    std::uint64_t turnover_floor_events;
    int excluded_columns;

    std::string to_json() const;
};

SignatureScores score_pair(const BucketSignature& ref_f, const AgeGapHistogram& ref_h,
                           const BucketSignature& sim_f, const AgeGapHistogram& sim_h);

// Fraction of year-y outbound citations that target papers published before
// year y - offset, per publication year y (§ entrenchment curves).
struct YearSeries {
    std::vector<int> years;
    std::vector<double> values;
};

std::map<int, YearSeries> fraction_to_old_curves(const Corpus& corpus,
                                                 const std::vector<int>& offsets);

// Fraction of year-y citations landing inside a fixed target set.
YearSeries target_set_decay(const Corpus& corpus, const std::vector<std::uint32_t>& target_set,
                            int start_year, int end_year);

struct DegreeDistribution {
    std::map<std::uint32_t, std::uint64_t> counts;  // in-degree -> node count
    std::uint64_t node_total = 0;

    // P(K >= k) at each observed degree k.
    std::vector<std::pair<std::uint32_t, double>> ccdf() const;
    void write_ccdf_csv(const std::string& path) const;
};

DegreeDistribution degree_distribution(const Corpus& corpus);
DegreeDistribution degree_distribution(const EvolvingGraph& graph);

void write_year_series_csv(const std::string& path, const YearSeries& series);
void write_curves_csv(const std::string& path, const std::map<int, YearSeries>& curves);

}  // namespace citesim

#endif
