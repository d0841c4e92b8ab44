#ifndef CITESIM_DYNGRAPH_HPP
#define CITESIM_DYNGRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citesim/corpus.hpp"
#include "citesim/util.hpp"

namespace citesim {

using NodeId = std::uint32_t;

// Append-only citation graph under simulation. Out-edges are fixed at birth;
// in-edges only grow. in_degree(u) == citers(u).size() at all times.
class EvolvingGraph {
public:
    static EvolvingGraph from_corpus(const Corpus& corpus);

    // Appends a node born in `year` citing `targets` (distinct existing nodes).
    // An empty label is replaced by a generated "sim_<index>" one.
    NodeId add_node(int year, std::span<const NodeId> targets, std::string label = {});

    std::size_t node_count() const { return year_.size(); }
    std::uint64_t edge_count() const { return edge_count_; }
    int year(NodeId u) const { return year_[u]; }
    const std::string& label(NodeId u) const { return label_[u]; }
    std::uint32_t in_degree(NodeId u) const { return static_cast<std::uint32_t>(in_[u].size()); }
    // I(u, t): nodes citing u, in citation arrival order.
    const std::vector<NodeId>& citers(NodeId u) const { return in_[u]; }
    const std::vector<NodeId>& out_edges(NodeId u) const { return out_[u]; }

    template <class F>
    void for_each_edge_years(F&& f) const {
        for (NodeId u = 0; u < out_.size(); ++u)
            for (NodeId v : out_[u]) f(year_[u], year_[v]);
    }

    // Snapshot in corpus TSV format so signatures treat simulation output
    // exactly like ground truth.
    void export_tsv(const std::string& nodes_file, const std::string& edges_file) const;
    Corpus to_corpus() const;

private:
    std::vector<int> year_;
    std::vector<std::string> label_;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::uint64_t edge_count_ = 0;
};

// Exact dynamic weighted sampler over nodes 0..size-1 (Fenwick tree).
// insert/update/draw are O(log n); draw probability is weight(u)/total.
class WeightedSampler {
public:
    void push_back(double weight);
    void update(std::size_t node, double weight);
    void increment(std::size_t node, double delta) { update(node, weight_[node] + delta); }
    double weight(std::size_t node) const { return weight_[node]; }
    double total() const { return prefix_sum(weight_.size()); }
    std::size_t size() const { return weight_.size(); }

    // Draws node u with probability weight(u)/total.
    std::size_t draw(Rng& rng) const;

private:
    double prefix_sum(std::size_t count) const;
    std::vector<double> tree_;    // 1-based Fenwick partial sums
    std::vector<double> weight_;
};

// WYY attachment weights (k_u + eps) * exp(-lambda * (year - birth_u)).
// Decay factors refresh once per simulated year; within a year, degree
// increments reuse the year's factor.
class DecayedDegreeSampler {
public:
    // `year` must be >= every birth year that will be inserted before the
    // first refresh; ages are never negative.
    DecayedDegreeSampler(double lambda, double eps_deg, int year)
        : lambda_(lambda), eps_(eps_deg), year_(year) {}

    void insert(NodeId node, int birth_year);
    void refresh(int year);
    void on_citation(NodeId node);
    std::size_t draw(Rng& rng) const { return sampler_.draw(rng); }
    const WeightedSampler& sampler() const { return sampler_; }
    int current_year() const { return year_; }

private:
    double decay(int birth_year) const;
    double lambda_;
    double eps_;
    int year_ = 0;
    WeightedSampler sampler_;
    std::vector<double> base_;    // k + eps
    std::vector<int> birth_;
};

// Draw proportional to current in-degree + eps (Eq. of the PA attachment rule);
// the sampler's weights are maintained by the caller.
inline NodeId sample_pa(const WeightedSampler& sampler, Rng& rng) {
    return static_cast<NodeId>(sampler.draw(rng));
}

// Draw proportional to (k + eps) * exp(-lambda * age); weights must have been
// refreshed for the current simulated year.
inline NodeId sample_wyy(const DecayedDegreeSampler& sampler, Rng& rng) {
    return static_cast<NodeId>(sampler.draw(rng));
}

}  // namespace citesim

#endif
