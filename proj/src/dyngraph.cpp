#include "citesim/dyngraph.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

namespace citesim {

EvolvingGraph EvolvingGraph::from_corpus(const Corpus& corpus) {
    EvolvingGraph g;
    const std::size_t n = corpus.papers.size();
    g.year_.reserve(n);
    g.label_.reserve(n);
    g.out_.resize(n);
    g.in_.resize(n);
    for (const Paper& p : corpus.papers) {
        g.year_.push_back(p.year);
        g.label_.push_back(p.id);
    }
    for (const Edge& e : corpus.edges) {
        g.out_[e.citing].push_back(e.cited);
        g.in_[e.cited].push_back(e.citing);
        ++g.edge_count_;
    }
    return g;
}

NodeId EvolvingGraph::add_node(int year, std::span<const NodeId> targets, std::string label) {
    const auto id = static_cast<NodeId>(year_.size());
    std::unordered_set<NodeId> seen;
    for (NodeId t : targets) {
        if (t == id) throw std::invalid_argument("add_node: self-citation attempt");
        if (t > id) throw std::invalid_argument("add_node: target not found: " + std::to_string(t));
        if (!seen.insert(t).second)
            throw std::invalid_argument("add_node: duplicate target: " + std::to_string(t));
    }
    year_.push_back(year);
    label_.push_back(label.empty() ? "sim_" + std::to_string(id) : std::move(label));
    out_.emplace_back(targets.begin(), targets.end());
    in_.emplace_back();
    for (NodeId t : targets) in_[t].push_back(id);
    edge_count_ += targets.size();
    return id;
}

void EvolvingGraph::export_tsv(const std::string& nodes_file, const std::string& edges_file) const {
    {
        std::unordered_set<std::string_view> ids;
        ids.reserve(label_.size());
        for (const std::string& id : label_)
            if (!ids.insert(id).second)
                throw DataError("graph export: duplicate node id: " + id);
    }
    std::ofstream nodes(nodes_file);
    if (!nodes) throw DataError("cannot write file: " + nodes_file);
    for (NodeId u = 0; u < year_.size(); ++u) nodes << label_[u] << '\t' << year_[u] << '\n';
    std::ofstream edges(edges_file);
    if (!edges) throw DataError("cannot write file: " + edges_file);
    for (NodeId u = 0; u < out_.size(); ++u)
        for (NodeId v : out_[u]) edges << label_[u] << '\t' << label_[v] << '\n';
}

Corpus EvolvingGraph::to_corpus() const {
    Corpus c;
    c.papers.reserve(year_.size());
    for (NodeId u = 0; u < year_.size(); ++u) c.papers.push_back({label_[u], year_[u]});
    c.edges.reserve(edge_count_);
    for (NodeId u = 0; u < out_.size(); ++u)
        for (NodeId v : out_[u]) c.edges.push_back({u, v});
    int lo = 0, hi = 0;
    if (!year_.empty()) {
        lo = hi = year_[0];
        for (int y : year_) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    c.year_range = {lo, hi};
    c.rebuild_index();
    return c;
}

void WeightedSampler::push_back(double weight) {
    if (weight < 0.0) throw std::invalid_argument("sampler: negative weight");
    weight_.push_back(weight);
    // Fenwick append: tree_[i] covers (i - lowbit(i), i], 1-based.
    std::size_t i = weight_.size();
    double sum = weight;
    std::size_t low = i - (i & (~i + 1));  // i - lowbit(i)
    sum += prefix_sum(i - 1) - prefix_sum(low);
    tree_.push_back(sum);
}

void WeightedSampler::update(std::size_t node, double weight) {
    if (weight < 0.0) throw std::invalid_argument("sampler: negative weight");
    double delta = weight - weight_[node];
    weight_[node] = weight;
    for (std::size_t i = node + 1; i <= tree_.size(); i += i & (~i + 1))
        tree_[i - 1] += delta;
}

double WeightedSampler::prefix_sum(std::size_t count) const {
    double sum = 0.0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) sum += tree_[i - 1];
    return sum;
}

std::size_t WeightedSampler::draw(Rng& rng) const {
    const std::size_t n = weight_.size();
    if (n == 0) throw std::logic_error("sampler: draw from empty sampler");
    double target = uniform01(rng) * total();

    // Descend the Fenwick tree for the first index with cumulative sum > target.
    std::size_t pos = 0;
    std::size_t mask = std::size_t{1} << (63 - __builtin_clzll(n));
    double remaining = target;
    while (mask > 0) {
        std::size_t next = pos + mask;
        if (next <= n && tree_[next - 1] <= remaining) {
            remaining -= tree_[next - 1];
            pos = next;
        }
        mask >>= 1;
    }
    // pos counts items whose cumulative sum is <= target; the draw is item pos.
    // Zero-weight items are skipped by the descent itself; the walk below only
    // fires when rounding pushes target to the very top of the range.
    if (pos >= n) pos = n - 1;
    while (pos > 0 && weight_[pos] == 0.0) --pos;
    return pos;
}

double DecayedDegreeSampler::decay(int birth_year) const {
    if (birth_year > year_)
        throw std::logic_error("decayed sampler: node born after current year");
    return std::exp(-lambda_ * static_cast<double>(year_ - birth_year));
}

void DecayedDegreeSampler::insert(NodeId node, int birth_year) {
    if (node != base_.size()) throw std::logic_error("decayed sampler: out-of-order insert");
    base_.push_back(eps_);
    birth_.push_back(birth_year);
    sampler_.push_back(eps_ * decay(birth_year));
}

void DecayedDegreeSampler::refresh(int year) {
    year_ = year;
    for (std::size_t u = 0; u < base_.size(); ++u)
        sampler_.update(u, base_[u] * decay(birth_[u]));
}

void DecayedDegreeSampler::on_citation(NodeId node) {
    base_[node] += 1.0;
    sampler_.update(node, base_[node] * decay(birth_[node]));
}

}  // namespace citesim
