#ifndef CITESIM_MODELS_HPP
#define CITESIM_MODELS_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "citesim/corpus.hpp"
#include "citesim/dyngraph.hpp"

namespace citesim {

enum class ModelKind { PA, CP, WYY, RRC, PRC, IRRC, IPRC };

enum class RelayDist { Uniform, DegreeProportional };

enum class OutDegreePolicy { Fixed, Sampled };

ModelKind model_kind_from_string(const std::string& name);
std::string to_string(ModelKind kind);

inline constexpr unsigned kUnboundedRelayDepth = std::numeric_limits<unsigned>::max();
// Iterated relays are guarded by a hop cap; hitting it is counted, not fatal.
inline constexpr unsigned kRelaySafetyCap = 10000;
// Rejection budget for distinct-target sampling, per new paper: 100 * m.
inline constexpr unsigned kResampleCapFactor = 100;

struct ModelConfig {
    ModelKind kind = ModelKind::PA;
    double lambda = 0.0;               // decay rate per year, >= 0
    double theta = 0.0;                // relay probability in [0,1]
    unsigned relay_depth = 1;          // R: 1 or kUnboundedRelayDepth
    RelayDist relay_dist = RelayDist::Uniform;
    double p_copy = 0.5;               // CP only
    OutDegreePolicy out_degree_policy = OutDegreePolicy::Fixed;
    int m = 9;                         // outlinks per paper under the fixed policy
    double eps_deg = 1.0;              // degree smoothing offset
    std::uint64_t seed = 0;

    // Fills the kind-determined fields (R and D).
    static ModelConfig make(ModelKind kind);
    void validate() const;
    bool is_relay() const {
        return kind == ModelKind::RRC || kind == ModelKind::PRC || kind == ModelKind::IRRC ||
               kind == ModelKind::IPRC;
    }
    std::string to_json() const;
};

struct SimulationStats {
    std::uint64_t papers_added = 0;
    std::uint64_t citations_added = 0;
    std::uint64_t relay_hops = 0;
    std::uint64_t relay_cap_hits = 0;
    std::uint64_t max_relay_hops = 0;
    std::uint64_t duplicate_rejections = 0;
};

// One growth model wired to an evolving graph: the graph, the attachment
// samplers, and the per-model target choosers. A simulation run owns exactly
// one engine; runs are independent and may execute in parallel.
class GrowthEngine {
public:
    GrowthEngine(const Corpus& warmup, const ModelConfig& config, int first_year);

    // Refresh year-scoped state (WYY decay factors) and set the clock.
    void begin_year(int year);
    int current_year() const { return year_; }

    // Draws m distinct targets per the configured model and appends the paper.
    NodeId add_paper(Rng& rng);
    // As above with the out-degree fixed by the caller.
    NodeId add_paper(int out_degree, Rng& rng);

    std::vector<NodeId> choose_targets(int m, Rng& rng);
    std::vector<NodeId> choose_targets_pa(int m, Rng& rng);
    std::vector<NodeId> choose_targets_cp(int m, Rng& rng);
    std::vector<NodeId> choose_targets_wyy(int m, Rng& rng);
    std::vector<NodeId> choose_targets_relay(int m, Rng& rng);

    // The relay-linking template: walk from u0 toward younger citers until the
    // age coin (head prob exp(-lambda*age)), the depth limit, the theta coin,
    // or an empty citer set stops the chain.
    NodeId relay_chain(NodeId u0, Rng& rng);

    NodeId draw_pa(Rng& rng);
    NodeId draw_wyy(Rng& rng);

    int draw_out_degree(int year, Rng& rng);

    const EvolvingGraph& graph() const { return graph_; }
    EvolvingGraph release_graph() { return std::move(graph_); }
    const ModelConfig& config() const { return config_; }
    const SimulationStats& stats() const { return stats_; }
    void attach_schedule(const ArrivalSchedule* schedule) { schedule_ = schedule; }

private:
    NodeId commit_paper(std::vector<NodeId> targets);
    NodeId draw_relay_dist(const std::vector<NodeId>& citers, Rng& rng);

    ModelConfig config_;
    EvolvingGraph graph_;
    WeightedSampler pa_sampler_;                       // weights k + eps
    std::unique_ptr<DecayedDegreeSampler> wyy_sampler_;  // WYY only
    const ArrivalSchedule* schedule_ = nullptr;        // for sampled out-degrees
    int year_;
    SimulationStats stats_;
};

struct SimulationResult {
    EvolvingGraph graph;
    SimulationStats stats;
};

// Grows the warmup graph year by year per the arrival schedule. Deterministic
// given (config, seed, warmup, schedule).
SimulationResult simulate(const Corpus& warmup, const ArrivalSchedule& schedule,
                          const ModelConfig& config);

}  // namespace citesim

#endif
