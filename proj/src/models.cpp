#include "citesim/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "citesim/util.hpp"

namespace citesim {

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "pa") return ModelKind::PA;
    if (name == "cp") return ModelKind::CP;
    if (name == "wyy") return ModelKind::WYY;
    if (name == "rrc") return ModelKind::RRC;
    if (name == "prc") return ModelKind::PRC;
    if (name == "irrc") return ModelKind::IRRC;
    if (name == "iprc") return ModelKind::IPRC;
    throw DataError("unknown model: " + name);
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::PA: return "pa";
        case ModelKind::CP: return "cp";
        case ModelKind::WYY: return "wyy";
        case ModelKind::RRC: return "rrc";
        case ModelKind::PRC: return "prc";
        case ModelKind::IRRC: return "irrc";
        case ModelKind::IPRC: return "iprc";
    }
    throw std::logic_error("unreachable model kind");
}

ModelConfig ModelConfig::make(ModelKind kind) {
    ModelConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case ModelKind::RRC:
            cfg.relay_depth = 1;
            cfg.relay_dist = RelayDist::Uniform;
            break;
        case ModelKind::PRC:
            cfg.relay_depth = 1;
            cfg.relay_dist = RelayDist::DegreeProportional;
            break;
        case ModelKind::IRRC:
            cfg.relay_depth = kUnboundedRelayDepth;
            cfg.relay_dist = RelayDist::Uniform;
            break;
        case ModelKind::IPRC:
            cfg.relay_depth = kUnboundedRelayDepth;
            cfg.relay_dist = RelayDist::DegreeProportional;
            break;
        default:
            break;
    }
    return cfg;
}

void ModelConfig::validate() const {
    if (lambda < 0.0) throw DataError("model config: lambda must be >= 0");
    if (theta < 0.0 || theta > 1.0) throw DataError("model config: theta must be in [0,1]");
    if (p_copy < 0.0 || p_copy > 1.0) throw DataError("model config: p_copy must be in [0,1]");
    if (m < 1) throw DataError("model config: m must be >= 1");
    if (eps_deg < 0.0) throw DataError("model config: eps_deg must be >= 0");
    if (kind == ModelKind::RRC || kind == ModelKind::IRRC) {
        if (relay_dist != RelayDist::Uniform)
            throw DataError("model config: RRC/IRRC require the uniform relay distribution");
    }
    if (kind == ModelKind::PRC || kind == ModelKind::IPRC) {
        if (relay_dist != RelayDist::DegreeProportional)
            throw DataError("model config: PRC/IPRC require the degree-proportional relay distribution");
    }
    if (kind == ModelKind::RRC || kind == ModelKind::PRC) {
        if (relay_depth != 1) throw DataError("model config: RRC/PRC require R = 1");
    }
    if (kind == ModelKind::IRRC || kind == ModelKind::IPRC) {
        if (relay_depth != kUnboundedRelayDepth)
            throw DataError("model config: IRRC/IPRC require unbounded R");
    }
}

std::string ModelConfig::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\n";
    os << "    \"model\": \"" << to_string(kind) << "\",\n";
    os << "    \"lambda\": " << lambda << ",\n";
    os << "    \"theta\": " << theta << ",\n";
    os << "    \"relay_depth\": ";
    if (relay_depth == kUnboundedRelayDepth)
        os << "\"unbounded\"";
    else
        os << relay_depth;
    os << ",\n";
    os << "    \"relay_dist\": \""
       << (relay_dist == RelayDist::Uniform ? "uniform" : "degree") << "\",\n";
    os << "    \"p_copy\": " << p_copy << ",\n";
    os << "    \"out_degree\": \""
       << (out_degree_policy == OutDegreePolicy::Fixed ? "fixed:" + std::to_string(m)
                                                       : std::string("sampled"))
       << "\",\n";
    os << "    \"eps_deg\": " << eps_deg << ",\n";
    os << "    \"seed\": " << seed << "\n";
    os << "  }";
    return os.str();
}

GrowthEngine::GrowthEngine(const Corpus& warmup, const ModelConfig& config, int first_year)
    : config_(config), graph_(EvolvingGraph::from_corpus(warmup)), year_(first_year) {
    config_.validate();
    if (graph_.node_count() == 0) throw DataError("simulate: empty warmup");
    for (NodeId u = 0; u < graph_.node_count(); ++u)
        if (graph_.year(u) >= first_year)
            throw DataError("simulate: warmup contains papers born in or after the first "
                            "simulated year");

    for (NodeId u = 0; u < graph_.node_count(); ++u)
        pa_sampler_.push_back(graph_.in_degree(u) + config_.eps_deg);

    if (config_.kind == ModelKind::WYY) {
        wyy_sampler_ = std::make_unique<DecayedDegreeSampler>(config_.lambda, config_.eps_deg,
                                                              first_year);
        for (NodeId u = 0; u < graph_.node_count(); ++u) {
            wyy_sampler_->insert(u, graph_.year(u));
            for (std::uint32_t k = 0; k < graph_.in_degree(u); ++k) wyy_sampler_->on_citation(u);
        }
    }
}

void GrowthEngine::begin_year(int year) {
    year_ = year;
    if (wyy_sampler_) wyy_sampler_->refresh(year);
}

NodeId GrowthEngine::draw_pa(Rng& rng) { return sample_pa(pa_sampler_, rng); }

NodeId GrowthEngine::draw_wyy(Rng& rng) { return sample_wyy(*wyy_sampler_, rng); }

NodeId GrowthEngine::draw_relay_dist(const std::vector<NodeId>& citers, Rng& rng) {
    if (config_.relay_dist == RelayDist::Uniform)
        return citers[uniform_below(rng, citers.size())];
    // Degree-proportional over I(u,t), smoothed like the PA rule.
    double total = 0.0;
    for (NodeId v : citers) total += graph_.in_degree(v) + config_.eps_deg;
    double target = uniform01(rng) * total;
    double cum = 0.0;
    for (NodeId v : citers) {
        cum += graph_.in_degree(v) + config_.eps_deg;
        if (target < cum) return v;
    }
    return citers.back();
}

NodeId GrowthEngine::relay_chain(NodeId u0, Rng& rng) {
    NodeId u = u0;
    std::uint64_t hops = 0;
    for (unsigned r = 1;; ++r) {
        double age = static_cast<double>(year_ - graph_.year(u));
        if (uniform01(rng) < std::exp(-config_.lambda * age)) break;  // young enough
        if (r > config_.relay_depth) break;
        if (r > kRelaySafetyCap) {
            ++stats_.relay_cap_hits;
            break;
        }
        if (uniform01(rng) >= config_.theta) break;
        const std::vector<NodeId>& citers = graph_.citers(u);
        if (citers.empty()) break;  // nobody to relay to: cite the old paper anyway
        u = draw_relay_dist(citers, rng);
        ++hops;
    }
    stats_.relay_hops += hops;
    stats_.max_relay_hops = std::max(stats_.max_relay_hops, hops);
    return u;
}

namespace {

// Shared distinct-target rejection loop. draw() produces one candidate; the
// whole slot is redrawn on a duplicate, up to 100*m attempts.
template <class Draw>
std::vector<NodeId> fill_distinct(int m, std::size_t population, SimulationStats& stats,
                                  Draw&& draw) {
    if (m < 1) throw DataError("choose_targets: m must be >= 1");
    if (population < static_cast<std::size_t>(m))
        throw DataError("choose_targets: graph smaller than out-degree m");
    std::vector<NodeId> targets;
    targets.reserve(static_cast<std::size_t>(m));
    const std::uint64_t cap =
        static_cast<std::uint64_t>(kResampleCapFactor) * static_cast<std::uint64_t>(m);
    std::uint64_t attempts = 0;
    while (targets.size() < static_cast<std::size_t>(m)) {
        if (attempts++ >= cap)
            throw DataError("choose_targets: resampling cap exhausted after " +
                            std::to_string(cap) + " attempts");
        NodeId candidate = draw();
        if (std::find(targets.begin(), targets.end(), candidate) != targets.end()) {
            ++stats.duplicate_rejections;
            continue;
        }
        targets.push_back(candidate);
    }
    return targets;
}

}  // namespace

std::vector<NodeId> GrowthEngine::choose_targets_pa(int m, Rng& rng) {
    return fill_distinct(m, graph_.node_count(), stats_, [&] { return draw_pa(rng); });
}

std::vector<NodeId> GrowthEngine::choose_targets_wyy(int m, Rng& rng) {
    return fill_distinct(m, graph_.node_count(), stats_, [&] { return draw_wyy(rng); });
}

std::vector<NodeId> GrowthEngine::choose_targets_cp(int m, Rng& rng) {
    const auto population = graph_.node_count();
    // One reference paper per new paper; its citations are the copy pool.
    NodeId reference = static_cast<NodeId>(uniform_below(rng, population));
    const std::vector<NodeId>& pool = graph_.out_edges(reference);
    return fill_distinct(m, population, stats_, [&]() -> NodeId {
        if (!pool.empty() && uniform01(rng) < config_.p_copy)
            return pool[uniform_below(rng, pool.size())];
        return static_cast<NodeId>(uniform_below(rng, population));
    });
}

std::vector<NodeId> GrowthEngine::choose_targets_relay(int m, Rng& rng) {
    return fill_distinct(m, graph_.node_count(), stats_,
                         [&] { return relay_chain(draw_pa(rng), rng); });
}

std::vector<NodeId> GrowthEngine::choose_targets(int m, Rng& rng) {
    switch (config_.kind) {
        case ModelKind::PA: return choose_targets_pa(m, rng);
        case ModelKind::CP: return choose_targets_cp(m, rng);
        case ModelKind::WYY: return choose_targets_wyy(m, rng);
        default: return choose_targets_relay(m, rng);
    }
}

int GrowthEngine::draw_out_degree(int year, Rng& rng) {
    if (config_.out_degree_policy == OutDegreePolicy::Fixed) return config_.m;
    if (schedule_ == nullptr)
        throw DataError("sampled out-degree policy needs an arrival schedule");
    const auto& hist = schedule_->out_degree_hist(year).empty()
                           ? schedule_->global_out_degree_hist()
                           : schedule_->out_degree_hist(year);
    std::uint64_t total = 0;
    for (auto [deg, n] : hist) total += n;
    if (total == 0) return config_.m;
    std::uint64_t target = uniform_below(rng, total);
    std::uint64_t cum = 0;
    for (auto [deg, n] : hist) {
        cum += n;
        if (target < cum) return std::max(1, deg);
    }
    return config_.m;
}

NodeId GrowthEngine::commit_paper(std::vector<NodeId> targets) {
    NodeId id = graph_.add_node(year_, targets);
    pa_sampler_.push_back(config_.eps_deg);
    if (wyy_sampler_) wyy_sampler_->insert(id, year_);
    for (NodeId t : targets) {
        pa_sampler_.increment(t, 1.0);
        if (wyy_sampler_) wyy_sampler_->on_citation(t);
    }
    ++stats_.papers_added;
    stats_.citations_added += targets.size();
    return id;
}

NodeId GrowthEngine::add_paper(int out_degree, Rng& rng) {
    return commit_paper(choose_targets(out_degree, rng));
}

NodeId GrowthEngine::add_paper(Rng& rng) {
    return add_paper(draw_out_degree(year_, rng), rng);
}

SimulationResult simulate(const Corpus& warmup, const ArrivalSchedule& schedule,
                          const ModelConfig& config) {
    GrowthEngine engine(warmup, config, schedule.start_year());
    engine.attach_schedule(&schedule);
    Rng rng = make_rng(config.seed);
    for (int year = schedule.start_year(); year <= schedule.end_year(); ++year) {
        engine.begin_year(year);
        const std::uint64_t arrivals = schedule.count(year);
        for (std::uint64_t i = 0; i < arrivals; ++i) engine.add_paper(rng);
    }
    SimulationStats stats = engine.stats();
    return {engine.release_graph(), stats};
}

}  // namespace citesim
