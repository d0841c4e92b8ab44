#include "citesim/calibrate.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "citesim/util.hpp"

namespace citesim {

namespace {

std::vector<double> linspace_by_step(double lo, double step, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(lo + step * i);
    return out;
}

}  // namespace

GridSpec GridSpec::defaults(ModelKind kind) {
    GridSpec g;
    switch (kind) {
        case ModelKind::PA:
            break;  // no parameters: a single cell
        case ModelKind::CP:
            g.p_copy_grid = linspace_by_step(0.0, 0.05, 21);
            break;
        case ModelKind::WYY:
            g.lambda_grid = linspace_by_step(0.0, 0.005, 101);
            break;
        default:
            g.lambda_grid = linspace_by_step(0.0, 0.005, 101);
            g.theta_grid = linspace_by_step(0.0, 0.05, 21);
            break;
    }
    return g;
}

void GridSpec::validate(ModelKind kind) const {
    if (seeds.empty()) throw DataError("grid spec: seeds must be nonempty");
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j)
            if (seeds[i] == seeds[j]) throw DataError("grid spec: seeds must be distinct");
    switch (kind) {
        case ModelKind::PA:
            break;
        case ModelKind::CP:
            if (p_copy_grid.empty()) throw DataError("grid spec: CP needs a p_copy grid");
            break;
        case ModelKind::WYY:
            if (lambda_grid.empty()) throw DataError("grid spec: WYY needs a lambda grid");
            break;
        default:
            if (lambda_grid.empty() || theta_grid.empty())
                throw DataError("grid spec: relay models need lambda and theta grids");
            break;
    }
}

const GridCell& CalibrationResult::best() const {
    if (!argmin) throw DataError("calibration produced no successful cell");
    return cells[*argmin];
}

void CalibrationResult::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out.precision(12);
    out << "lambda,theta,p_copy,distance,turnover,turnover_gap,divergence,objective,error\n";
    for (const GridCell& c : cells) {
        out << c.lambda << ',' << c.theta << ',' << c.p_copy << ',';
        if (c.ok())
            out << c.distance << ',' << c.turnover_sim << ',' << c.turnover_gap << ','
                << c.divergence << ',' << c.objective << ',';
        else
            out << ",,,,,\"" << c.error << '"';
        out << '\n';
    }
}

std::string CalibrationResult::argmin_json() const {
    const GridCell& c = best();
    std::ostringstream os;
    os.precision(17);
    os << "{\n";
    os << "  \"model\": \"" << to_string(kind) << "\",\n";
    os << "  \"lambda\": " << c.lambda << ",\n";
    os << "  \"theta\": " << c.theta << ",\n";
    os << "  \"p_copy\": " << c.p_copy << ",\n";
    os << "  \"distance\": " << c.distance << ",\n";
    os << "  \"turnover\": " << c.turnover_sim << ",\n";
    os << "  \"turnover_ref\": " << turnover_ref << ",\n";
    os << "  \"turnover_gap\": " << c.turnover_gap << ",\n";
    os << "  \"divergence\": " << c.divergence << ",\n";
    os << "  \"objective\": " << c.objective << "\n";
    os << "}";
    return os.str();
}

double objective(const BucketSignature& ref_f, const AgeGapHistogram& ref_h,
                 const BucketSignature& sim_f, const AgeGapHistogram& sim_h) {
    double d = distance(ref_f, sim_f);
    double gap = std::fabs(turnover(sim_f) - turnover(ref_f));
    double f = divergence(ref_h, sim_h);
    return d * gap * f;
}

namespace {

struct CellParams {
    double lambda;
    double theta;
    double p_copy;
};

std::vector<CellParams> enumerate_cells(ModelKind kind, const GridSpec& grid) {
    std::vector<CellParams> cells;
    switch (kind) {
        case ModelKind::PA:
            cells.push_back({0.0, 0.0, 0.0});
            break;
        case ModelKind::CP:
            for (double p : grid.p_copy_grid) cells.push_back({0.0, 0.0, p});
            break;
        case ModelKind::WYY:
            for (double l : grid.lambda_grid) cells.push_back({l, 0.0, 0.0});
            break;
        default:
            for (double l : grid.lambda_grid)
                for (double t : grid.theta_grid) cells.push_back({l, t, 0.0});
            break;
    }
    return cells;
}

}  // namespace

CalibrationResult grid_search(const Corpus& reference, const Corpus& warmup,
                              const ArrivalSchedule& schedule, ModelKind kind,
                              const GridSpec& grid, const BucketLayout& layout,
                              unsigned jobs) {
    grid.validate(kind);
    const BucketSignature ref_f = bucket_signature(reference, layout);
    const AgeGapHistogram ref_h = age_gap_histogram(reference);
    const double t_ref = turnover(ref_f);

    const std::vector<CellParams> params = enumerate_cells(kind, grid);
    CalibrationResult result;
    result.kind = kind;
    result.turnover_ref = t_ref;
    result.cells.resize(params.size());

    auto evaluate_cell = [&](std::size_t index) {
        GridCell& cell = result.cells[index];
        cell.lambda = params[index].lambda;
        cell.theta = params[index].theta;
        cell.p_copy = params[index].p_copy;
        try {
            double d_sum = 0.0, t_sum = 0.0, f_sum = 0.0;
            for (std::uint64_t seed : grid.seeds) {
                ModelConfig cfg = ModelConfig::make(kind);
                cfg.lambda = cell.lambda;
                cfg.theta = cell.theta;
                cfg.p_copy = cell.p_copy;
                cfg.seed = seed;
                SimulationResult run = simulate(warmup, schedule, cfg);
                BucketSignature sim_f = bucket_signature(run.graph, layout);
                AgeGapHistogram sim_h = age_gap_histogram(run.graph);
                d_sum += distance(ref_f, sim_f);
                t_sum += turnover(sim_f);
                f_sum += divergence(ref_h, sim_h);
            }
            const double n = static_cast<double>(grid.seeds.size());
            cell.distance = d_sum / n;
            cell.turnover_sim = t_sum / n;
            cell.turnover_gap = std::fabs(cell.turnover_sim - t_ref);
            cell.divergence = f_sum / n;
            cell.objective = cell.distance * cell.turnover_gap * cell.divergence;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(params.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < params.size(); ++i) evaluate_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= params.size()) return;
                    evaluate_cell(i);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    // First strictly-better cell wins: grid order already encodes the
    // smaller-lambda-then-smaller-theta tie break.
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const GridCell& c = result.cells[i];
        if (!c.ok()) continue;
        if (!result.argmin || c.objective < result.cells[*result.argmin].objective)
            result.argmin = i;
    }
    return result;
}

}  // namespace citesim
