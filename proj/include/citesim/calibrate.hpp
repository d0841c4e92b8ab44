#ifndef CITESIM_CALIBRATE_HPP
#define CITESIM_CALIBRATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "citesim/corpus.hpp"
#include "citesim/models.hpp"
#include "citesim/signatures.hpp"

namespace citesim {

struct GridSpec {
    std::vector<double> lambda_grid;
    std::vector<double> theta_grid;
    std::vector<double> p_copy_grid;        // CP only
    std::vector<std::uint64_t> seeds{1, 2, 3};

    // lambda 0..0.5 step 0.005, theta 0..1 step 0.05: covers every published
    // optimum with at least one grid step to spare.
    static GridSpec defaults(ModelKind kind);
    void validate(ModelKind kind) const;
};

struct GridCell {
    double lambda = 0.0;
    double theta = 0.0;
    double p_copy = 0.0;

    // Seed-averaged observables; objective = distance * turnover_gap * divergence.
    double distance = 0.0;
    double turnover_sim = 0.0;
    double turnover_gap = 0.0;
    double divergence = 0.0;
    double objective = 0.0;
    std::string error;  // nonempty if every seed failed; cell excluded from argmin

    bool ok() const { return error.empty(); }
};

struct CalibrationResult {
    ModelKind kind = ModelKind::PA;
    double turnover_ref = 0.0;
    std::vector<GridCell> cells;            // grid order: lambda outer, theta inner
    std::optional<std::size_t> argmin;      // ties go to smaller lambda, then theta

    const GridCell& best() const;
    void write_csv(const std::string& path) const;
    std::string argmin_json() const;
};

// Eq.-style product objective d(F,F~) * |t(F~) - t(F)| * f(H||H~).
double objective(const BucketSignature& ref_f, const AgeGapHistogram& ref_h,
                 const BucketSignature& sim_f, const AgeGapHistogram& sim_h);

// Runs `simulate` for every grid cell and seed, averages the observables over
// seeds, and returns the full score table plus the argmin. `jobs` caps worker
// threads (0 = hardware concurrency). Results are identical at any job count.
CalibrationResult grid_search(const Corpus& reference, const Corpus& warmup,
                              const ArrivalSchedule& schedule, ModelKind kind,
                              const GridSpec& grid, const BucketLayout& layout,
                              unsigned jobs = 0);

}  // namespace citesim

#endif
