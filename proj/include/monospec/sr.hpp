#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monospec/capture.hpp"
#include "monospec/image.hpp"
#include "monospec/operators.hpp"

namespace monospec::sr {

struct Observation {
    GrayPlane y;
    ops::DegradeOp op;
};

// One channel's restoration problem.
struct SrProblem {
    std::vector<Observation> observations;
    int highres_width = 0;
    int highres_height = 0;

    void validate() const;
};

enum class Regularizer : std::uint8_t { laplacian_l1, bilateral_tv };
enum class Estimator : std::uint8_t { sign_sum, scaled_median };

Regularizer regularizer_from_string(const std::string& name);
Estimator estimator_from_string(const std::string& name);
std::string to_string(Regularizer kind);
std::string to_string(Estimator kind);

struct SrConfig {
    double beta = 0.05;
    double lambda = 0.01;
    double eta = 1e-4;
    int max_iters = 200;
    Regularizer regularizer = Regularizer::laplacian_l1;
    Estimator estimator = Estimator::scaled_median;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double relative_error = 0.0;  // e at this update
    double data_objective = 0.0;  // sum over k of |forward(x) - y_k|_1 before the update
    double psnr_vs_reference = 0.0;  // NaN when no reference was supplied
};

struct SolveReport {
    RealPlane estimate;
    int iterations_used = 0;
    bool converged = false;  // e < eta (vs. the iteration cap)
    double final_data_objective = 0.0;
    std::vector<IterationRecord> history;
};

// Magnify-and-superimpose baseline: pixel replication, registered shift,
// per-pixel coverage normalization. Pixels nobody covers stay 0 and raise
// the warning flag.
GrayPlane ciir(const std::vector<Observation>& observations, int magnification,
               bool* coverage_warning = nullptr);

// Noiseless degradation model and its exact transpose.
RealPlane forward(const RealPlane& x, const ops::DegradeOp& op);
RealPlane adjoint(const RealPlane& r, const ops::DegradeOp& op, int hr_w, int hr_h);

// Subgradient of |U x|_1 for the configured high-pass family.
RealPlane regularizer_gradient(const RealPlane& x, Regularizer kind);

// Robust steepest-descent restoration; stops when the relative update
// falls under eta or the iteration cap hits.
SolveReport sr_solve(const SrProblem& problem, const SrConfig& cfg, const RealPlane& init,
                     const RealPlane* reference = nullptr);

// Group the SIA by channel, solve each independently (CIIR init), fuse.
ColorImage reconstruct_color(const capture::SubImageArray& sia, int gamma,
                             const ops::Psf& psf, const SrConfig& cfg);

// iteration,relative_error,data_objective[,psnr] CSV.
std::string iteration_csv(const SolveReport& report, bool with_psnr);

}  // namespace monospec::sr
