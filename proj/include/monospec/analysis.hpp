#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monospec/cipher.hpp"
#include "monospec/image.hpp"

namespace monospec::analysis {

// Exact 256-bin counts.
std::array<std::uint64_t, 256> histogram(const GrayPlane& img);

// Chi-square statistic of the counts against the uniform distribution
// (255 degrees of freedom). The 1% critical value is 310.46.
double chi_square_uniform(const std::array<std::uint64_t, 256>& counts);
inline constexpr double kChiSquare255Crit01 = 310.46;

// Mean-removed 2D autocorrelation surface, normalized so zero lag is 1.
// Lags (u,v) in [-max_lag_y, max_lag_y] x [-max_lag_x, max_lag_x].
struct AutocorrSurface {
    int max_lag_y = 0;
    int max_lag_x = 0;
    std::vector<double> values;  // row-major, (u + max_lag_y) * width + (v + max_lag_x)

    int width() const { return 2 * max_lag_x + 1; }
    int height() const { return 2 * max_lag_y + 1; }
    double at(int u, int v) const {
        return values[static_cast<std::size_t>(u + max_lag_y) * width() + (v + max_lag_x)];
    }
    double& at(int u, int v) {
        return values[static_cast<std::size_t>(u + max_lag_y) * width() + (v + max_lag_x)];
    }
};

// FFT-backed path (the production one).
AutocorrSurface autocorrelation(const GrayPlane& img, int max_lag_y, int max_lag_x);
// Brute-force path kept as the independent cross-check.
AutocorrSurface autocorrelation_direct(const GrayPlane& img, int max_lag_y, int max_lag_x);

// Mean |r| over all lags with max(|u|,|v|) > exclude_radius.
double mean_offpeak_abs(const AutocorrSurface& surface, int exclude_radius = 0);
double max_offpeak_abs(const AutocorrSurface& surface, int exclude_radius = 0);

// Surface rendered as a PGM heat map; r in [-1,1] maps linearly onto 0..255.
GrayPlane surface_to_heatmap(const AutocorrSurface& surface);

// Pearson correlation of horizontally / vertically adjacent pixel pairs.
double adjacent_correlation_horizontal(const GrayPlane& img);
double adjacent_correlation_vertical(const GrayPlane& img);

// Pearson correlation between two equal-sized images.
double pixel_correlation(const GrayPlane& a, const GrayPlane& b);

enum class OccludeRegion : std::uint8_t { block_topleft, random_pixels };

OccludeRegion occlude_region_from_string(const std::string& name);

// Zero out round(fraction * L) cipher bytes.
cipher::CipherText occlude(const cipher::CipherText& ct, double fraction, OccludeRegion region,
                           std::uint64_t seed);

// 10 log10(255^2 / MSE); +inf sentinel for identical inputs.
double psnr(const GrayPlane& a, const GrayPlane& b);
double psnr(const ColorImage& a, const ColorImage& b);

// Standard image-cipher difference metrics, both in [0, 100].
double npcr(const GrayPlane& a, const GrayPlane& b);
double uaci(const GrayPlane& a, const GrayPlane& b);

struct KeySensitivityReport {
    double npcr_percent = 0.0;
    double uaci_percent = 0.0;
    double correlation = 0.0;
    bool identical = false;  // PSNR-infinite flag for a zero perturbation
};

// Encrypt with the true key, decrypt with the perturbed key, compare the
// perturbed decryption against the correct one.
KeySensitivityReport key_sensitivity(const GrayPlane& plain, const cipher::CipherKey& true_key,
                                     const cipher::CipherKey& perturbed_key);

struct BenchRow {
    int width = 0;
    int height = 0;
    double seconds = 0.0;
    std::uint64_t touches = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double growth_exponent = 0.0;  // least-squares slope of log t vs log L
};

// Encrypt synthetic scenes of the given sizes and time each run.
BenchReport bench_scaling(const std::vector<std::pair<int, int>>& sizes,
                          const cipher::CipherKey& key, std::uint64_t image_seed);

std::string bench_csv(const BenchReport& report);

}  // namespace monospec::analysis
