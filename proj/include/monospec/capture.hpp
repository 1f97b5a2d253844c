#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monospec/image.hpp"
#include "monospec/operators.hpp"

namespace monospec::capture {

struct CellConfig {
    Channel channel = Channel::G;
    ops::Shift shift;
};

// Geometry and degradation model of the simulated monospectral camera grid.
struct ArrayConfig {
    int rows = 4;
    int cols = 4;
    int gamma = 2;
    ops::Psf psf = ops::Psf::binomial3();
    double noise_sigma = 0.0;
    std::vector<CellConfig> cells;

    std::size_t cell_count() const { return cells.size(); }
    void validate() const;

    // Bayer-like channel layout (G-majority) with per-channel shift phases
    // cycling through the gamma x gamma sub-pixel grid.
    static ArrayConfig default_grid(int rows, int cols, int gamma, ops::Psf psf,
                                    double noise_sigma);
};

struct SubImage {
    GrayPlane plane;
    Channel channel = Channel::G;
    ops::Shift shift;
};

struct SubImageArray {
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<SubImage> cells;  // row-major

    int sub_width() const { return cells.empty() ? 0 : cells.front().plane.width; }
    int sub_height() const { return cells.empty() ? 0 : cells.front().plane.height; }
    void validate() const;
};

// Everything needed to invert a mosaic exactly and rebuild the SR operators.
struct Layout {
    int grid_rows = 0;
    int grid_cols = 0;
    int sub_width = 0;
    int sub_height = 0;
    std::vector<CellConfig> cells;

    static Layout parse(const std::string& text);
    std::string to_string() const;
};

struct Mosaic {
    GrayPlane plane;
    Layout layout;
};

// One cell's observation: warp, blur, decimate, then additive Gaussian noise
// (seeded, rounded, clamped to [0,255]).
GrayPlane degrade(const GrayPlane& x, const ops::DegradeOp& op, double noise_sigma,
                  std::uint64_t rng_seed);

// Render the whole grid from a ground-truth color scene; cell k sees only its
// spectral channel and is seeded by (rng_seed, k).
SubImageArray generate_sia(const ColorImage& src, const ArrayConfig& cfg,
                           std::uint64_t rng_seed);

// Row-major tiling into one plane; the layout suffices to invert exactly.
Mosaic mosaic(const SubImageArray& sia);
SubImageArray demosaic(const GrayPlane& plane, const Layout& layout);

// Deterministic synthetic color scene (smooth blobs, gradients and a few hard
// edges) used by bench runs and fixtures.
ColorImage synthetic_scene(int width, int height, std::uint64_t seed);
GrayPlane synthetic_gray(int width, int height, std::uint64_t seed);

}  // namespace monospec::capture
