#include "monospec/capture.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace monospec::capture {

namespace {

// Box-Muller over mt19937_64 so noise is reproducible across platforms
// (std::normal_distribution's sequence is implementation-defined).
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

  private:
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

void ArrayConfig::validate() const {
    if (rows < 1 || cols < 1) throw ConfigError("camera grid must be at least 1x1");
    if (gamma < 1) throw ConfigError("decimation factor must be >= 1");
    if (noise_sigma < 0.0) throw ConfigError("noise sigma must be non-negative");
    psf.validate();
    if (cells.size() != static_cast<std::size_t>(rows) * cols)
        throw ConfigError("cell list does not match the grid size");
    std::size_t count[3] = {0, 0, 0};
    for (const auto& cell : cells) count[static_cast<int>(cell.channel)]++;
    if (count[0] == 0 || count[1] == 0 || count[2] == 0)
        throw ConfigError("channel map must cover R, G and B");
    if (count[1] < count[0] || count[1] < count[2])
        throw ConfigError("channel map must have a green majority");
}

ArrayConfig ArrayConfig::default_grid(int rows, int cols, int gamma, ops::Psf psf,
                                      double noise_sigma) {
    ArrayConfig cfg;
    cfg.rows = rows;
    cfg.cols = cols;
    cfg.gamma = gamma;
    cfg.psf = std::move(psf);
    cfg.noise_sigma = noise_sigma;
    cfg.cells.resize(static_cast<std::size_t>(rows) * cols);
    // G R / B G tiling: half green, quarter red, quarter blue.
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            Channel ch;
            if (r % 2 == 0)
                ch = (c % 2 == 0) ? Channel::G : Channel::R;
            else
                ch = (c % 2 == 0) ? Channel::B : Channel::G;
            cfg.cells[static_cast<std::size_t>(r) * cols + c].channel = ch;
        }
    // Within each channel group, cycle the parallax phase over the
    // gamma x gamma sub-pixel grid so every group sees all phases.
    std::size_t group_index[3] = {0, 0, 0};
    for (auto& cell : cfg.cells) {
        std::size_t& j = group_index[static_cast<int>(cell.channel)];
        cell.shift.dx = static_cast<double>(j % gamma);
        cell.shift.dy = static_cast<double>((j / gamma) % gamma);
        ++j;
    }
    cfg.validate();
    return cfg;
}

void SubImageArray::validate() const {
    if (cells.size() != static_cast<std::size_t>(grid_rows) * grid_cols)
        throw DimensionError("sub-image count does not match the grid");
    if (cells.empty()) throw DimensionError("empty sub-image array");
    const int w = cells.front().plane.width;
    const int h = cells.front().plane.height;
    for (const auto& cell : cells)
        if (cell.plane.width != w || cell.plane.height != h)
            throw DimensionError("sub-images must share dimensions");
}

GrayPlane degrade(const GrayPlane& x, const ops::DegradeOp& op, double noise_sigma,
                  std::uint64_t rng_seed) {
    RealPlane low = ops::forward(to_real(x), op);
    if (noise_sigma > 0.0) {
        GaussianSampler noise(rng_seed);
        for (double& v : low.values) v += noise_sigma * noise.next();
    }
    return quantize(low);
}

SubImageArray generate_sia(const ColorImage& src, const ArrayConfig& cfg,
                           std::uint64_t rng_seed) {
    cfg.validate();
    if (src.width() % cfg.gamma != 0 || src.height() % cfg.gamma != 0)
        throw DimensionError("source dimensions must be divisible by the decimation factor");
    SubImageArray sia;
    sia.grid_rows = cfg.rows;
    sia.grid_cols = cfg.cols;
    sia.cells.reserve(cfg.cell_count());
    for (std::size_t k = 0; k < cfg.cell_count(); ++k) {
        const CellConfig& cell = cfg.cells[k];
        ops::DegradeOp op{cfg.gamma, cfg.psf, cell.shift};
        SubImage sub;
        sub.channel = cell.channel;
        sub.shift = cell.shift;
        sub.plane = degrade(channel_plane(src, cell.channel), op, cfg.noise_sigma,
                            mix_seed(rng_seed, k));
        sia.cells.push_back(std::move(sub));
    }
    return sia;
}

Mosaic mosaic(const SubImageArray& sia) {
    sia.validate();
    const int sw = sia.sub_width();
    const int sh = sia.sub_height();
    Mosaic out;
    out.layout.grid_rows = sia.grid_rows;
    out.layout.grid_cols = sia.grid_cols;
    out.layout.sub_width = sw;
    out.layout.sub_height = sh;
    out.plane = GrayPlane(sia.grid_cols * sw, sia.grid_rows * sh);
    out.layout.cells.reserve(sia.cells.size());
    for (int gr = 0; gr < sia.grid_rows; ++gr)
        for (int gc = 0; gc < sia.grid_cols; ++gc) {
            const SubImage& sub = sia.cells[static_cast<std::size_t>(gr) * sia.grid_cols + gc];
            out.layout.cells.push_back(CellConfig{sub.channel, sub.shift});
            for (int r = 0; r < sh; ++r)
                for (int c = 0; c < sw; ++c)
                    out.plane.at(gr * sh + r, gc * sw + c) = sub.plane.at(r, c);
        }
    return out;
}

SubImageArray demosaic(const GrayPlane& plane, const Layout& layout) {
    if (plane.width != layout.grid_cols * layout.sub_width ||
        plane.height != layout.grid_rows * layout.sub_height)
        throw DimensionError("mosaic dimensions do not match the layout");
    if (layout.cells.size() != static_cast<std::size_t>(layout.grid_rows) * layout.grid_cols)
        throw DimensionError("layout cell list does not match the grid");
    SubImageArray sia;
    sia.grid_rows = layout.grid_rows;
    sia.grid_cols = layout.grid_cols;
    sia.cells.reserve(layout.cells.size());
    for (int gr = 0; gr < layout.grid_rows; ++gr)
        for (int gc = 0; gc < layout.grid_cols; ++gc) {
            const CellConfig& meta =
                layout.cells[static_cast<std::size_t>(gr) * layout.grid_cols + gc];
            SubImage sub;
            sub.channel = meta.channel;
            sub.shift = meta.shift;
            sub.plane = GrayPlane(layout.sub_width, layout.sub_height);
            for (int r = 0; r < layout.sub_height; ++r)
                for (int c = 0; c < layout.sub_width; ++c)
                    sub.plane.at(r, c) =
                        plane.at(gr * layout.sub_height + r, gc * layout.sub_width + c);
            sia.cells.push_back(std::move(sub));
        }
    return sia;
}

Layout Layout::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "monospec-layout" || version != 1)
        throw IoError("unrecognized layout header");
    Layout layout;
    std::string word;
    if (!(in >> word) || word != "grid" || !(in >> layout.grid_rows >> layout.grid_cols))
        throw IoError("layout: malformed grid line");
    if (!(in >> word) || word != "sub" || !(in >> layout.sub_width >> layout.sub_height))
        throw IoError("layout: malformed sub line");
    const std::size_t n = static_cast<std::size_t>(layout.grid_rows) * layout.grid_cols;
    layout.cells.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        char ch;
        CellConfig cell;
        if (!(in >> word) || word != "cell" || !(in >> ch >> cell.shift.dx >> cell.shift.dy))
            throw IoError("layout: malformed cell line " + std::to_string(k));
        cell.channel = channel_from_letter(ch);
        layout.cells[k] = cell;
    }
    return layout;
}

std::string Layout::to_string() const {
    std::string out = "monospec-layout 1\n";
    out += "grid " + std::to_string(grid_rows) + " " + std::to_string(grid_cols) + "\n";
    out += "sub " + std::to_string(sub_width) + " " + std::to_string(sub_height) + "\n";
    char buf[96];
    for (const auto& cell : cells) {
        std::snprintf(buf, sizeof(buf), "cell %c %.17g %.17g\n", channel_letter(cell.channel),
                      cell.shift.dx, cell.shift.dy);
        out += buf;
    }
    return out;
}

GrayPlane synthetic_gray(int width, int height, std::uint64_t seed) {
    const ColorImage scene = synthetic_scene(width, height, seed);
    GrayPlane out(width, height);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y =
            0.299 * scene.r.pixels[i] + 0.587 * scene.g.pixels[i] + 0.114 * scene.b.pixels[i];
        out.pixels[i] = clamp_u8(y);
    }
    return out;
}

ColorImage synthetic_scene(int width, int height, std::uint64_t seed) {
    if (width < 1 || height < 1) throw DimensionError("scene dimensions must be positive");
    std::mt19937_64 engine(mix_seed(seed, 0));
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
    };

    struct Blob {
        double cx, cy, radius, amp[3];
    };
    std::vector<Blob> blobs(8);
    for (auto& blob : blobs) {
        blob.cx = uniform(0.0, width);
        blob.cy = uniform(0.0, height);
        blob.radius = uniform(0.08, 0.35) * std::min(width, height);
        for (double& a : blob.amp) a = uniform(-90.0, 90.0);
    }
    struct Box {
        int r0, c0, r1, c1;
        double amp[3];
    };
    std::vector<Box> boxes(4);
    for (auto& box : boxes) {
        box.r0 = static_cast<int>(uniform(0.0, height * 0.8));
        box.c0 = static_cast<int>(uniform(0.0, width * 0.8));
        box.r1 = box.r0 + std::max(2, static_cast<int>(uniform(0.05, 0.25) * height));
        box.c1 = box.c0 + std::max(2, static_cast<int>(uniform(0.05, 0.25) * width));
        for (double& a : box.amp) a = uniform(-70.0, 70.0);
    }
    const double gx = uniform(-60.0, 60.0);
    const double gy = uniform(-60.0, 60.0);

    ColorImage img(width, height);
    GrayPlane* planes[3] = {&img.r, &img.g, &img.b};
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            double base[3];
            for (int ch = 0; ch < 3; ++ch)
                base[ch] = 120.0 + gx * (static_cast<double>(c) / width - 0.5) +
                           gy * (static_cast<double>(r) / height - 0.5);
            for (const auto& blob : blobs) {
                const double d2 = (c - blob.cx) * (c - blob.cx) + (r - blob.cy) * (r - blob.cy);
                const double g = std::exp(-d2 / (2.0 * blob.radius * blob.radius));
                for (int ch = 0; ch < 3; ++ch) base[ch] += blob.amp[ch] * g;
            }
            for (const auto& box : boxes)
                if (r >= box.r0 && r < box.r1 && c >= box.c0 && c < box.c1)
                    for (int ch = 0; ch < 3; ++ch) base[ch] += box.amp[ch];
            for (int ch = 0; ch < 3; ++ch) planes[ch]->at(r, c) = clamp_u8(base[ch]);
        }
    return img;
}

}  // namespace monospec::capture
