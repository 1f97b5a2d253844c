#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "monospec/errors.hpp"

namespace monospec {

// 8-bit single-channel raster, row-major. The common currency of capture,
// cipher and SR observations.
struct GrayPlane {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayPlane() = default;
    GrayPlane(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw DimensionError("GrayPlane dimensions must be positive");
    }

    std::size_t size() const { return pixels.size(); }
    std::uint8_t& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * width + c]; }
    std::uint8_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * width + c]; }

    bool operator==(const GrayPlane&) const = default;
};

// Real-valued plane used inside the SR solver; quantized only at output.
struct RealPlane {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    RealPlane() = default;
    RealPlane(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw DimensionError("RealPlane dimensions must be positive");
    }

    std::size_t size() const { return values.size(); }
    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * width + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
};

struct ColorImage {
    GrayPlane r, g, b;

    ColorImage() = default;
    ColorImage(int w, int h) : r(w, h), g(w, h), b(w, h) {}

    int width() const { return r.width; }
    int height() const { return r.height; }

    bool operator==(const ColorImage&) const = default;
};

enum class Channel : std::uint8_t { R, G, B };

inline char channel_letter(Channel c) {
    switch (c) {
        case Channel::R: return 'R';
        case Channel::G: return 'G';
        default: return 'B';
    }
}

inline Channel channel_from_letter(char c) {
    switch (c) {
        case 'R': return Channel::R;
        case 'G': return Channel::G;
        case 'B': return Channel::B;
        default: throw ConfigError(std::string("unknown channel letter '") + c + "'");
    }
}

inline const GrayPlane& channel_plane(const ColorImage& img, Channel c) {
    switch (c) {
        case Channel::R: return img.r;
        case Channel::G: return img.g;
        default: return img.b;
    }
}

inline RealPlane to_real(const GrayPlane& g) {
    RealPlane out(g.width, g.height);
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = g.pixels[i];
    return out;
}

inline std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

inline GrayPlane quantize(const RealPlane& x) {
    GrayPlane out(x.width, x.height);
    for (std::size_t i = 0; i < x.size(); ++i) out.pixels[i] = clamp_u8(x.values[i]);
    return out;
}

}  // namespace monospec
