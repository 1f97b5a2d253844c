#include "monospec/operators.hpp"

#include <cmath>

namespace monospec::ops {

void Psf::validate() const {
    if (width <= 0 || height <= 0 ||
        weights.size() != static_cast<std::size_t>(width) * height)
        throw ConfigError("psf dimensions do not match its weight count");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("psf weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("psf weights must sum to 1");
}

Psf Psf::identity() { return Psf{}; }

Psf Psf::box(int size) {
    if (size < 1) throw ConfigError("box psf size must be >= 1");
    Psf p;
    p.width = p.height = size;
    p.weights.assign(static_cast<std::size_t>(size) * size, 1.0 / (size * size));
    return p;
}

Psf Psf::binomial3() {
    Psf p;
    p.width = p.height = 3;
    p.weights = {1.0 / 16, 2.0 / 16, 1.0 / 16, 2.0 / 16, 4.0 / 16,
                 2.0 / 16, 1.0 / 16, 2.0 / 16, 1.0 / 16};
    return p;
}

namespace {

int clamp_index(int v, int limit) { return v < 0 ? 0 : (v >= limit ? limit - 1 : v); }

// Enumerates the (index, weight) taps of the clamped bilinear read at
// (row - dy, col - dx); shared by warp and its adjoint so the two stay
// exact transposes.
template <typename Fn>
void for_each_warp_tap(int r, int c, const Shift& s, int width, int height, Fn&& fn) {
    const double sr = r - s.dy;
    const double sc = c - s.dx;
    const double fr0 = std::floor(sr);
    const double fc0 = std::floor(sc);
    const double wr = sr - fr0;
    const double wc = sc - fc0;
    const int r0 = static_cast<int>(fr0);
    const int c0 = static_cast<int>(fc0);
    if (wr == 0.0 && wc == 0.0) {
        fn(clamp_index(r0, height), clamp_index(c0, width), 1.0);
        return;
    }
    const int r1 = r0 + 1;
    const int c1 = c0 + 1;
    fn(clamp_index(r0, height), clamp_index(c0, width), (1.0 - wr) * (1.0 - wc));
    fn(clamp_index(r0, height), clamp_index(c1, width), (1.0 - wr) * wc);
    fn(clamp_index(r1, height), clamp_index(c0, width), wr * (1.0 - wc));
    fn(clamp_index(r1, height), clamp_index(c1, width), wr * wc);
}

}  // namespace

RealPlane warp(const RealPlane& in, const Shift& s) {
    RealPlane out(in.width, in.height);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) {
            double acc = 0.0;
            for_each_warp_tap(r, c, s, in.width, in.height,
                              [&](int rr, int cc, double w) { acc += w * in.at(rr, cc); });
            out.at(r, c) = acc;
        }
    return out;
}

RealPlane warp_adjoint(const RealPlane& in, const Shift& s) {
    RealPlane out(in.width, in.height, 0.0);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) {
            const double v = in.at(r, c);
            for_each_warp_tap(r, c, s, in.width, in.height,
                              [&](int rr, int cc, double w) { out.at(rr, cc) += w * v; });
        }
    return out;
}

RealPlane blur(const RealPlane& in, const Psf& psf) {
    psf.validate();
    if (psf.width > in.width || psf.height > in.height)
        throw ConfigError("psf kernel larger than the image");
    if (psf.is_identity()) return in;
    const int cy = psf.height / 2;
    const int cx = psf.width / 2;
    RealPlane out(in.width, in.height);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) {
            double acc = 0.0;
            for (int kr = 0; kr < psf.height; ++kr)
                for (int kc = 0; kc < psf.width; ++kc) {
                    const int rr = clamp_index(r + kr - cy, in.height);
                    const int cc = clamp_index(c + kc - cx, in.width);
                    acc += psf.at(kr, kc) * in.at(rr, cc);
                }
            out.at(r, c) = acc;
        }
    return out;
}

RealPlane blur_adjoint(const RealPlane& in, const Psf& psf) {
    psf.validate();
    if (psf.width > in.width || psf.height > in.height)
        throw ConfigError("psf kernel larger than the image");
    if (psf.is_identity()) return in;
    const int cy = psf.height / 2;
    const int cx = psf.width / 2;
    RealPlane out(in.width, in.height, 0.0);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) {
            const double v = in.at(r, c);
            for (int kr = 0; kr < psf.height; ++kr)
                for (int kc = 0; kc < psf.width; ++kc) {
                    const int rr = clamp_index(r + kr - cy, in.height);
                    const int cc = clamp_index(c + kc - cx, in.width);
                    out.at(rr, cc) += psf.at(kr, kc) * v;
                }
        }
    return out;
}

RealPlane decimate(const RealPlane& in, int gamma) {
    if (gamma < 1) throw ConfigError("decimation factor must be >= 1");
    if (gamma == 1) return in;
    if (in.width % gamma != 0 || in.height % gamma != 0)
        throw DimensionError("decimation factor must divide the image dimensions");
    RealPlane out(in.width / gamma, in.height / gamma);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) out.at(r, c) = in.at(r * gamma, c * gamma);
    return out;
}

RealPlane decimate_adjoint(const RealPlane& in, int gamma, int out_w, int out_h) {
    if (gamma < 1) throw ConfigError("decimation factor must be >= 1");
    if (out_w != in.width * gamma || out_h != in.height * gamma)
        throw DimensionError("decimation adjoint dims do not match");
    if (gamma == 1) return in;
    RealPlane out(out_w, out_h, 0.0);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) out.at(r * gamma, c * gamma) = in.at(r, c);
    return out;
}

RealPlane forward(const RealPlane& x, const DegradeOp& op) {
    return decimate(blur(warp(x, op.shift), op.psf), op.gamma);
}

RealPlane adjoint(const RealPlane& r, const DegradeOp& op, int hr_w, int hr_h) {
    return warp_adjoint(blur_adjoint(decimate_adjoint(r, op.gamma, hr_w, hr_h), op.psf),
                        op.shift);
}

}  // namespace monospec::ops
