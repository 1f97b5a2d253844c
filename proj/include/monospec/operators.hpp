#pragma once

#include <cstdint>
#include <vector>

#include "monospec/image.hpp"

namespace monospec::ops {

// Normalized blur kernel (entries >= 0, summing to 1).
struct Psf {
    int width = 1;
    int height = 1;
    std::vector<double> weights{1.0};

    double at(int r, int c) const { return weights[static_cast<std::size_t>(r) * width + c]; }
    void validate() const;
    bool is_identity() const { return width == 1 && height == 1; }

    static Psf identity();
    static Psf box(int size);
    // [1 2 1]^T [1 2 1] / 16
    static Psf binomial3();
};

// Pixel displacement of a sub-image view; fractional parts interpolate
// bilinearly, so the warp stays linear with an exact transpose.
struct Shift {
    double dx = 0.0;
    double dy = 0.0;
};

// One observation's operator triple: y = D(gamma) H(psf) W(shift) x.
struct DegradeOp {
    int gamma = 1;
    Psf psf;
    Shift shift;
};

// W: out(r,c) = in(r - dy, c - dx), coordinates clamped (replicate).
RealPlane warp(const RealPlane& in, const Shift& s);
RealPlane warp_adjoint(const RealPlane& in, const Shift& s);

// H: replicated-edge convolution.
RealPlane blur(const RealPlane& in, const Psf& psf);
RealPlane blur_adjoint(const RealPlane& in, const Psf& psf);

// D: keep every gamma-th pixel starting at (0,0); dims must divide evenly.
RealPlane decimate(const RealPlane& in, int gamma);
// D^T: zero insertion back to (out_h, out_w).
RealPlane decimate_adjoint(const RealPlane& in, int gamma, int out_w, int out_h);

// D H W x.
RealPlane forward(const RealPlane& x, const DegradeOp& op);
// W^T H^T D^T r; (hr_w, hr_h) are the high-resolution dims.
RealPlane adjoint(const RealPlane& r, const DegradeOp& op, int hr_w, int hr_h);

}  // namespace monospec::ops
