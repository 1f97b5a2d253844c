#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "monospec/errors.hpp"

namespace monospec::chaos {

using Vec4 = std::array<double, 4>;

// Control parameters, initial state, burn-in and integration step of the
// 4D hyperchaotic Lorenz system.
struct HyperchaosKey {
    double a = 10.0;
    double b = 8.0 / 3.0;
    double c = 28.0;
    double r = -1.0;
    double x0 = 1.0;
    double y0 = 1.0;
    double z0 = 1.0;
    double w0 = 1.0;
    std::size_t burn_in = 150;  // N0
    double h = 0.001;

    Vec4 initial_state() const { return {x0, y0, z0, w0}; }
    void validate() const;

    // key = value lines, reals at 17 significant digits.
    static HyperchaosKey parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const HyperchaosKey&) const = default;
};

struct Trajectory {
    std::vector<Vec4> samples;  // sample i = state after i+1 RK4 steps
};

// Flow field: (a(y-x)+w, cx-y-xz, xy-bz, -yz+rw).
Vec4 derivative(const Vec4& state, const HyperchaosKey& key);

// One classical fixed-step RK4 update.
Vec4 rk4_step(const Vec4& state, const HyperchaosKey& key);

// `steps` RK4 samples from the key's initial state. Throws DivergenceError
// (with the step index) if any component leaves the finite range.
Trajectory integrate(const HyperchaosKey& key, std::size_t steps);

struct KeySequences {
    std::vector<double> x, y, z, w;
};

// Integrate burn_in + L/4 samples, discard the first burn_in, and return the
// four component sequences. L must be divisible by 4 (callers pad).
KeySequences key_sequences(const HyperchaosKey& key, std::size_t length);

// Benettin QR estimate of the four Lyapunov exponents, descending order.
// `span` is measured in model time units.
std::array<double, 4> lyapunov_spectrum(const HyperchaosKey& key, double span = 2000.0);

}  // namespace monospec::chaos
