#include "monospec/hyperchaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace monospec::chaos {

namespace {

bool finite(const Vec4& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]) &&
           std::isfinite(v[3]);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void HyperchaosKey::validate() const {
    if (!(h > 0.0)) throw ConfigError("integration step h must be positive");
    if (!finite(initial_state())) throw ConfigError("initial state must be finite");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(r))
        throw ConfigError("control parameters must be finite");
}

HyperchaosKey HyperchaosKey::parse(const std::string& text) {
    std::map<std::string, std::string> fields;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed key line: '" + line + "'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    HyperchaosKey key;
    auto real = [&](const char* name, double& out) {
        auto it = fields.find(name);
        if (it == fields.end()) throw ConfigError(std::string("missing key field: ") + name);
        out = std::stod(it->second);
    };
    real("a", key.a);
    real("b", key.b);
    real("c", key.c);
    real("r", key.r);
    real("x0", key.x0);
    real("y0", key.y0);
    real("z0", key.z0);
    real("w0", key.w0);
    real("h", key.h);
    auto it = fields.find("N0");
    if (it == fields.end()) throw ConfigError("missing key field: N0");
    key.burn_in = static_cast<std::size_t>(std::stoull(it->second));
    key.validate();
    return key;
}

std::string HyperchaosKey::to_string() const {
    std::string out;
    out += "a = " + fmt17(a) + "\n";
    out += "b = " + fmt17(b) + "\n";
    out += "c = " + fmt17(c) + "\n";
    out += "r = " + fmt17(r) + "\n";
    out += "x0 = " + fmt17(x0) + "\n";
    out += "y0 = " + fmt17(y0) + "\n";
    out += "z0 = " + fmt17(z0) + "\n";
    out += "w0 = " + fmt17(w0) + "\n";
    out += "N0 = " + std::to_string(burn_in) + "\n";
    out += "h = " + fmt17(h) + "\n";
    return out;
}

Vec4 derivative(const Vec4& s, const HyperchaosKey& key) {
    const double x = s[0], y = s[1], z = s[2], w = s[3];
    return {key.a * (y - x) + w, key.c * x - y - x * z, x * y - key.b * z,
            -y * z + key.r * w};
}

Vec4 rk4_step(const Vec4& s, const HyperchaosKey& key) {
    const double h = key.h;
    const Vec4 k1 = derivative(s, key);
    Vec4 t;
    for (int i = 0; i < 4; ++i) t[i] = s[i] + 0.5 * h * k1[i];
    const Vec4 k2 = derivative(t, key);
    for (int i = 0; i < 4; ++i) t[i] = s[i] + 0.5 * h * k2[i];
    const Vec4 k3 = derivative(t, key);
    for (int i = 0; i < 4; ++i) t[i] = s[i] + h * k3[i];
    const Vec4 k4 = derivative(t, key);
    Vec4 out;
    for (int i = 0; i < 4; ++i)
        out[i] = s[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

Trajectory integrate(const HyperchaosKey& key, std::size_t steps) {
    key.validate();
    if (steps < 1) throw ConfigError("integration requires steps >= 1");
    Trajectory traj;
    traj.samples.reserve(steps);
    Vec4 state = key.initial_state();
    for (std::size_t i = 0; i < steps; ++i) {
        state = rk4_step(state, key);
        if (!finite(state)) throw DivergenceError("hyperchaos trajectory diverged", i + 1);
        traj.samples.push_back(state);
    }
    return traj;
}

KeySequences key_sequences(const HyperchaosKey& key, std::size_t length) {
    key.validate();
    if (length % 4 != 0) throw ConfigError("key sequence length must be divisible by 4");
    const std::size_t per_component = length / 4;
    KeySequences seq;
    seq.x.reserve(per_component);
    seq.y.reserve(per_component);
    seq.z.reserve(per_component);
    seq.w.reserve(per_component);
    Vec4 state = key.initial_state();
    const std::size_t total = key.burn_in + per_component;
    for (std::size_t i = 0; i < total; ++i) {
        state = rk4_step(state, key);
        if (!finite(state)) throw DivergenceError("hyperchaos trajectory diverged", i + 1);
        if (i >= key.burn_in) {
            seq.x.push_back(state[0]);
            seq.y.push_back(state[1]);
            seq.z.push_back(state[2]);
            seq.w.push_back(state[3]);
        }
    }
    return seq;
}

namespace {

// Jacobian-vector product of the flow at state s.
Vec4 jacobian_apply(const Vec4& s, const Vec4& v, const HyperchaosKey& key) {
    const double x = s[0], y = s[1], z = s[2];
    return {
        -key.a * v[0] + key.a * v[1] + v[3],
        (key.c - z) * v[0] - v[1] - x * v[2],
        y * v[0] + x * v[1] - key.b * v[2],
        -z * v[1] - y * v[2] + key.r * v[3],
    };
}

// RK4 update of one tangent vector along the trajectory; the base state at
// the substages follows the same staging as rk4_step.
Vec4 tangent_rk4_step(const Vec4& s, const Vec4& v, const HyperchaosKey& key) {
    const double h = key.h;
    const Vec4 k1s = derivative(s, key);
    const Vec4 k1 = jacobian_apply(s, v, key);

    Vec4 s2, v2;
    for (int i = 0; i < 4; ++i) {
        s2[i] = s[i] + 0.5 * h * k1s[i];
        v2[i] = v[i] + 0.5 * h * k1[i];
    }
    const Vec4 k2s = derivative(s2, key);
    const Vec4 k2 = jacobian_apply(s2, v2, key);

    Vec4 s3, v3;
    for (int i = 0; i < 4; ++i) {
        s3[i] = s[i] + 0.5 * h * k2s[i];
        v3[i] = v[i] + 0.5 * h * k2[i];
    }
    const Vec4 k3s = derivative(s3, key);
    const Vec4 k3 = jacobian_apply(s3, v3, key);

    Vec4 s4, v4;
    for (int i = 0; i < 4; ++i) {
        s4[i] = s[i] + h * k3s[i];
        v4[i] = v[i] + h * k3[i];
    }
    const Vec4 k4 = jacobian_apply(s4, v4, key);

    Vec4 out;
    for (int i = 0; i < 4; ++i)
        out[i] = v[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

}  // namespace

std::array<double, 4> lyapunov_spectrum(const HyperchaosKey& key, double span) {
    key.validate();
    if (!(span > 0.0)) throw ConfigError("Lyapunov span must be positive");

    // Settle onto the attractor before accumulating.
    const std::size_t settle_steps = static_cast<std::size_t>(100.0 / key.h);
    Vec4 state = key.initial_state();
    for (std::size_t i = 0; i < settle_steps; ++i) {
        state = rk4_step(state, key);
        if (!finite(state)) throw DivergenceError("hyperchaos trajectory diverged", i + 1);
    }

    std::array<Vec4, 4> basis = {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0},
                                 Vec4{0, 0, 0, 1}};
    std::array<double, 4> log_sum = {0, 0, 0, 0};

    const std::size_t total_steps = static_cast<std::size_t>(span / key.h);
    const std::size_t reorth_every = 10;
    std::size_t done = 0;
    while (done < total_steps) {
        const std::size_t burst = std::min(reorth_every, total_steps - done);
        for (std::size_t k = 0; k < burst; ++k) {
            std::array<Vec4, 4> next_basis;
            for (int j = 0; j < 4; ++j) next_basis[j] = tangent_rk4_step(state, basis[j], key);
            basis = next_basis;
            state = rk4_step(state, key);
            if (!finite(state)) throw DivergenceError("hyperchaos trajectory diverged", done + k + 1);
        }
        done += burst;
        // Modified Gram-Schmidt; the norms accumulate the exponents.
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < j; ++i) {
                const double proj = dot(basis[j], basis[i]);
                for (int d = 0; d < 4; ++d) basis[j][d] -= proj * basis[i][d];
            }
            const double norm = std::sqrt(dot(basis[j], basis[j]));
            if (!(norm > 0.0) || !std::isfinite(norm))
                throw DivergenceError("tangent basis collapsed", done);
            log_sum[j] += std::log(norm);
            for (int d = 0; d < 4; ++d) basis[j][d] /= norm;
        }
    }

    const double elapsed = static_cast<double>(total_steps) * key.h;
    std::array<double, 4> exponents;
    for (int j = 0; j < 4; ++j) exponents[j] = log_sum[j] / elapsed;
    std::sort(exponents.begin(), exponents.end(), std::greater<>());
    return exponents;
}

}  // namespace monospec::chaos
