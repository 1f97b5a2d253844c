#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately brute-force and kept free of the production code paths it
// cross-checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "monospec/ca.hpp"
#include "monospec/image.hpp"
#include "monospec/operators.hpp"

namespace oracle {

// Exhaustive cycle length of the CA state walk from a nonzero seed.
inline std::size_t ca_cycle_length(const monospec::ca::CaRuleVector& rules,
                                   const monospec::ca::CaState& seed) {
    monospec::ca::CaState state = monospec::ca::step(seed, rules);
    std::size_t period = 1;
    while (!(state == seed)) {
        state = monospec::ca::step(state, rules);
        ++period;
        if (period > (std::size_t{1} << (rules.size() + 1))) return 0;  // entered a side cycle
    }
    return period;
}

// Maximality by walking the cycle: period of a nonzero seed equals 2^n - 1.
inline bool ca_maximal_by_walk(const monospec::ca::CaRuleVector& rules) {
    std::vector<std::uint8_t> seed_bits(rules.size(), 0);
    seed_bits.back() = 1;
    const monospec::ca::CaState seed(seed_bits);
    const std::size_t want = (std::size_t{1} << rules.size()) - 1;
    return ca_cycle_length(rules, seed) == want;
}

// O(L^2) selection-sort argsort, ascending, ties by original index.
inline std::vector<std::uint32_t> selection_argsort(const std::vector<double>& values) {
    std::vector<std::uint32_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (values[order[j]] < values[order[best]] ||
                (values[order[j]] == values[order[best]] && order[j] < order[best]))
                best = j;
        }
        std::swap(order[i], order[best]);
    }
    return order;
}

// Dense matrix over the reals, for explicit operator oracles.
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) y[r] += at(r, c) * x[c];
        return y;
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    static DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
        DenseMatrix out(a.rows, b.cols);
        for (std::size_t r = 0; r < a.rows; ++r)
            for (std::size_t k = 0; k < a.cols; ++k) {
                const double v = a.at(r, k);
                if (v == 0.0) continue;
                for (std::size_t c = 0; c < b.cols; ++c) out.at(r, c) += v * b.at(k, c);
            }
        return out;
    }
};

// Materializes any linear plane-to-plane map by probing with unit impulses.
template <typename Fn>
DenseMatrix materialize(Fn&& fn, int in_w, int in_h, int out_w, int out_h) {
    DenseMatrix m(static_cast<std::size_t>(out_w) * out_h,
                  static_cast<std::size_t>(in_w) * in_h);
    for (int r = 0; r < in_h; ++r)
        for (int c = 0; c < in_w; ++c) {
            monospec::RealPlane impulse(in_w, in_h, 0.0);
            impulse.at(r, c) = 1.0;
            const monospec::RealPlane response = fn(impulse);
            const std::size_t col = static_cast<std::size_t>(r) * in_w + c;
            for (std::size_t i = 0; i < response.size(); ++i) m.at(i, col) = response.values[i];
        }
    return m;
}

// Dense D*H*W of an operator triple, built independently from first
// principles (explicit warp/blur/decimate matrices).
DenseMatrix dense_degradation(const monospec::ops::DegradeOp& op, int hr_w, int hr_h);

}  // namespace oracle
