#include "monospec/sr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <limits>
#include <sstream>

namespace monospec::sr {

void SrProblem::validate() const {
    if (observations.empty()) throw MissingChannelError("SR problem has no observations");
    const int gamma = observations.front().op.gamma;
    for (const auto& obs : observations) {
        if (obs.op.gamma != gamma)
            throw ConfigError("all observations of one problem must share gamma");
        if (obs.y.width * obs.op.gamma != highres_width ||
            obs.y.height * obs.op.gamma != highres_height)
            throw DimensionError("observation dims do not match the high-res target");
    }
}

void SrConfig::validate() const {
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
    if (!(eta > 0.0)) throw ConfigError("eta must be positive");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
}

Regularizer regularizer_from_string(const std::string& name) {
    if (name == "laplacian_l1") return Regularizer::laplacian_l1;
    if (name == "bilateral_tv") return Regularizer::bilateral_tv;
    throw ConfigError("unknown regularizer: '" + name + "'");
}

Estimator estimator_from_string(const std::string& name) {
    if (name == "sign_sum") return Estimator::sign_sum;
    if (name == "scaled_median") return Estimator::scaled_median;
    throw ConfigError("unknown estimator: '" + name + "'");
}

std::string to_string(Regularizer kind) {
    return kind == Regularizer::laplacian_l1 ? "laplacian_l1" : "bilateral_tv";
}

std::string to_string(Estimator kind) {
    return kind == Estimator::sign_sum ? "sign_sum" : "scaled_median";
}

GrayPlane ciir(const std::vector<Observation>& observations, int magnification,
               bool* coverage_warning) {
    if (observations.empty()) throw MissingChannelError("CIIR requires at least one observation");
    if (magnification < 1) throw ConfigError("magnification must be >= 1");
    const int lw = observations.front().y.width;
    const int lh = observations.front().y.height;
    const int hw = lw * magnification;
    const int hh = lh * magnification;

    std::vector<double> sum(static_cast<std::size_t>(hw) * hh, 0.0);
    std::vector<std::uint32_t> count(sum.size(), 0);
    for (const auto& obs : observations) {
        if (obs.y.width != lw || obs.y.height != lh)
            throw DimensionError("CIIR observations must share dimensions");
        const int sy = static_cast<int>(std::lround(obs.op.shift.dy));
        const int sx = static_cast<int>(std::lround(obs.op.shift.dx));
        for (int i = 0; i < lh; ++i)
            for (int j = 0; j < lw; ++j) {
                const double v = obs.y.at(i, j);
                for (int di = 0; di < magnification; ++di)
                    for (int dj = 0; dj < magnification; ++dj) {
                        const int r = i * magnification - sy + di;
                        const int c = j * magnification - sx + dj;
                        if (r < 0 || r >= hh || c < 0 || c >= hw) continue;
                        const std::size_t idx = static_cast<std::size_t>(r) * hw + c;
                        sum[idx] += v;
                        count[idx]++;
                    }
            }
    }

    GrayPlane out(hw, hh);
    bool holes = false;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        if (count[i] == 0) {
            holes = true;
            out.pixels[i] = 0;
        } else {
            out.pixels[i] = clamp_u8(sum[i] / count[i]);
        }
    }
    if (coverage_warning) *coverage_warning = holes;
    return out;
}

RealPlane forward(const RealPlane& x, const ops::DegradeOp& op) { return ops::forward(x, op); }

RealPlane adjoint(const RealPlane& r, const ops::DegradeOp& op, int hr_w, int hr_h) {
    return ops::adjoint(r, op, hr_w, hr_h);
}

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// 4-neighbor Laplacian with replicated edges: 4x - up - down - left - right.
RealPlane laplacian(const RealPlane& x) {
    RealPlane out(x.width, x.height);
    for (int r = 0; r < x.height; ++r)
        for (int c = 0; c < x.width; ++c) {
            const double up = x.at(r > 0 ? r - 1 : 0, c);
            const double down = x.at(r + 1 < x.height ? r + 1 : x.height - 1, c);
            const double left = x.at(r, c > 0 ? c - 1 : 0);
            const double right = x.at(r, c + 1 < x.width ? c + 1 : x.width - 1);
            out.at(r, c) = 4.0 * x.at(r, c) - up - down - left - right;
        }
    return out;
}

RealPlane laplacian_adjoint(const RealPlane& g) {
    RealPlane out(g.width, g.height, 0.0);
    for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c) {
            const double v = g.at(r, c);
            out.at(r, c) += 4.0 * v;
            out.at(r > 0 ? r - 1 : 0, c) -= v;
            out.at(r + 1 < g.height ? r + 1 : g.height - 1, c) -= v;
            out.at(r, c > 0 ? c - 1 : 0) -= v;
            out.at(r, c + 1 < g.width ? c + 1 : g.width - 1) -= v;
        }
    return out;
}

// One bilateral-TV difference direction: d = x - S_{l,m} x with the
// replicate-clamped shift; contributes (I - S)^T sign(d).
void accumulate_btv_direction(const RealPlane& x, int l, int m, double weight,
                              RealPlane& grad) {
    const ops::Shift shift{static_cast<double>(m), static_cast<double>(l)};
    const RealPlane shifted = ops::warp(x, shift);
    RealPlane s(x.width, x.height);
    for (std::size_t i = 0; i < x.size(); ++i)
        s.values[i] = sign(x.values[i] - shifted.values[i]);
    const RealPlane back = ops::warp_adjoint(s, shift);
    for (std::size_t i = 0; i < x.size(); ++i)
        grad.values[i] += weight * (s.values[i] - back.values[i]);
}

constexpr double kBtvDecay = 0.7;

}  // namespace

RealPlane regularizer_gradient(const RealPlane& x, Regularizer kind) {
    if (kind == Regularizer::laplacian_l1) {
        const RealPlane hp = laplacian(x);
        RealPlane s(x.width, x.height);
        for (std::size_t i = 0; i < x.size(); ++i) s.values[i] = sign(hp.values[i]);
        return laplacian_adjoint(s);
    }
    // bilateral TV, window 1: directions (0,1), (1,0), (1,1), (1,-1),
    // each difference pair counted once.
    RealPlane grad(x.width, x.height, 0.0);
    const int dirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    for (const auto& d : dirs) {
        const int l = d[0], m = d[1];
        accumulate_btv_direction(x, l, m, std::pow(kBtvDecay, std::abs(l) + std::abs(m)), grad);
    }
    return grad;
}

SolveReport sr_solve(const SrProblem& problem, const SrConfig& cfg, const RealPlane& init,
                     const RealPlane* reference) {
    problem.validate();
    cfg.validate();
    if (init.width != problem.highres_width || init.height != problem.highres_height)
        throw DimensionError("initial estimate dims do not match the high-res target");

    const std::size_t n_obs = problem.observations.size();
    const std::size_t n_pix = init.size();

    SolveReport report;
    report.estimate = init;
    report.history.reserve(static_cast<std::size_t>(cfg.max_iters));

    auto data_objective = [&](const std::vector<RealPlane>& residuals) {
        double obj = 0.0;
        for (const auto& r : residuals)
            for (double v : r.values) obj += std::abs(v);
        return obj;
    };

    auto compute_residuals = [&](const RealPlane& x) {
        std::vector<RealPlane> residuals;
        residuals.reserve(n_obs);
        for (const auto& obs : problem.observations) {
            RealPlane r = ops::forward(x, obs.op);
            for (std::size_t i = 0; i < r.size(); ++i) r.values[i] -= obs.y.pixels[i];
            residuals.push_back(std::move(r));
        }
        return residuals;
    };

    RealPlane& x = report.estimate;
    std::vector<RealPlane> residuals = compute_residuals(x);

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const double objective = data_objective(residuals);

        // Per-observation back-projected sign terms.
        std::vector<RealPlane> terms;
        terms.reserve(n_obs);
        for (std::size_t k = 0; k < n_obs; ++k) {
            RealPlane s(residuals[k].width, residuals[k].height);
            for (std::size_t i = 0; i < s.size(); ++i) s.values[i] = sign(residuals[k].values[i]);
            terms.push_back(
                ops::adjoint(s, problem.observations[k].op, problem.highres_width,
                             problem.highres_height));
        }

        RealPlane data_term(x.width, x.height, 0.0);
        if (cfg.estimator == Estimator::sign_sum) {
            for (const auto& t : terms)
                for (std::size_t i = 0; i < n_pix; ++i) data_term.values[i] += t.values[i];
        } else {
            // n * pixel-wise median across observations; lower median for
            // even counts keeps the update deterministic.
            std::vector<double> vals(n_obs);
            for (std::size_t i = 0; i < n_pix; ++i) {
                for (std::size_t k = 0; k < n_obs; ++k) vals[k] = terms[k].values[i];
                auto mid = vals.begin() + (n_obs - 1) / 2;
                std::nth_element(vals.begin(), mid, vals.end());
                data_term.values[i] = static_cast<double>(n_obs) * *mid;
            }
        }

        RealPlane step = std::move(data_term);
        if (cfg.lambda > 0.0) {
            const RealPlane reg = regularizer_gradient(x, cfg.regularizer);
            for (std::size_t i = 0; i < n_pix; ++i) step.values[i] += cfg.lambda * reg.values[i];
        }

        double norm_x = 0.0, norm_dx = 0.0;
        for (std::size_t i = 0; i < n_pix; ++i) {
            norm_x += x.values[i] * x.values[i];
            const double dx = cfg.beta * step.values[i];
            norm_dx += dx * dx;
            x.values[i] -= dx;
            if (!std::isfinite(x.values[i]))
                throw DivergenceError("SR iterate diverged; try a smaller beta",
                                      static_cast<std::size_t>(iter));
        }
        norm_x = std::sqrt(norm_x);
        norm_dx = std::sqrt(norm_dx);

        IterationRecord rec;
        rec.iteration = iter;
        rec.data_objective = objective;
        rec.relative_error = norm_x > 0.0 ? norm_dx / norm_x : 0.0;
        if (reference) {
            double mse = 0.0;
            for (std::size_t i = 0; i < n_pix; ++i) {
                const double d = x.values[i] - reference->values[i];
                mse += d * d;
            }
            mse /= static_cast<double>(n_pix);
            rec.psnr_vs_reference =
                mse > 0.0 ? 10.0 * std::log10(255.0 * 255.0 / mse)
                          : std::numeric_limits<double>::infinity();
        } else {
            rec.psnr_vs_reference = std::numeric_limits<double>::quiet_NaN();
        }
        report.history.push_back(rec);
        report.iterations_used = iter;

        residuals = compute_residuals(x);

        // norm_x == 0 counts as converged by definition.
        if (norm_x == 0.0 || rec.relative_error < cfg.eta) {
            report.converged = true;
            break;
        }
    }

    report.final_data_objective = data_objective(residuals);
    return report;
}

namespace {

int thread_budget() {
    if (const char* env = std::getenv("MONOSPEC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 3;
}

}  // namespace

ColorImage reconstruct_color(const capture::SubImageArray& sia, int gamma,
                             const ops::Psf& psf, const SrConfig& cfg) {
    sia.validate();
    const int hw = sia.sub_width() * gamma;
    const int hh = sia.sub_height() * gamma;

    std::vector<Observation> groups[3];
    for (const auto& cell : sia.cells)
        groups[static_cast<int>(cell.channel)].push_back(
            Observation{cell.plane, ops::DegradeOp{gamma, psf, cell.shift}});
    for (int ch = 0; ch < 3; ++ch)
        if (groups[ch].empty())
            throw MissingChannelError(std::string("no observations for channel ") +
                                      channel_letter(static_cast<Channel>(ch)));

    auto solve_channel = [&](int ch) {
        SrProblem problem;
        problem.observations = groups[ch];
        problem.highres_width = hw;
        problem.highres_height = hh;
        const GrayPlane init = ciir(problem.observations, gamma);
        return quantize(sr_solve(problem, cfg, to_real(init)).estimate);
    };

    ColorImage out;
    if (thread_budget() > 1) {
        auto fr = std::async(std::launch::async, solve_channel, 0);
        auto fg = std::async(std::launch::async, solve_channel, 1);
        out.b = solve_channel(2);
        out.r = fr.get();
        out.g = fg.get();
    } else {
        out.r = solve_channel(0);
        out.g = solve_channel(1);
        out.b = solve_channel(2);
    }
    return out;
}

std::string iteration_csv(const SolveReport& report, bool with_psnr) {
    std::string out = with_psnr ? "iteration,relative_error,data_objective,psnr\n"
                                : "iteration,relative_error,data_objective\n";
    char buf[160];
    for (const auto& rec : report.history) {
        if (with_psnr)
            std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g\n", rec.iteration,
                          rec.relative_error, rec.data_objective, rec.psnr_vs_reference);
        else
            std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g\n", rec.iteration,
                          rec.relative_error, rec.data_objective);
        out += buf;
    }
    return out;
}

}  // namespace monospec::sr
