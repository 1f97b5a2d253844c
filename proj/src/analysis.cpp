#include "monospec/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "monospec/capture.hpp"

namespace monospec::analysis {

std::array<std::uint64_t, 256> histogram(const GrayPlane& img) {
    std::array<std::uint64_t, 256> counts{};
    for (std::uint8_t p : img.pixels) counts[p]++;
    return counts;
}

double chi_square_uniform(const std::array<std::uint64_t, 256>& counts) {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    const double expected = static_cast<double>(total) / 256.0;
    double chi = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi += d * d / expected;
    }
    return chi;
}

namespace {

struct Centered {
    std::vector<double> values;
    double energy = 0.0;  // zero-lag correlation
};

Centered center(const GrayPlane& img) {
    Centered out;
    out.values.resize(img.size());
    double mean = 0.0;
    for (std::uint8_t p : img.pixels) mean += p;
    mean /= static_cast<double>(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out.values[i] = static_cast<double>(img.pixels[i]) - mean;
        out.energy += out.values[i] * out.values[i];
    }
    if (out.energy == 0.0)
        throw DegenerateInputError("autocorrelation of a constant image is undefined");
    return out;
}

void check_lags(const GrayPlane& img, int max_lag_y, int max_lag_x) {
    if (max_lag_y < 0 || max_lag_x < 0) throw ConfigError("autocorrelation lags must be >= 0");
    if (max_lag_y >= img.height || max_lag_x >= img.width)
        throw ConfigError("autocorrelation lags must be smaller than the image");
}

}  // namespace

AutocorrSurface autocorrelation(const GrayPlane& img, int max_lag_y, int max_lag_x) {
    check_lags(img, max_lag_y, max_lag_x);
    const Centered c = center(img);
    const int H = img.height, W = img.width;
    // Zero padding by the lag range turns circular correlation into the
    // linear one for every lag we read out.
    const int P1 = H + max_lag_y;
    const int P2 = W + max_lag_x;

    std::vector<double> padded(static_cast<std::size_t>(P1) * P2, 0.0);
    for (int r = 0; r < H; ++r)
        for (int col = 0; col < W; ++col)
            padded[static_cast<std::size_t>(r) * P2 + col] =
                c.values[static_cast<std::size_t>(r) * W + col];

    const int complex_cols = P2 / 2 + 1;
    fftw_complex* spectrum = fftw_alloc_complex(static_cast<std::size_t>(P1) * complex_cols);
    double* buffer = fftw_alloc_real(static_cast<std::size_t>(P1) * P2);
    std::copy(padded.begin(), padded.end(), buffer);

    fftw_plan fwd = fftw_plan_dft_r2c_2d(P1, P2, buffer, spectrum, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    for (std::size_t i = 0; i < static_cast<std::size_t>(P1) * complex_cols; ++i) {
        const double re = spectrum[i][0], im = spectrum[i][1];
        spectrum[i][0] = re * re + im * im;
        spectrum[i][1] = 0.0;
    }

    fftw_plan bwd = fftw_plan_dft_c2r_2d(P1, P2, spectrum, buffer, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    fftw_free(spectrum);

    const double scale = 1.0 / (static_cast<double>(P1) * P2 * c.energy);
    AutocorrSurface surface;
    surface.max_lag_y = max_lag_y;
    surface.max_lag_x = max_lag_x;
    surface.values.resize(static_cast<std::size_t>(surface.height()) * surface.width());
    for (int u = -max_lag_y; u <= max_lag_y; ++u)
        for (int v = -max_lag_x; v <= max_lag_x; ++v) {
            const int ru = u >= 0 ? u : P1 + u;
            const int rv = v >= 0 ? v : P2 + v;
            surface.at(u, v) = buffer[static_cast<std::size_t>(ru) * P2 + rv] * scale;
        }
    fftw_free(buffer);
    return surface;
}

AutocorrSurface autocorrelation_direct(const GrayPlane& img, int max_lag_y, int max_lag_x) {
    check_lags(img, max_lag_y, max_lag_x);
    const Centered c = center(img);
    const int H = img.height, W = img.width;
    AutocorrSurface surface;
    surface.max_lag_y = max_lag_y;
    surface.max_lag_x = max_lag_x;
    surface.values.resize(static_cast<std::size_t>(surface.height()) * surface.width());
    for (int u = -max_lag_y; u <= max_lag_y; ++u)
        for (int v = -max_lag_x; v <= max_lag_x; ++v) {
            double acc = 0.0;
            const int r0 = std::max(0, -u), r1 = std::min(H, H - u);
            const int c0 = std::max(0, -v), c1 = std::min(W, W - v);
            for (int r = r0; r < r1; ++r)
                for (int col = c0; col < c1; ++col)
                    acc += c.values[static_cast<std::size_t>(r) * W + col] *
                           c.values[static_cast<std::size_t>(r + u) * W + (col + v)];
            surface.at(u, v) = acc / c.energy;
        }
    return surface;
}

double mean_offpeak_abs(const AutocorrSurface& surface, int exclude_radius) {
    double acc = 0.0;
    std::size_t n = 0;
    for (int u = -surface.max_lag_y; u <= surface.max_lag_y; ++u)
        for (int v = -surface.max_lag_x; v <= surface.max_lag_x; ++v) {
            if (std::max(std::abs(u), std::abs(v)) <= exclude_radius) continue;
            acc += std::abs(surface.at(u, v));
            ++n;
        }
    return n ? acc / static_cast<double>(n) : 0.0;
}

double max_offpeak_abs(const AutocorrSurface& surface, int exclude_radius) {
    double best = 0.0;
    for (int u = -surface.max_lag_y; u <= surface.max_lag_y; ++u)
        for (int v = -surface.max_lag_x; v <= surface.max_lag_x; ++v) {
            if (std::max(std::abs(u), std::abs(v)) <= exclude_radius) continue;
            best = std::max(best, std::abs(surface.at(u, v)));
        }
    return best;
}

GrayPlane surface_to_heatmap(const AutocorrSurface& surface) {
    GrayPlane out(surface.width(), surface.height());
    for (std::size_t i = 0; i < surface.values.size(); ++i)
        out.pixels[i] = clamp_u8((surface.values[i] + 1.0) * 127.5);
    return out;
}

namespace {

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInputError("correlation of a constant sequence is undefined");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double adjacent_correlation_horizontal(const GrayPlane& img) {
    if (img.width < 2) throw DimensionError("horizontal pairs need width >= 2");
    std::vector<double> a, b;
    a.reserve(img.size());
    b.reserve(img.size());
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c + 1 < img.width; ++c) {
            a.push_back(img.at(r, c));
            b.push_back(img.at(r, c + 1));
        }
    return pearson(a, b);
}

double adjacent_correlation_vertical(const GrayPlane& img) {
    if (img.height < 2) throw DimensionError("vertical pairs need height >= 2");
    std::vector<double> a, b;
    a.reserve(img.size());
    b.reserve(img.size());
    for (int r = 0; r + 1 < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            a.push_back(img.at(r, c));
            b.push_back(img.at(r + 1, c));
        }
    return pearson(a, b);
}

double pixel_correlation(const GrayPlane& a, const GrayPlane& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("correlation requires equal dimensions");
    std::vector<double> xs(a.size()), ys(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        xs[i] = a.pixels[i];
        ys[i] = b.pixels[i];
    }
    return pearson(xs, ys);
}

OccludeRegion occlude_region_from_string(const std::string& name) {
    if (name == "block_topleft") return OccludeRegion::block_topleft;
    if (name == "random_pixels") return OccludeRegion::random_pixels;
    throw ConfigError("unknown occlusion region: '" + name + "'");
}

cipher::CipherText occlude(const cipher::CipherText& ct, double fraction, OccludeRegion region,
                           std::uint64_t seed) {
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw ConfigError("occlusion fraction must be in (0,1)");
    cipher::CipherText out = ct;
    const std::size_t count =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ct.size())));
    if (region == OccludeRegion::block_topleft) {
        std::fill(out.bytes.begin(),
                  out.bytes.begin() + static_cast<std::ptrdiff_t>(std::min(count, out.size())),
                  std::uint8_t{0});
    } else {
        // Partial Fisher-Yates over the index range picks `count` distinct
        // positions deterministically.
        std::vector<std::uint32_t> idx(out.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::uint32_t>(i);
        std::mt19937_64 engine(seed);
        for (std::size_t i = 0; i < count && i < idx.size(); ++i) {
            const std::size_t j = i + engine() % (idx.size() - i);
            std::swap(idx[i], idx[j]);
            out.bytes[idx[i]] = 0;
        }
    }
    return out;
}

double psnr(const GrayPlane& a, const GrayPlane& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("PSNR requires equal dimensions");
    double mse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double psnr(const ColorImage& a, const ColorImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionError("PSNR requires equal dimensions");
    double mse = 0.0;
    const GrayPlane* pa[3] = {&a.r, &a.g, &a.b};
    const GrayPlane* pb[3] = {&b.r, &b.g, &b.b};
    for (int ch = 0; ch < 3; ++ch)
        for (std::size_t i = 0; i < pa[ch]->size(); ++i) {
            const double d = static_cast<double>(pa[ch]->pixels[i]) - pb[ch]->pixels[i];
            mse += d * d;
        }
    mse /= static_cast<double>(3 * a.r.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double npcr(const GrayPlane& a, const GrayPlane& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("NPCR requires equal dimensions");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += a.pixels[i] != b.pixels[i];
    return 100.0 * static_cast<double>(diff) / static_cast<double>(a.size());
}

double uaci(const GrayPlane& a, const GrayPlane& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("UACI requires equal dimensions");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(static_cast<double>(a.pixels[i]) - b.pixels[i]);
    return 100.0 * acc / (255.0 * static_cast<double>(a.size()));
}

KeySensitivityReport key_sensitivity(const GrayPlane& plain, const cipher::CipherKey& true_key,
                                     const cipher::CipherKey& perturbed_key) {
    const cipher::CipherText ct = cipher::encrypt(plain, true_key);
    const GrayPlane correct = cipher::decrypt(ct, true_key);
    const GrayPlane wrong = cipher::decrypt(ct, perturbed_key);
    KeySensitivityReport report;
    report.npcr_percent = npcr(correct, wrong);
    report.uaci_percent = uaci(correct, wrong);
    report.identical = correct == wrong;
    report.correlation = report.identical ? 1.0 : pixel_correlation(correct, wrong);
    return report;
}

BenchReport bench_scaling(const std::vector<std::pair<int, int>>& sizes,
                          const cipher::CipherKey& key, std::uint64_t image_seed) {
    BenchReport report;
    for (const auto& [w, h] : sizes) {
        const GrayPlane img = capture::synthetic_gray(w, h, image_seed);
        cipher::CipherStats stats;
        const auto start = std::chrono::steady_clock::now();
        const cipher::CipherText ct = cipher::encrypt(img, key, &stats);
        const auto stop = std::chrono::steady_clock::now();
        BenchRow row;
        row.width = w;
        row.height = h;
        row.seconds = std::chrono::duration<double>(stop - start).count();
        row.touches = stats.total_touches();
        report.rows.push_back(row);
        (void)ct;
    }
    // Least-squares slope of log(time) against log(pixels).
    if (report.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(report.rows.size());
        for (const auto& row : report.rows) {
            const double x = std::log(static_cast<double>(row.width) * row.height);
            const double y = std::log(std::max(row.seconds, 1e-9));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.growth_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::string out = "width,height,pixels,seconds,touches\n";
    char buf[160];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%llu,%.6f,%llu\n", row.width, row.height,
                      static_cast<unsigned long long>(static_cast<std::uint64_t>(row.width) *
                                                      row.height),
                      row.seconds, static_cast<unsigned long long>(row.touches));
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "growth_exponent,,,%.4f,\n", report.growth_exponent);
    out += buf;
    return out;
}

}  // namespace monospec::analysis
