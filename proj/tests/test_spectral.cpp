#include "ksns/spectral.hpp"

#include <random>

#include "doctest.h"
#include "oracle_dft.hpp"

using namespace ksns;

namespace {

ScalarField random_smooth_field(const GridSpec& g, unsigned seed, int band = 3) {
    // band-limited random field: sum of low harmonics with fixed-seed weights
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<double> ax, bx;
    struct Mode { int fx, fy; double ca, sa; };
    std::vector<Mode> modes;
    for (int fx = 0; fx <= band; ++fx)
        for (int fy = -band; fy <= band; ++fy)
            modes.push_back({fx, fy, amp(rng), amp(rng)});
    return ScalarField::sample(g, [&](double x, double y) {
        double v = 0.0;
        for (const auto& m : modes) {
            const double ph = 2.0 * std::numbers::pi * (m.fx * x / g.lx + m.fy * y / g.ly);
            v += m.ca * std::cos(ph) + m.sa * std::sin(ph);
        }
        return v;
    });
}

double max_coef_diff(const SpectrumField& a, const SpectrumField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coef.size(); ++i)
        m = std::max(m, std::abs(a.coef[i] - b.coef[i]));
    return m;
}

} // namespace

TEST_CASE("forward transform of a constant has only the k=0 mode") {
    auto g = GridSpec::make(16, 16, 2.0, 2.0);
    const double a = 0.7;
    auto f = ScalarField::sample(g, [&](double, double) { return a; });
    auto spec = transform_forward(f);
    CHECK(spec.coef[0].real() == doctest::Approx(a * g.size()).epsilon(1e-14));
    CHECK(spec.coef[0].imag() == doctest::Approx(0.0));
    for (std::size_t i = 1; i < spec.coef.size(); ++i)
        CHECK(std::abs(spec.coef[i]) <= 1e-12 * g.size());
}

TEST_CASE("single harmonic sin(2 pi x / lx) fills exactly one stored mode") {
    auto g = GridSpec::make(16, 16, 4.0, 4.0);
    auto f = ScalarField::sample(g, [&](double x, double) {
        return std::sin(2.0 * std::numbers::pi * x / g.lx);
    });
    auto spec = transform_forward(f);
    // stored half-spectrum holds (fx=1, fy=0) and its conjugate row (fx=-1, fy=0)
    int nonzero = 0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.spec_ny(); ++iy)
            if (std::abs(spec.at(ix, iy)) > 1e-10 * g.size()) ++nonzero;
    CHECK(nonzero == 2);
    CHECK(spec.at(1, 0).imag() == doctest::Approx(-0.5 * g.size()).epsilon(1e-13));
    CHECK(spec.at(g.nx - 1, 0).imag() == doctest::Approx(0.5 * g.size()).epsilon(1e-13));
}

TEST_CASE("FFT agrees with direct DFT summation on an 8x8 grid") {
    auto g = GridSpec::make(8, 8, 1.0, 3.0);
    auto f = random_smooth_field(g, 41, 2);
    auto spec = transform_forward(f);
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            auto oracle = testing::dft_coef(f, g.freq_x(ix), iy);
            CHECK(std::abs(spec.at(ix, iy) - oracle) <= 1e-11 * g.size());
        }
    }
}

TEST_CASE("round trip is the identity to 1e-13 relative") {
    auto g = GridSpec::make(32, 16, 5.0, 2.5);
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        auto f = random_smooth_field(g, seed);
        auto back = transform_inverse(transform_forward(f));
        double scale = f.max_abs();
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(std::abs(back.values[i] - f.values[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("Parseval identity holds to 1e-12 relative") {
    auto g = GridSpec::make(32, 32, 7.0, 3.0);
    auto f = random_smooth_field(g, 7);
    double phys = 0.0;
    for (double v : f.values) phys += v * v;
    phys *= g.cell_area();
    double spec = parseval_sum_sq(transform_forward(f));
    CHECK(spec == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("transform_forward rejects non-finite input") {
    auto g = GridSpec::make(8, 8, 1.0, 1.0);
    ScalarField f(g);
    f.values[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(transform_forward(f), "transform_forward: non-finite input", Error);
}

TEST_CASE("spectral derivative of sin is the analytic cosine") {
    auto g = GridSpec::make(32, 8, 4.0, 1.0);
    const double k = 2.0 * std::numbers::pi / g.lx;
    auto f = ScalarField::sample(g, [&](double x, double) { return std::sin(k * x); });
    auto df = transform_inverse(derivative(transform_forward(f), Axis::x, 1));
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            CHECK(df.at(ix, iy) == doctest::Approx(k * std::cos(k * g.x(ix))).epsilon(1e-12));
}

TEST_CASE("derivative of a constant vanishes; unsupported order throws") {
    auto g = GridSpec::make(8, 8, 1.0, 1.0);
    auto f = ScalarField::sample(g, [](double, double) { return 3.25; });
    auto spec = transform_forward(f);
    auto d1 = transform_inverse(derivative(spec, Axis::y, 1));
    CHECK(d1.max_abs() <= 1e-14);
    CHECK_THROWS_AS(derivative(spec, Axis::x, 3), Error);
    CHECK_THROWS_AS(derivative(spec, Axis::x, 0), Error);
}

TEST_CASE("spectral derivative converges at 4th order against the FD oracle") {
    // Gaussian-like smooth bump; the oracle is a 4th-order centered
    // difference of the same samples. The mismatch is dominated by the FD
    // truncation, so it must shrink at >= 4th order per grid doubling.
    auto bump = [](const GridSpec& g) {
        return ScalarField::sample(g, [&](double x, double y) {
            const double dx = x - 0.5 * g.lx, dy = y - 0.5 * g.ly;
            return std::exp(-(dx * dx + dy * dy));
        });
    };
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
        auto g = GridSpec::make(n, n, 16.0, 16.0);
        auto f = bump(g);
        auto dfs = transform_inverse(derivative(transform_forward(f), Axis::x, 1));
        double maxdiff = 0.0;
        for (int ix = 0; ix < g.nx; ++ix) {
            for (int iy = 0; iy < g.ny; ++iy) {
                const int ip = (ix + 1) % g.nx, ipp = (ix + 2) % g.nx;
                const int im = (ix + g.nx - 1) % g.nx, imm = (ix + g.nx - 2) % g.nx;
                const double fd = (-f.at(ipp, iy) + 8.0 * f.at(ip, iy) - 8.0 * f.at(im, iy) +
                                   f.at(imm, iy)) /
                                  (12.0 * g.hx());
                maxdiff = std::max(maxdiff, std::abs(dfs.at(ix, iy) - fd));
            }
        }
        errs.push_back(maxdiff);
    }
    CHECK(errs[0] / errs[1] >= 12.0);
    CHECK(errs[1] / errs[2] >= 12.0);
}

TEST_CASE("Poisson solve inverts the Laplacian on an eigenfunction") {
    auto g = GridSpec::make(32, 32, 2.0, 2.0);
    const double k = 2.0 * std::numbers::pi / g.lx;
    auto rhs = ScalarField::sample(g, [&](double x, double) { return -k * k * std::sin(k * x); });
    auto psi = transform_inverse(solve_poisson(transform_forward(rhs)));
    for (int ix = 0; ix < g.nx; ++ix)
        CHECK(psi.at(ix, 3) == doctest::Approx(std::sin(k * g.x(ix))).epsilon(1e-11));
}

TEST_CASE("Poisson solve of zero is zero; nonzero mean rejected") {
    auto g = GridSpec::make(8, 8, 1.0, 1.0);
    SpectrumField zero(g);
    CHECK(transform_inverse(solve_poisson(zero)).max_abs() == 0.0);
    auto f = ScalarField::sample(g, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(solve_poisson(transform_forward(f)), Error);
}

TEST_CASE("Poisson residual below 1e-11 for random zero-mean rhs") {
    auto g = GridSpec::make(32, 32, 6.0, 6.0);
    auto f = random_smooth_field(g, 11);
    auto spec = transform_forward(f);
    spec.coef[0] = {0.0, 0.0}; // drop the mean
    auto psi = solve_poisson(spec);
    auto residual = laplacian(psi);
    double scale = spec.max_abs();
    CHECK(max_coef_diff(residual, spec) <= 1e-11 * scale);
}

TEST_CASE("Leray projection annihilates gradients") {
    auto g = GridSpec::make(32, 32, 8.0, 8.0);
    auto psi = random_smooth_field(g, 13);
    auto ps = transform_forward(psi);
    VectorField grad(g);
    grad.x = transform_inverse(derivative(ps, Axis::x, 1));
    grad.y = transform_inverse(derivative(ps, Axis::y, 1));
    auto out = leray_project(grad);
    CHECK(out.max_abs() <= 1e-11 * grad.max_abs());
}

TEST_CASE("Leray projection fixes divergence-free fields and is idempotent") {
    auto g = GridSpec::make(32, 32, 8.0, 8.0);
    auto psi = random_smooth_field(g, 17);
    auto ps = transform_forward(psi);
    VectorField v(g); // (-d_y psi, d_x psi) is divergence-free
    v.x = transform_inverse(derivative(ps, Axis::y, 1));
    for (double& q : v.x.values) q = -q;
    v.y = transform_inverse(derivative(ps, Axis::x, 1));
    auto once = leray_project(v);
    double scale = v.max_abs();
    for (std::size_t i = 0; i < v.x.values.size(); ++i) {
        CHECK(std::abs(once.x.values[i] - v.x.values[i]) <= 1e-12 * scale);
        CHECK(std::abs(once.y.values[i] - v.y.values[i]) <= 1e-12 * scale);
    }
    auto twice = leray_project(once);
    for (std::size_t i = 0; i < v.x.values.size(); ++i) {
        CHECK(std::abs(twice.x.values[i] - once.x.values[i]) <= 1e-13 * scale);
        CHECK(std::abs(twice.y.values[i] - once.y.values[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("projected random fields are spectrally divergence-free, remainder a gradient") {
    auto g = GridSpec::make(32, 32, 4.0, 4.0);
    VectorField v(g);
    v.x = random_smooth_field(g, 19);
    v.y = random_smooth_field(g, 23);
    auto out = leray_project(v);
    auto ux = transform_forward(out.x), uy = transform_forward(out.y);
    CHECK(max_spectral_divergence(ux, uy) <= 1e-12 * std::max(ux.max_abs(), uy.max_abs()));
    // difference v - out must be curl-free
    VectorField diff(g);
    for (std::size_t i = 0; i < v.x.values.size(); ++i) {
        diff.x.values[i] = v.x.values[i] - out.x.values[i];
        diff.y.values[i] = v.y.values[i] - out.y.values[i];
    }
    auto dx = transform_forward(diff.x), dy = transform_forward(diff.y);
    auto curl_a = derivative(dy, Axis::x, 1), curl_b = derivative(dx, Axis::y, 1);
    double curl_max = 0.0;
    for (std::size_t i = 0; i < curl_a.coef.size(); ++i)
        curl_max = std::max(curl_max, std::abs(curl_a.coef[i] - curl_b.coef[i]));
    CHECK(curl_max <= 1e-11 * std::max(dx.max_abs(), dy.max_abs()));
}

TEST_CASE("dealias keeps low modes, kills the Nyquist mode") {
    auto g = GridSpec::make(16, 16, 1.0, 1.0);
    auto low = ScalarField::sample(g, [&](double x, double y) {
        return std::cos(2.0 * std::numbers::pi * (3.0 * x / g.lx + 2.0 * y / g.ly));
    });
    auto ls = transform_forward(low);
    auto kept = dealias(ls);
    // in-band coefficients pass through bit-identically; out-of-band content
    // of this field is FFT roundoff, so the field is unchanged to roundoff
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.spec_ny(); ++iy)
            if (3 * std::abs(g.freq_x(ix)) <= g.nx && 3 * iy <= g.ny)
                CHECK(kept.at(ix, iy) == ls.at(ix, iy));
    CHECK(max_coef_diff(kept, ls) <= 1e-13 * g.size());

    auto nyq = ScalarField::sample(g, [&](double x, double) {
        return std::cos(2.0 * std::numbers::pi * 8.0 * x / g.lx);
    });
    auto cut = dealias(transform_forward(nyq));
    CHECK(cut.max_abs() <= 1e-12 * g.size());
}

TEST_CASE("dealiased product matches direct convolution oracle on 16x16") {
    auto g = GridSpec::make(16, 16, 2.0, 2.0);
    const int band = 5; // 16/3 -> keep |f| <= 5
    auto a = random_smooth_field(g, 29, band);
    auto b = random_smooth_field(g, 31, band);
    ScalarField prod(g);
    for (std::size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = a.values[i] * b.values[i];
    auto got = dealias(transform_forward(prod));
    const double scale = static_cast<double>(g.size());
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const int fx = g.freq_x(ix);
            if (3 * std::abs(fx) > g.nx || 3 * iy > g.ny) continue;
            auto oracle = testing::convolution_amplitude(a, b, fx, iy, band);
            CHECK(std::abs(got.at(ix, iy) / scale - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
        }
    }
}

TEST_CASE("product rule holds for dealiased band-limited fields") {
    auto g = GridSpec::make(64, 64, 4.0, 4.0);
    auto a = random_smooth_field(g, 37, 5);
    auto b = random_smooth_field(g, 43, 5);
    ScalarField prod(g);
    for (std::size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = a.values[i] * b.values[i];
    auto lhs = transform_inverse(dealias(derivative(transform_forward(prod), Axis::x, 1)));
    auto da = transform_inverse(derivative(transform_forward(a), Axis::x, 1));
    auto db = transform_inverse(derivative(transform_forward(b), Axis::x, 1));
    double scale = lhs.max_abs();
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        const double rhs = da.values[i] * b.values[i] + a.values[i] * db.values[i];
        CHECK(std::abs(lhs.values[i] - rhs) <= 1e-10 * std::max(1.0, scale));
    }
}
