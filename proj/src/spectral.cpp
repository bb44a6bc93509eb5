#include "ksns/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace ksns {

namespace {

// Plans are cached per grid size and reused through the new-array execute
// interface. Creation is serialized; execution on distinct arrays is
// thread-safe. FFTW_ESTIMATE keeps plan choice deterministic run-to-run.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(int nx, int ny) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, PlanPair> cache;

    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(nx, ny);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<double> real(static_cast<std::size_t>(nx) * ny);
    std::vector<std::complex<double>> cplx(static_cast<std::size_t>(nx) * (ny / 2 + 1));
    PlanPair p;
    // FFTW_UNALIGNED: plans must accept whatever alignment std::vector storage has.
    p.r2c = fftw_plan_dft_r2c_2d(nx, ny, real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_2d(nx, ny, reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(key, p).first->second;
}

bool dealias_keep(const GridSpec& g, int ix, int iy) {
    // 2/3 rule, integer-exact: drop when 3|f| > n on either axis.
    return 3 * std::abs(g.freq_x(ix)) <= g.nx && 3 * iy <= g.ny;
}

} // namespace

SpectrumField transform_forward(const ScalarField& f) {
    if (!f.finite())
        throw_error(ErrorCode::invalid_field, "transform_forward: non-finite input");
    SpectrumField out(f.grid);
    std::vector<double> in(f.values); // r2c may scribble on its input
    fftw_execute_dft_r2c(plans_for(f.grid.nx, f.grid.ny).r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(out.coef.data()));
    return out;
}

ScalarField transform_inverse(const SpectrumField& f) {
    ScalarField out(f.grid);
    // multidimensional c2r destroys its input, so run on a copy
    std::vector<std::complex<double>> in(f.coef);
    fftw_execute_dft_c2r(plans_for(f.grid.nx, f.grid.ny).c2r,
                         reinterpret_cast<fftw_complex*>(in.data()), out.values.data());
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (double& v : out.values) v *= scale;
    return out;
}

SpectrumField derivative(const SpectrumField& f, Axis axis, int order) {
    if (order != 1 && order != 2)
        throw_error(ErrorCode::not_supported, "derivative: order must be 1 or 2");
    const GridSpec& g = f.grid;
    SpectrumField out(g);
    const bool odd = (order == 1);
    for (int ix = 0; ix < g.nx; ++ix) {
        const double k = (axis == Axis::x) ? g.kx(ix) : 0.0;
        const bool nyq_x = (ix == g.nx / 2);
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const double ka = (axis == Axis::x) ? k : g.ky(iy);
            const bool nyq = (axis == Axis::x) ? nyq_x : (iy == g.ny / 2);
            std::complex<double> z = f.at(ix, iy);
            if (odd) {
                z = nyq ? std::complex<double>{0.0, 0.0}
                        : std::complex<double>{-ka * z.imag(), ka * z.real()};
            } else {
                z *= -ka * ka;
            }
            out.at(ix, iy) = z;
        }
    }
    return out;
}

SpectrumField laplacian(const SpectrumField& f) {
    const GridSpec& g = f.grid;
    SpectrumField out(g);
    for (int ix = 0; ix < g.nx; ++ix) {
        const double kx = g.kx(ix);
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const double ky = g.ky(iy);
            out.at(ix, iy) = f.at(ix, iy) * (-(kx * kx + ky * ky));
        }
    }
    return out;
}

SpectrumField solve_poisson(const SpectrumField& rhs) {
    const GridSpec& g = rhs.grid;
    const double scale = rhs.max_abs();
    if (std::abs(rhs.coef[0]) > 1e-12 * scale)
        throw_error(ErrorCode::mean_not_zero, "solve_poisson: rhs has nonzero mean");
    SpectrumField out(g);
    for (int ix = 0; ix < g.nx; ++ix) {
        const double kx = g.kx(ix);
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const double ky = g.ky(iy);
            const double k2 = kx * kx + ky * ky;
            out.at(ix, iy) = (k2 == 0.0) ? std::complex<double>{0.0, 0.0}
                                         : rhs.at(ix, iy) / (-k2);
        }
    }
    return out;
}

SpectrumField dealias(const SpectrumField& f) {
    SpectrumField out = f;
    dealias_inplace(out);
    return out;
}

void dealias_inplace(SpectrumField& f) {
    const GridSpec& g = f.grid;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.spec_ny(); ++iy)
            if (!dealias_keep(g, ix, iy)) f.at(ix, iy) = {0.0, 0.0};
}

void leray_project_spectral(SpectrumField& ux, SpectrumField& uy) {
    const GridSpec& g = ux.grid;
    for (int ix = 0; ix < g.nx; ++ix) {
        const double kx = g.kx(ix);
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const double ky = g.ky(iy);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue; // mean flow is already divergence-free
            const std::complex<double> d = (kx * ux.at(ix, iy) + ky * uy.at(ix, iy)) / k2;
            ux.at(ix, iy) -= kx * d;
            uy.at(ix, iy) -= ky * d;
        }
    }
}

VectorField leray_project(const VectorField& v) {
    if (!v.finite())
        throw_error(ErrorCode::invalid_field, "leray_project: non-finite input");
    SpectrumField ux = transform_forward(v.x);
    SpectrumField uy = transform_forward(v.y);
    leray_project_spectral(ux, uy);
    VectorField out(v.grid());
    out.x = transform_inverse(ux);
    out.y = transform_inverse(uy);
    return out;
}

double max_spectral_divergence(const SpectrumField& ux, const SpectrumField& uy) {
    const GridSpec& g = ux.grid;
    double m = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        const double kx = g.kx(ix);
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            const double ky = g.ky(iy);
            const std::complex<double> div = {
                -(kx * ux.at(ix, iy).imag() + ky * uy.at(ix, iy).imag()),
                kx * ux.at(ix, iy).real() + ky * uy.at(ix, iy).real()};
            m = std::max(m, std::abs(div));
        }
    }
    return m;
}

double parseval_sum_sq(const SpectrumField& f) {
    const GridSpec& g = f.grid;
    double s = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.spec_ny(); ++iy) {
            // interior columns stand in for their conjugate partners
            const double w = (iy == 0 || iy == g.ny / 2) ? 1.0 : 2.0;
            s += w * std::norm(f.at(ix, iy));
        }
    }
    return s * g.cell_area() / static_cast<double>(g.size());
}

} // namespace ksns
