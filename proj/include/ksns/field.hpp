#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ksns/grid.hpp"

namespace ksns {

/// Node-sampled real field, row-major: values[ix*ny + iy].
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}

    static ScalarField zeros(const GridSpec& g) { return ScalarField(g); }

    double& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * grid.ny + iy]; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * grid.ny + iy]; }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double min() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::min(m, v);
        return m;
    }
    double max() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::max(m, v);
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    /// Grid-weighted integral (rectangle rule = exact trapezoid on the torus).
    double integral() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s * grid.cell_area();
    }

    template <class F>
    static ScalarField sample(const GridSpec& g, F&& f) {
        ScalarField out(g);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                out.at(ix, iy) = f(g.x(ix), g.y(iy));
        return out;
    }
};

/// Two scalar components on one grid.
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : x(g), y(g) {}

    const GridSpec& grid() const { return x.grid; }
    bool finite() const { return x.finite() && y.finite(); }
    double max_abs() const { return std::max(x.max_abs(), y.max_abs()); }
};

/// Half-spectrum of a real field (conjugate symmetry in y); coef[ix*(ny/2+1)+iy].
/// Forward transform is unnormalized; the inverse carries the 1/(nx*ny) factor.
struct SpectrumField {
    GridSpec grid;
    std::vector<std::complex<double>> coef;

    SpectrumField() = default;
    explicit SpectrumField(const GridSpec& g) : grid(g), coef(g.spec_size(), {0.0, 0.0}) {}

    std::complex<double>& at(int ix, int iy) {
        return coef[static_cast<std::size_t>(ix) * grid.spec_ny() + iy];
    }
    std::complex<double> at(int ix, int iy) const {
        return coef[static_cast<std::size_t>(ix) * grid.spec_ny() + iy];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : coef) m = std::max(m, std::abs(z));
        return m;
    }
};

} // namespace ksns
