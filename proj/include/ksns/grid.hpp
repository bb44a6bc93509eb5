#pragma once

#include <cstddef>
#include <numbers>

#include "ksns/errors.hpp"

namespace ksns {

/// Uniform periodic grid on [0,lx) x [0,ly). Node counts are powers of two
/// so the transforms stay in the radix-2 fast path.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;

    static bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

    static GridSpec make(int nx, int ny, double lx, double ly) {
        if (nx < 8 || ny < 8 || !is_pow2(nx) || !is_pow2(ny))
            throw_error(ErrorCode::invalid_config,
                        "grid node counts must be powers of two >= 8");
        if (!(lx > 0.0) || !(ly > 0.0))
            throw_error(ErrorCode::invalid_config, "box lengths must be positive");
        return GridSpec{nx, ny, lx, ly};
    }

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    double cell_area() const { return hx() * hy(); }
    double area() const { return lx * ly; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    // half-spectrum layout: full x axis, y axis truncated to ny/2+1 columns
    int spec_ny() const { return ny / 2 + 1; }
    std::size_t spec_size() const { return static_cast<std::size_t>(nx) * spec_ny(); }

    /// Signed integer frequency for row index ix (0..nx-1). The Nyquist row
    /// nx/2 maps to -nx/2.
    int freq_x(int ix) const { return ix <= nx / 2 ? ix : ix - nx; }

    double kx(int ix) const { return 2.0 * std::numbers::pi / lx * freq_x(ix); }
    /// Column index iy in [0, ny/2] is already the nonnegative frequency.
    double ky(int iy) const { return 2.0 * std::numbers::pi / ly * iy; }

    double x(int ix) const { return hx() * ix; }
    double y(int iy) const { return hy() * iy; }

    bool operator==(const GridSpec&) const = default;
};

} // namespace ksns
