#pragma once

#include "ksns/field.hpp"

namespace ksns {

/// Simulation unknowns (n, c, u) at time t; pressure is eliminated by the
/// Leray projection and never stored.
struct State {
    double t = 0.0;
    ScalarField n;
    ScalarField c;
    VectorField u;

    State() = default;
    explicit State(const GridSpec& g) : n(g), c(g), u(g) {}

    const GridSpec& grid() const { return n.grid; }
    bool finite() const { return n.finite() && c.finite() && u.finite(); }
};

} // namespace ksns
