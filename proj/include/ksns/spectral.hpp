#pragma once

#include "ksns/field.hpp"

namespace ksns {

enum class Axis { x, y };

/// Unnormalized real-to-complex DFT. Throws InvalidField on non-finite input.
SpectrumField transform_forward(const ScalarField& f);

/// Inverse of transform_forward; carries the 1/(nx*ny) normalization.
ScalarField transform_inverse(const SpectrumField& f);

/// Multiply modes by (i*k_axis)^order, order in {1,2}. Odd orders zero the
/// Nyquist mode on that axis so real fields stay real.
SpectrumField derivative(const SpectrumField& f, Axis axis, int order);

/// -|k|^2 multiplier applied to every mode.
SpectrumField laplacian(const SpectrumField& f);

/// Solve laplacian(psi) = rhs with zero-mean psi. Requires |rhs(0)| <= 1e-12 * max|rhs|.
SpectrumField solve_poisson(const SpectrumField& rhs);

/// Zero all modes above the 2/3 dealiasing radius (per axis).
SpectrumField dealias(const SpectrumField& f);
void dealias_inplace(SpectrumField& f);

/// Remove the gradient part of (ux,uy) in place; the k=0 mode is untouched.
void leray_project_spectral(SpectrumField& ux, SpectrumField& uy);

/// Leray projection of a physical vector field. Throws InvalidField on
/// non-finite input.
VectorField leray_project(const VectorField& v);

/// max_k |i kx ux + i ky uy| over the half-spectrum.
double max_spectral_divergence(const SpectrumField& ux, const SpectrumField& uy);

/// Grid-weighted sum of f^2 computed spectrally (Parseval route).
double parseval_sum_sq(const SpectrumField& f);

} // namespace ksns
