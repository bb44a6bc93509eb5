#pragma once

#include <array>
#include <map>
#include <vector>

#include "ksns/state.hpp"

namespace ksns {

/// Polynomial chemotaxis/consumption family:
///   chi(c) = chi0 + chi1_lin*c,   k(c) = kap1*c + kap2*c^2.
/// Nonnegative parameters guarantee chi, k, chi', k' >= 0 and k(0) = 0.
struct SensitivitySpec {
    double chi0 = 0.0;
    double chi1_lin = 0.0;
    double kap1 = 0.0;
    double kap2 = 0.0;
};

struct Sensitivities {
    double chi;
    double chi_prime;
    double k;
    double k_prime;
};

/// Evaluate the family at one concentration. Throws OutOfDomain for c < 0
/// (the maximum principle should prevent it; hitting this signals solver
/// failure upstream).
Sensitivities eval_sensitivity(const SensitivitySpec& spec, double c);

enum class FluidModel { navier_stokes, stokes, none };

enum class Scheme { imex_euler, imex_bdf2 };

struct StepperConfig {
    Scheme scheme = Scheme::imex_bdf2;
    double dt_init = 1e-3;
    double cfl_safety = 0.4;
    double dt_max = 1e-2;
    double dt_min = 1e-10;
    int hyperbolic_filter_order = 16;
    bool adaptive = true;

    void validate() const;
};

/// Settings for the per-step weighted-energy diagnostic column (the Gaussian
/// weight exp((beta*c)^2); beta from the 6p(p-1)chi1^2 formula unless set).
struct WeightedDiagnostics {
    int p = 2;
    bool beta_from_formula = true;
    double beta_manual = 0.0;
};

struct ModelConfig {
    int mu = 1; // 1: parabolic oxygen equation, 0: hyperbolic
    FluidModel fluid = FluidModel::navier_stokes;
    std::array<double, 2> grad_phi{0.0, 0.0};
    SensitivitySpec sensitivity;
    GridSpec grid;
    double t_end = 1.0;
    double sample_interval = 0.1;
    StepperConfig stepper;
    WeightedDiagnostics weighted;

    void validate() const;
};

struct GaussianBlob {
    double amplitude = 0.0; // >= 0
    double cx = 0.0;
    double cy = 0.0;
    double width = 1.0; // e-folding radius: a * exp(-r^2 / width^2)
};

enum class VelocityMode { zero, taylor_green };

struct InitialConditionSpec {
    std::vector<GaussianBlob> n_blobs;
    std::vector<GaussianBlob> c_blobs;
    double c_background = 0.0;
    VelocityMode u_mode = VelocityMode::zero;
    double u_amplitude = 0.0;
};

struct AssumptionReport {
    bool chi_k_signs_ok = false;
    bool k_zero_ok = false;
    double sup_chi_minus_mu_k = 0.0; // sup over [0, cmax] of |chi - mu*k|
    double chi1_sup = 0.0;           // sup over [0, cmax] of chi
    std::map<int, double> smallness_products; // p -> chi1 * cmax * 24p
};

/// Check the sign assumptions and smallness products on a 1e4-point grid
/// over [0, c0_max].
AssumptionReport validate_assumptions(const ModelConfig& config, double c0_max);

/// sup of chi over [0, cmax] on the same 1e4-point grid.
double chi_sup(const SensitivitySpec& spec, double cmax);

/// Assemble the t=0 state: Gaussian blobs for n and c, background for c,
/// velocity projected divergence-free, everything dealiased.
State build_initial_state(const ModelConfig& config, const InitialConditionSpec& ic);

} // namespace ksns
