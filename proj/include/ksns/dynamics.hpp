#pragma once

#include "ksns/diagnostics.hpp"
#include "ksns/model.hpp"
#include "ksns/state.hpp"

namespace ksns {

enum class Termination { completed, flagged_blowup, flagged_negative, dt_underflow };

const char* termination_name(Termination t);

/// Sampled solution of one run: states at multiples of sample_interval and a
/// diagnostics record per step (first record at t=0).
struct Trajectory {
    ModelConfig config;
    std::vector<State> samples;
    std::vector<DiagnosticsRecord> records;
    Termination termination = Termination::completed;
};

struct Tendencies {
    ScalarField dn;
    ScalarField dc;
    VectorField du;
};

/// Full semi-discrete right-hand side (diffusion included explicitly here;
/// the stepper integrates diffusion exactly instead). du is Leray-projected;
/// every nonlinear product is dealiased.
Tendencies compute_tendencies(const State& s, const ModelConfig& m);

/// One IMEX step: exact spectral integrating factor for diffusion, explicit
/// nonlinear terms (imex_euler: forward Euler; imex_bdf2: the self-starting
/// Heun stage form of the two-step scheme run_trajectory uses).
State step(const State& s, const ModelConfig& m, double dt);

/// CFL-type step size: cfl_safety * min(hx,hy) / (max |u| + chi(c)|grad c| + 1e-8),
/// clamped to [dt_min, dt_max]. Throws DtUnderflow when the unclamped value
/// falls below dt_min.
double adapt_dt(const State& s, const ModelConfig& m);

/// Integrate from build_initial_state(m, ic) to t_end or a flagged stop.
/// Deterministic: identical inputs give bit-identical trajectories.
Trajectory run_trajectory(const ModelConfig& m, const InitialConditionSpec& ic);

/// Same integration, starting from an explicit initial state.
Trajectory run_trajectory_from(State initial, const ModelConfig& m);

} // namespace ksns
