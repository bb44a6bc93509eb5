#pragma once

#include <optional>
#include <vector>

#include "ksns/model.hpp"
#include "ksns/state.hpp"

namespace ksns {

struct Trajectory; // dynamics.hpp

/// One row of scalar functionals; the CSV columns mirror this struct exactly.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double l1_n = 0.0;
    double l2_n = 0.0;
    double l4_n = 0.0;
    double linf_n = 0.0;
    double l2_grad_c = 0.0;
    double l2_vorticity = 0.0;
    double kinetic = 0.0; // squared L2 norm of u
    double entropy = 0.0;
    double min_n = 0.0;
    double max_n = 0.0;
    double min_c = 0.0;
    double max_c = 0.0;
    double div_residual = 0.0; // max spectral divergence / max |u_hat|
    double weighted_energy = 0.0;
    double dt = 0.0;
};

/// Space-time norm L^q(0,T; L^p) with scaling sum d/p + 2/q.
struct MixedNormSpec {
    double p = 2.0; // > 1, may be infinity
    double q = 2.0;
    int d = 2;

    double scaling_sum() const {
        return (std::isinf(p) ? 0.0 : d / p) + 2.0 / q;
    }
    /// Parabolic-critical pair check (exact, not a tolerance band).
    bool is_theorem1_critical() const { return std::abs(scaling_sum() - 2.0) <= 1e-12; }
};

/// Weight data for the Gaussian weight exp((beta*c)^2). With source=formula,
/// beta satisfies beta^2 = 6p(p-1)chi1^2 where chi1 = sup chi over [0, cmax].
struct WeightSpec {
    enum class Source { formula, manual };
    int p = 2;
    double beta = 0.0;
    Source source = Source::formula;
    double cmax = 0.0;

    static WeightSpec from_formula(int p, const SensitivitySpec& sens, double cmax);
    static WeightSpec manual(int p, double beta, double cmax);
};

/// Weight solving phi' = phi*chi, phi(0)=1; for the polynomial family the
/// integral of chi is exact: phi(c) = exp(chi0*c + chi1_lin*c^2/2).
double weight_ode(const SensitivitySpec& sens, double c);

/// Gaussian weight exp((beta*c)^2).
double weight_gauss(const WeightSpec& w, double c);

enum class LevelSetVariant {
    pksns, // G = n, plus the oxygen term (c - xi*eta)_+^p
    ph,    // G = n / phi_ode(c), no oxygen term
};

/// Level-set energy parameters: nu(t) = (1+t)^nu_exponent,
/// eta(t) = (1+t)^eta_exponent over an increasing positive xi grid.
struct LevelSetSpec {
    double nu_exponent = -1.0;
    double eta_exponent = -0.5; // -d/4 with d=2
    std::vector<double> xi_grid;
    int p = 2;
    double K = 0.0;
    LevelSetVariant variant = LevelSetVariant::pksns;

    double nu(double t) const { return std::pow(1.0 + t, nu_exponent); }
    double eta(double t) const { return std::pow(1.0 + t, eta_exponent); }

    // Sobolev/interpolation exponents carried by the analysis
    double q_embedding(int d) const { return p * (d + 2.0) / d; }
    double theta(int d) const { return (d + 2.0) / (d + 2.0 * p); }
    double alpha(int d) const { return 2.0 * p / (d + 2.0 * p); }
};

/// Constants reported alongside level-set outputs.
struct LevelSetInfo {
    double xi0 = 0.0; // max(|n0|_inf, |c0|_inf) / eta(0)
    double K1 = 0.0;  // sup over xi grid and t of xi*eta(t)
    double L = 0.0;   // sup over [0,cmax] of phi*chi^2 + chi*phi'
    double q = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
};

// ---- state-level functionals ----

/// (sum |f|^p hx hy)^(1/p); p = infinity gives max |f|.
double lp_norm(const ScalarField& f, double p);

/// Integral of max(n,0) * ln(max(n, 1e-300)).
double entropy(const State& s);

/// Spectral curl d1 u2 - d2 u1.
ScalarField vorticity(const VectorField& u);

/// Integral of max(n,0)^p * exp((beta c)^2).
double weighted_energy(const State& s, const WeightSpec& w, const SensitivitySpec& sens);

/// Integral of (max(n,0)/phi_ode(c) - K)_+^p * phi_ode(c).
double truncated_energy(const State& s, const WeightSpec& w, double K,
                        const SensitivitySpec& sens);

/// Discrete residual of the hyperbolic-system weighted energy equality
/// between two states one step apart; normalized by the largest term.
double weighted_identity_residual(const State& s_prev, const State& s_next,
                                  const WeightSpec& w, const ModelConfig& m);

/// Integral of (1 + periodic distance to box center squared)^(1/2) * n.
double moment_centered(const State& s);

/// Least-squares slope of ln y against ln(1+t) over the window.
double decay_fit(const std::vector<double>& t, const std::vector<double>& y,
                 double t0, double t1);

// ---- trajectory-level functionals ----

struct MixedNormResult {
    double value = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Trapezoidal time integral of |n(t)|_{L^p}^q over the per-step records.
/// p must be one of the recorded exponents {1, 2, 4, inf}.
MixedNormResult mixed_norm_integral(const Trajectory& traj, const MixedNormSpec& spec);

struct XiValue {
    double xi = 0.0;
    double U = 0.0;
};

/// De Giorgi level-set energy U(xi) by trapezoid over the stored samples.
std::vector<XiValue> level_set_U(const Trajectory& traj, const LevelSetSpec& ls,
                                 const WeightSpec& w);

/// Constants for the level-set run (xi0, K1, L and the derived exponents).
LevelSetInfo level_set_info(const Trajectory& traj, const LevelSetSpec& ls,
                            const WeightSpec& w);

enum class EnvelopeField { n, c };

/// sup over records in [t0, t1] of (1+t)^gamma * |field(t)|_inf.
double decay_envelope(const Trajectory& traj, double gamma, double t0, double t1,
                      EnvelopeField field = EnvelopeField::n);

/// Record assembly used by the stepper (weighted_energy column uses w).
DiagnosticsRecord compute_record(const State& s, const ModelConfig& m, const WeightSpec& w,
                                 double dt);

} // namespace ksns
