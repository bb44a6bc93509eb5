#include "ksns/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ksns/dynamics.hpp"
#include "ksns/spectral.hpp"

namespace ksns {

namespace {

constexpr double kEntropyFloor = 1e-300;
constexpr int kSupGridPoints = 10000;

void require_fresh(const State& s, const char* who) {
    if (!s.finite()) throw_error(ErrorCode::stale_state, std::string(who) + ": non-finite state");
    const double undershoot = std::max(0.0, -s.n.min());
    if (undershoot > 1e-6 * std::max(s.n.max(), kEntropyFloor))
        throw_error(ErrorCode::stale_state,
                    std::string(who) + ": state carries a flagged negative undershoot");
}

double linf_of_range(double lo, double hi) { return std::max(std::abs(lo), std::abs(hi)); }

} // namespace

WeightSpec WeightSpec::from_formula(int p, const SensitivitySpec& sens, double cmax) {
    WeightSpec w;
    w.p = p;
    w.source = Source::formula;
    w.cmax = cmax;
    const double chi1 = chi_sup(sens, cmax);
    w.beta = std::sqrt(6.0 * p * (p - 1.0)) * chi1;
    return w;
}

WeightSpec WeightSpec::manual(int p, double beta, double cmax) {
    WeightSpec w;
    w.p = p;
    w.beta = beta;
    w.source = Source::manual;
    w.cmax = cmax;
    return w;
}

double weight_ode(const SensitivitySpec& sens, double c) {
    const double cc = std::max(c, 0.0);
    return std::exp(sens.chi0 * cc + 0.5 * sens.chi1_lin * cc * cc);
}

double weight_gauss(const WeightSpec& w, double c) {
    const double bc = w.beta * c;
    return std::exp(bc * bc);
}

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0))
        throw_error(ErrorCode::invalid_exponent, "lp_norm: exponent must be >= 1");
    if (!f.finite()) throw_error(ErrorCode::invalid_field, "lp_norm: non-finite field");
    if (std::isinf(p)) return f.max_abs();
    double s = 0.0;
    if (p == 1.0) {
        for (double v : f.values) s += std::abs(v);
    } else if (p == 2.0) {
        for (double v : f.values) s += v * v;
    } else {
        for (double v : f.values) s += std::pow(std::abs(v), p);
    }
    return std::pow(s * f.grid.cell_area(), 1.0 / p);
}

double entropy(const State& s) {
    require_fresh(s, "entropy");
    double acc = 0.0;
    for (double v : s.n.values) {
        const double n = std::max(v, 0.0);
        acc += n * std::log(std::max(n, kEntropyFloor));
    }
    return acc * s.grid().cell_area();
}

ScalarField vorticity(const VectorField& u) {
    if (!u.finite()) throw_error(ErrorCode::invalid_field, "vorticity: non-finite field");
    auto wx = derivative(transform_forward(u.y), Axis::x, 1);
    auto wy = derivative(transform_forward(u.x), Axis::y, 1);
    for (std::size_t i = 0; i < wx.coef.size(); ++i) wx.coef[i] -= wy.coef[i];
    return transform_inverse(wx);
}

double weighted_energy(const State& s, const WeightSpec& w, const SensitivitySpec&) {
    require_fresh(s, "weighted_energy");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.n.values.size(); ++i) {
        const double n = std::max(s.n.values[i], 0.0);
        acc += std::pow(n, w.p) * weight_gauss(w, s.c.values[i]);
    }
    return acc * s.grid().cell_area();
}

double truncated_energy(const State& s, const WeightSpec& w, double K,
                        const SensitivitySpec& sens) {
    require_fresh(s, "truncated_energy");
    if (K < 0.0) throw_error(ErrorCode::invalid_exponent, "truncated_energy: K must be >= 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.n.values.size(); ++i) {
        const double phi = weight_ode(sens, s.c.values[i]);
        const double g = std::max(s.n.values[i], 0.0) / phi - K;
        if (g > 0.0) acc += std::pow(g, w.p) * phi;
    }
    return acc * s.grid().cell_area();
}

namespace {

struct IdentityTerms {
    double F; // weighted energy of n/phi against phi
    double D; // 4(p-1)/p * integral phi |grad (n/phi)^{p/2}|^2
    double R; // (p-1) * integral phi^2 chi k (n/phi)^{p+1}
};

IdentityTerms identity_terms(const State& s, int p, const SensitivitySpec& sens) {
    const GridSpec& g = s.grid();
    ScalarField ratio_pow(g); // (n/phi)^{p/2}
    double F = 0.0, R = 0.0;
    for (std::size_t i = 0; i < s.n.values.size(); ++i) {
        const double c = s.c.values[i];
        const double phi = weight_ode(sens, c);
        const double ratio = std::max(s.n.values[i], 0.0) / phi;
        const auto sv = eval_sensitivity(sens, std::max(c, 0.0));
        F += std::pow(ratio, p) * phi;
        R += phi * phi * sv.chi * sv.k * std::pow(ratio, p + 1);
        ratio_pow.values[i] = std::pow(ratio, 0.5 * p);
    }
    auto spec = transform_forward(ratio_pow);
    auto gx = transform_inverse(derivative(spec, Axis::x, 1));
    auto gy = transform_inverse(derivative(spec, Axis::y, 1));
    double D = 0.0;
    for (std::size_t i = 0; i < gx.values.size(); ++i) {
        const double phi = weight_ode(sens, s.c.values[i]);
        D += phi * (gx.values[i] * gx.values[i] + gy.values[i] * gy.values[i]);
    }
    const double area = g.cell_area();
    return IdentityTerms{F * area, 4.0 * (p - 1.0) / p * D * area, (p - 1.0) * R * area};
}

} // namespace

double weighted_identity_residual(const State& s_prev, const State& s_next,
                                  const WeightSpec& w, const ModelConfig& m) {
    if (m.mu != 0)
        throw_error(ErrorCode::wrong_model,
                    "weighted_identity_residual: equality holds for the hyperbolic system only");
    require_fresh(s_prev, "weighted_identity_residual");
    require_fresh(s_next, "weighted_identity_residual");
    const double dt = s_next.t - s_prev.t;
    if (!(dt > 0.0))
        throw_error(ErrorCode::empty_input, "weighted_identity_residual: states must advance in t");
    const auto a = identity_terms(s_prev, w.p, m.sensitivity);
    const auto b = identity_terms(s_next, w.p, m.sensitivity);
    const double dF = (b.F - a.F) / dt;
    const double D = 0.5 * (a.D + b.D);
    const double R = 0.5 * (a.R + b.R);
    const double scale = std::max({std::abs(dF), std::abs(D), std::abs(R), 1e-300});
    return std::abs(dF + D - R) / scale;
}

double moment_centered(const State& s) {
    require_fresh(s, "moment_centered");
    const GridSpec& g = s.grid();
    double acc = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        double dx = g.x(ix) - 0.5 * g.lx;
        if (dx < -0.5 * g.lx) dx += g.lx;
        if (dx >= 0.5 * g.lx) dx -= g.lx;
        for (int iy = 0; iy < g.ny; ++iy) {
            double dy = g.y(iy) - 0.5 * g.ly;
            if (dy < -0.5 * g.ly) dy += g.ly;
            if (dy >= 0.5 * g.ly) dy -= g.ly;
            acc += std::sqrt(1.0 + dx * dx + dy * dy) * s.n.at(ix, iy);
        }
    }
    return acc * g.cell_area();
}

double decay_fit(const std::vector<double>& t, const std::vector<double>& y,
                 double t0, double t1) {
    if (t.size() != y.size())
        throw_error(ErrorCode::invalid_series, "decay_fit: mismatched series lengths");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1) continue;
        if (!(y[i] > 0.0))
            throw_error(ErrorCode::invalid_series, "decay_fit: series must be positive");
        const double x = std::log1p(t[i]);
        const double v = std::log(y[i]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        ++count;
    }
    if (count < 8)
        throw_error(ErrorCode::invalid_series, "decay_fit: need at least 8 samples in window");
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0)
        throw_error(ErrorCode::invalid_series, "decay_fit: degenerate time window");
    return (count * sxy - sx * sy) / denom;
}

MixedNormResult mixed_norm_integral(const Trajectory& traj, const MixedNormSpec& spec) {
    if (traj.records.empty())
        throw_error(ErrorCode::empty_input, "mixed_norm_integral: empty trajectory");
    auto pick = [&](const DiagnosticsRecord& r) -> double {
        if (spec.p == 1.0) return r.l1_n;
        if (spec.p == 2.0) return r.l2_n;
        if (spec.p == 4.0) return r.l4_n;
        if (std::isinf(spec.p)) return r.linf_n;
        throw_error(ErrorCode::invalid_exponent,
                    "mixed_norm_integral: p must be one of the recorded exponents 1,2,4,inf");
    };
    double acc = 0.0;
    for (std::size_t i = 1; i < traj.records.size(); ++i) {
        const double dt = traj.records[i].t - traj.records[i - 1].t;
        const double a = std::pow(pick(traj.records[i - 1]), spec.q);
        const double b = std::pow(pick(traj.records[i]), spec.q);
        acc += 0.5 * (a + b) * dt;
    }
    return MixedNormResult{acc, traj.records.front().t, traj.records.back().t};
}

namespace {

double level_set_layer(const State& s, const LevelSetSpec& ls, const SensitivitySpec& sens,
                       double xi) {
    const double cut = xi * ls.eta(s.t);
    double acc = 0.0;
    if (ls.variant == LevelSetVariant::pksns) {
        for (std::size_t i = 0; i < s.n.values.size(); ++i) {
            const double gn = s.n.values[i] - cut;
            if (gn > 0.0) acc += std::pow(gn, ls.p);
            const double gc = s.c.values[i] - cut;
            if (gc > 0.0) acc += std::pow(gc, ls.p);
        }
    } else {
        for (std::size_t i = 0; i < s.n.values.size(); ++i) {
            const double ratio = std::max(s.n.values[i], 0.0) / weight_ode(sens, s.c.values[i]);
            const double gn = ratio - cut;
            if (gn > 0.0) acc += std::pow(gn, ls.p);
        }
    }
    return acc * s.grid().cell_area();
}

} // namespace

std::vector<XiValue> level_set_U(const Trajectory& traj, const LevelSetSpec& ls,
                                 const WeightSpec&) {
    if (ls.xi_grid.empty())
        throw_error(ErrorCode::empty_input, "level_set_U: empty xi grid");
    if (traj.samples.empty())
        throw_error(ErrorCode::empty_input, "level_set_U: trajectory has no samples");
    std::vector<XiValue> out;
    out.reserve(ls.xi_grid.size());
    for (double xi : ls.xi_grid) {
        double acc = 0.0;
        for (std::size_t i = 1; i < traj.samples.size(); ++i) {
            const State& a = traj.samples[i - 1];
            const State& b = traj.samples[i];
            const double fa = ls.nu(a.t) * level_set_layer(a, ls, traj.config.sensitivity, xi);
            const double fb = ls.nu(b.t) * level_set_layer(b, ls, traj.config.sensitivity, xi);
            acc += 0.5 * (fa + fb) * (b.t - a.t);
        }
        out.push_back({xi, acc});
    }
    return out;
}

LevelSetInfo level_set_info(const Trajectory& traj, const LevelSetSpec& ls, const WeightSpec& w) {
    if (traj.samples.empty())
        throw_error(ErrorCode::empty_input, "level_set_info: trajectory has no samples");
    LevelSetInfo info;
    const State& s0 = traj.samples.front();
    info.xi0 = std::max(s0.n.max_abs(), s0.c.max_abs()) / ls.eta(0.0);
    const double xi_max =
        ls.xi_grid.empty() ? info.xi0 : *std::max_element(ls.xi_grid.begin(), ls.xi_grid.end());
    info.K1 = xi_max * ls.eta(0.0);
    double lsup = 0.0;
    for (int i = 0; i < kSupGridPoints; ++i) {
        const double c = w.cmax * i / (kSupGridPoints - 1.0);
        const auto sv = eval_sensitivity(traj.config.sensitivity, c);
        const double phi = weight_gauss(w, c);
        const double phi_prime = 2.0 * w.beta * w.beta * c * phi;
        lsup = std::max(lsup, phi * sv.chi * sv.chi + sv.chi * phi_prime);
    }
    info.L = lsup;
    const int d = 2;
    info.q = ls.q_embedding(d);
    info.theta = ls.theta(d);
    info.alpha = ls.alpha(d);
    return info;
}

double decay_envelope(const Trajectory& traj, double gamma, double t0, double t1,
                      EnvelopeField field) {
    if (!(t0 < t1))
        throw_error(ErrorCode::empty_input, "decay_envelope: empty window");
    double sup = -1.0;
    for (const auto& r : traj.records) {
        if (r.t < t0 || r.t > t1) continue;
        const double v = (field == EnvelopeField::n) ? linf_of_range(r.min_n, r.max_n)
                                                     : linf_of_range(r.min_c, r.max_c);
        sup = std::max(sup, std::pow(1.0 + r.t, gamma) * v);
    }
    if (sup < 0.0)
        throw_error(ErrorCode::empty_input, "decay_envelope: no records in window");
    return sup;
}

DiagnosticsRecord compute_record(const State& s, const ModelConfig& m, const WeightSpec& w,
                                 double dt) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.mass = s.n.integral();
    r.l1_n = lp_norm(s.n, 1.0);
    r.l2_n = lp_norm(s.n, 2.0);
    r.l4_n = lp_norm(s.n, 4.0);
    r.linf_n = lp_norm(s.n, std::numeric_limits<double>::infinity());
    auto cs = transform_forward(s.c);
    auto cx = transform_inverse(derivative(cs, Axis::x, 1));
    auto cy = transform_inverse(derivative(cs, Axis::y, 1));
    double grad2 = 0.0;
    for (std::size_t i = 0; i < cx.values.size(); ++i)
        grad2 += cx.values[i] * cx.values[i] + cy.values[i] * cy.values[i];
    r.l2_grad_c = std::sqrt(grad2 * s.grid().cell_area());
    r.l2_vorticity = lp_norm(vorticity(s.u), 2.0);
    double kin = 0.0;
    for (std::size_t i = 0; i < s.u.x.values.size(); ++i)
        kin += s.u.x.values[i] * s.u.x.values[i] + s.u.y.values[i] * s.u.y.values[i];
    r.kinetic = kin * s.grid().cell_area();
    r.entropy = entropy(s);
    r.min_n = s.n.min();
    r.max_n = s.n.max();
    r.min_c = s.c.min();
    r.max_c = s.c.max();
    auto ux = transform_forward(s.u.x), uy = transform_forward(s.u.y);
    const double uhat = std::max(ux.max_abs(), uy.max_abs());
    r.div_residual = (uhat > 0.0) ? max_spectral_divergence(ux, uy) / uhat : 0.0;
    r.weighted_energy = weighted_energy(s, w, m.sensitivity);
    r.dt = dt;
    return r;
}

} // namespace ksns
