#include "ksns/model.hpp"

#include <cmath>

#include "ksns/spectral.hpp"

namespace ksns {

namespace {
constexpr int kSupGridPoints = 10000;

double wrap_delta(double d, double l) {
    // periodic displacement in [-l/2, l/2)
    d = std::fmod(d, l);
    if (d < -0.5 * l) d += l;
    if (d >= 0.5 * l) d -= l;
    return d;
}
} // namespace

Sensitivities eval_sensitivity(const SensitivitySpec& spec, double c) {
    if (c < 0.0)
        throw_error(ErrorCode::out_of_domain, "eval_sensitivity: negative concentration");
    return Sensitivities{
        spec.chi0 + spec.chi1_lin * c,
        spec.chi1_lin,
        spec.kap1 * c + spec.kap2 * c * c,
        spec.kap1 + 2.0 * spec.kap2 * c,
    };
}

void StepperConfig::validate() const {
    if (!(dt_min <= dt_init && dt_init <= dt_max))
        throw_error(ErrorCode::invalid_config, "stepper: need dt_min <= dt_init <= dt_max");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw_error(ErrorCode::invalid_config, "stepper: cfl_safety must be in (0,1]");
    if (hyperbolic_filter_order < 8 || hyperbolic_filter_order % 2 != 0)
        throw_error(ErrorCode::invalid_config,
                    "stepper: hyperbolic_filter_order must be an even integer >= 8");
}

void ModelConfig::validate() const {
    if (mu != 0 && mu != 1)
        throw_error(ErrorCode::invalid_config, "model: mu must be 0 or 1");
    if (!(t_end > 0.0))
        throw_error(ErrorCode::invalid_config, "model: t_end must be positive");
    if (!(sample_interval > 0.0 && sample_interval <= t_end))
        throw_error(ErrorCode::invalid_config, "model: sample_interval must be in (0, t_end]");
    if (sensitivity.chi0 < 0.0 || sensitivity.chi1_lin < 0.0 || sensitivity.kap1 < 0.0 ||
        sensitivity.kap2 < 0.0)
        throw_error(ErrorCode::invalid_config, "model: sensitivity parameters must be >= 0");
    if (weighted.p < 2)
        throw_error(ErrorCode::invalid_config, "model: weighted diagnostic exponent must be >= 2");
    stepper.validate();
}

double chi_sup(const SensitivitySpec& spec, double cmax) {
    double sup = 0.0;
    for (int i = 0; i < kSupGridPoints; ++i) {
        const double c = cmax * i / (kSupGridPoints - 1.0);
        sup = std::max(sup, spec.chi0 + spec.chi1_lin * c);
    }
    return sup;
}

AssumptionReport validate_assumptions(const ModelConfig& config, double c0_max) {
    if (c0_max < 0.0)
        throw_error(ErrorCode::out_of_domain, "validate_assumptions: c0_max must be >= 0");
    const SensitivitySpec& s = config.sensitivity;
    AssumptionReport report;
    report.k_zero_ok = (s.kap1 * 0.0 + s.kap2 * 0.0) == 0.0;
    report.chi_k_signs_ok = true;
    double sup_diff = 0.0, sup_chi = 0.0;
    for (int i = 0; i < kSupGridPoints; ++i) {
        const double c = c0_max * i / (kSupGridPoints - 1.0);
        const auto v = eval_sensitivity(s, c);
        if (v.chi < 0.0 || v.k < 0.0 || v.chi_prime < 0.0 || v.k_prime < 0.0)
            report.chi_k_signs_ok = false;
        sup_diff = std::max(sup_diff, std::abs(v.chi - config.mu * v.k));
        sup_chi = std::max(sup_chi, v.chi);
    }
    report.sup_chi_minus_mu_k = sup_diff;
    report.chi1_sup = sup_chi;
    for (int p : {2, 4})
        report.smallness_products[p] = sup_chi * c0_max * 24.0 * p;
    return report;
}

State build_initial_state(const ModelConfig& config, const InitialConditionSpec& ic) {
    const GridSpec& g = config.grid;
    for (const auto& blobs : {ic.n_blobs, ic.c_blobs})
        for (const auto& b : blobs)
            if (b.amplitude < 0.0 || !(b.width > 0.0))
                throw_error(ErrorCode::invalid_config,
                            "initial condition: blob amplitude must be >= 0 and width > 0");
    if (ic.c_background < 0.0)
        throw_error(ErrorCode::invalid_config, "initial condition: c_background must be >= 0");

    auto blob_sum = [&](const std::vector<GaussianBlob>& blobs, double base) {
        return ScalarField::sample(g, [&](double x, double y) {
            double v = base;
            for (const auto& b : blobs) {
                const double dx = wrap_delta(x - b.cx, g.lx);
                const double dy = wrap_delta(y - b.cy, g.ly);
                v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (b.width * b.width));
            }
            return v;
        });
    };

    State s(g);
    s.t = 0.0;
    s.n = transform_inverse(dealias(transform_forward(blob_sum(ic.n_blobs, 0.0))));
    s.c = transform_inverse(dealias(transform_forward(blob_sum(ic.c_blobs, ic.c_background))));

    if (ic.u_mode == VelocityMode::taylor_green) {
        const double kx = 2.0 * std::numbers::pi / g.lx;
        const double ky = 2.0 * std::numbers::pi / g.ly;
        s.u.x = ScalarField::sample(
            g, [&](double x, double y) { return ic.u_amplitude * std::sin(kx * x) * std::cos(ky * y); });
        s.u.y = ScalarField::sample(g, [&](double x, double y) {
            return -ic.u_amplitude * std::cos(kx * x) * std::sin(ky * y);
        });
    }
    auto ux = dealias(transform_forward(s.u.x));
    auto uy = dealias(transform_forward(s.u.y));
    leray_project_spectral(ux, uy);
    s.u.x = transform_inverse(ux);
    s.u.y = transform_inverse(uy);
    return s;
}

} // namespace ksns
