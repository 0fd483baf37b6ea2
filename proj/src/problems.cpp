#include "ebsg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace ebsg {

double exact_pure_advection(double x, double t, const PureAdvectionParams& params)
{
    const double d = x - params.x0 - params.xi * t;
    return params.amplitude * std::exp(-d * d / (2.0 * params.rho * params.rho));
}

double exact_pure_advection_dx(double x, double t, const PureAdvectionParams& params)
{
    const double d = x - params.x0 - params.xi * t;
    return -d / (params.rho * params.rho) * exact_pure_advection(x, t, params);
}

double exact_gaussian_pulse(double x, double t, const GaussianPulseParams& params)
{
    const double spread = 4.0 * t + 1.0;
    const double d = x - params.x0 - params.xi * t;
    return std::exp(-d * d / (params.lambda * spread)) / std::sqrt(spread);
}

double exact_gaussian_pulse_dx(double x, double t, const GaussianPulseParams& params)
{
    const double spread = 4.0 * t + 1.0;
    const double d = x - params.x0 - params.xi * t;
    return -2.0 * d / (params.lambda * spread) * exact_gaussian_pulse(x, t, params);
}

double linf_error(std::span<const double> numeric, std::span<const double> exact)
{
    if (numeric.size() != exact.size()) {
        throw std::invalid_argument("linf_error: length mismatch");
    }
    if (numeric.empty()) {
        throw std::invalid_argument("linf_error: empty input");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        worst = std::max(worst, std::abs(exact[i] - numeric[i]));
    }
    return worst;
}

double courant_number(double xi, double dt, double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("courant_number: h must be positive");
    }
    return xi * dt / h;
}

Peak peak_concentration(std::span<const double> values, std::span<const double> knots)
{
    if (values.empty()) {
        throw std::invalid_argument("peak_concentration: empty input");
    }
    if (knots.size() != values.size()) {
        throw std::invalid_argument("peak_concentration: values and knots differ in length");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return {values[best], knots[best]};
}

std::vector<double> mesh_knots(const Mesh& mesh)
{
    std::vector<double> x(mesh.elements() + 1);
    for (int i = 0; i <= mesh.elements(); ++i) {
        x[i] = mesh.knot(i);
    }
    return x;
}

int elements_for_spacing(double a, double b, double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("spacing must be positive");
    }
    const double n = std::round((b - a) / h);
    if (n < 1.0 || n > 1e9) {
        throw std::invalid_argument("spacing gives an unusable element count");
    }
    return static_cast<int>(n);
}

ProblemSpec make_pure_advection(const PureAdvectionParams& params, int elements, double dt,
                                double t_final, double p)
{
    ProblemSpec spec;
    spec.xi = params.xi;
    spec.lambda = 0.0;
    spec.a = 0.0;
    spec.b = params.length;
    spec.elements = elements;
    spec.p = p;
    spec.dt = dt;
    spec.t_final = t_final;
    spec.initial = [params](double x) { return exact_pure_advection(x, 0.0, params); };
    spec.initial_slope_left = exact_pure_advection_dx(spec.a, 0.0, params);
    spec.initial_slope_right = exact_pure_advection_dx(spec.b, 0.0, params);
    spec.left_boundary = [](double) { return 0.0; };
    spec.right_boundary = [](double) { return 0.0; };
    return spec;
}

ProblemSpec make_gaussian_pulse(const GaussianPulseParams& params, int elements, double dt,
                                double t_final, double p)
{
    ProblemSpec spec;
    spec.xi = params.xi;
    spec.lambda = params.lambda;
    spec.a = params.a;
    spec.b = params.b;
    spec.elements = elements;
    spec.p = p;
    spec.dt = dt;
    spec.t_final = t_final;
    spec.initial = [params](double x) { return exact_gaussian_pulse(x, 0.0, params); };
    spec.initial_slope_left = exact_gaussian_pulse_dx(spec.a, 0.0, params);
    spec.initial_slope_right = exact_gaussian_pulse_dx(spec.b, 0.0, params);
    spec.left_boundary = [](double) { return 0.0; };
    spec.right_boundary = [](double) { return 0.0; };
    return spec;
}

namespace reference {

const std::vector<PeakRow>& peak_table()
{
    static const std::vector<PeakRow> rows{
        {0.25, 100.0, 6.8e-6, 9.992}, {0.50, 50.0, 13.6e-6, 9.992}, {0.75, 33.3, 2.04e-5, 9.992},
        {1.00, 25.0, 3.59e-5, 9.992}, {1.50, 16.6, 4.91e-5, 9.992}, {2.00, 12.5, 7.18e-5, 9.992},
        {3.20, 7.8, 7.50e-6, 9.993},
    };
    return rows;
}

const std::vector<ErrorRow>& channel_errors()
{
    static const std::vector<ErrorRow> rows{
        {0.125, 200.0, 50.0, 3.30e-6, 1.63e-1}, {0.25, 100.0, 50.0, 6.80e-6, 8.60e-2},
        {0.50, 50.0, 50.0, 13.6e-6, 9.07e-2},   {0.50, 10.0, 10.0, 1.53e-4, 3.51e-3},
        {0.50, 1.0, 1.0, 3.04e-4, 3.53e-5},     {0.50, 0.5, 0.5, 3.40e-3, 1.20e-5},
        {0.75, 33.3, 50.0, 2.04e-5, 9.03e-2},   {1.00, 25.0, 50.0, 3.59e-5, 9.02e-2},
        {1.50, 16.6, 50.0, 4.91e-5, 8.96e-2},   {2.00, 12.5, 50.0, 7.18e-5, 9.02e-2},
        {3.20, 7.8, 50.0, 7.50e-6, 8.90e-2},
    };
    return rows;
}

const std::vector<ErrorRow>& pulse_errors()
{
    static const std::vector<ErrorRow> rows{
        {0.05, 0.2, kPulseStep, kPulseTension, 0.1326154},
        {0.10, 0.1, kPulseStep, kPulseTension, 0.0042464},
        {0.20, 0.05, kPulseStep, kPulseTension, 0.0008333},
        {0.40, 0.025, kPulseStep, kPulseTension, 0.0004134},
    };
    return rows;
}

}  // namespace reference

}  // namespace ebsg
