#ifndef EBSG_PROBLEMS_HPP
#define EBSG_PROBLEMS_HPP

#include "ebsg/solver.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ebsg {

/// Gaussian concentration profile advected without diffusion along a channel.
struct PureAdvectionParams {
    double rho = 264.0;        // standard deviation [m]
    double x0 = 2000.0;        // initial centre [m]
    double xi = 0.5;           // velocity [m/s]
    double amplitude = 10.0;
    double length = 9000.0;    // channel length [m]
};

/// Unit-height Gaussian pulse spreading while it is advected, on [0, 9].
struct GaussianPulseParams {
    double xi = 0.8;           // [m/s]
    double lambda = 0.005;     // [m^2/s]
    double x0 = 1.0;           // initial centre
    double a = 0.0;
    double b = 9.0;
};

/// 10 exp(-(x - x0 - xi t)^2 / (2 rho^2)).
double exact_pure_advection(double x, double t, const PureAdvectionParams& params = {});
double exact_pure_advection_dx(double x, double t, const PureAdvectionParams& params = {});

/** Pulse of unit initial height:
 *   1/sqrt(4t+1) exp(-(x - x0 - xi t)^2 / (lambda (4t+1))).
 * The width grows like lambda (4t+1), which is what makes the profile an exact
 * solution of u_t + xi u_x = lambda u_xx with the stated amplitude decay.
 */
double exact_gaussian_pulse(double x, double t, const GaussianPulseParams& params = {});
double exact_gaussian_pulse_dx(double x, double t, const GaussianPulseParams& params = {});

/// max_j |exact_j - numeric_j|.
double linf_error(std::span<const double> numeric, std::span<const double> exact);

/// xi dt / h.
double courant_number(double xi, double dt, double h);

struct Peak {
    double value = 0.0;
    double position = 0.0;
};

/// Largest value and its knot; ties go to the leftmost knot.
Peak peak_concentration(std::span<const double> values, std::span<const double> knots);

/// Knots x_0..x_N of a mesh.
std::vector<double> mesh_knots(const Mesh& mesh);

/// Elements for a nominal spacing h on [a, b]: round((b - a) / h).
int elements_for_spacing(double a, double b, double h);

ProblemSpec make_pure_advection(const PureAdvectionParams& params, int elements, double dt,
                                double t_final, double p);

ProblemSpec make_gaussian_pulse(const GaussianPulseParams& params, int elements, double dt,
                                double t_final, double p);

/// Reference rows, kept for report annotation.
namespace reference {

struct PeakRow {
    double courant;
    double h;
    double p;
    double peak;  // reference peak concentration at t = 9600 s
};

struct ErrorRow {
    double courant;
    double h;
    double dt;
    double p;
    double linf;  // reference maximum error
};

inline constexpr double kChannelTime = 9600.0;
inline constexpr double kChannelStep = 50.0;
inline constexpr double kPulseTime = 5.0;
inline constexpr double kPulseStep = 0.0125;
inline constexpr double kPulseTension = 0.05286;

const std::vector<PeakRow>& peak_table();       // pure advection, dt = 50
const std::vector<ErrorRow>& channel_errors();  // pure advection errors
const std::vector<ErrorRow>& pulse_errors();    // Gaussian pulse errors at t = 5

}  // namespace reference

}  // namespace ebsg

#endif
