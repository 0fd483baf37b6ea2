#ifndef EBSG_CONFIG_HPP
#define EBSG_CONFIG_HPP

#include "ebsg/expression.hpp"
#include "ebsg/solver.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ebsg {

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ProblemKind { pure_advection, gaussian_pulse, custom };

std::string_view to_string(ProblemKind kind) noexcept;

/** One run, read from flat `key = value` lines (`#` starts a comment).
 *
 * Required: problem, dt, t_final, p, and exactly one of n / h.
 * Optional: xi, lambda, x0, snapshots (comma-separated times), quad_order.
 * problem = custom additionally takes a, b, u0 (in x), exact (in x and t)
 * and optionally f0, fl (in t, default 0).
 */
struct RunConfig {
    ProblemKind problem = ProblemKind::pure_advection;
    std::optional<int> n;
    std::optional<double> h;
    double dt = 0.0;
    double t_final = 0.0;
    double p = 0.0;
    std::optional<double> xi;
    std::optional<double> lambda;
    std::optional<double> x0;
    std::vector<double> snapshots;
    int quad_order = kDefaultQuadratureOrder;

    std::optional<double> a;
    std::optional<double> b;
    std::string u0;
    std::string exact;
    std::string f0;
    std::string fl;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text: fixed key order, shortest round-trip numbers.
std::string canonical_form(const RunConfig& config);

double domain_start(const RunConfig& config);
double domain_end(const RunConfig& config);
int element_count(const RunConfig& config);
/// Spacing of the mesh actually used, (b - a) / N.
double mesh_spacing(const RunConfig& config);
double velocity(const RunConfig& config);
double diffusion(const RunConfig& config);
double courant_number(const RunConfig& config);

ProblemSpec to_problem(const RunConfig& config);

using ExactSolution = std::function<double(double x, double t)>;
ExactSolution exact_solution(const RunConfig& config);

}  // namespace ebsg

#endif
