#ifndef EBSG_SOLVER_HPP
#define EBSG_SOLVER_HPP

#include "ebsg/assembly.hpp"
#include "ebsg/banded.hpp"
#include "ebsg/basis.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ebsg {

using ScalarFunction = std::function<double(double)>;

/** Advection-diffusion problem u_t + xi u_x - lambda u_xx = 0 on [a, b]
 * with Dirichlet data u(a,t) = left_boundary(t), u(b,t) = right_boundary(t).
 */
struct ProblemSpec {
    double xi = 0.0;
    double lambda = 0.0;
    double a = 0.0;
    double b = 1.0;
    int elements = 0;
    double p = 0.0;
    double dt = 0.0;
    double t_final = 0.0;

    ScalarFunction initial;
    /// u0'(a), u0'(b). When absent they are estimated from `initial` by
    /// one-sided fourth-order differences.
    std::optional<double> initial_slope_left;
    std::optional<double> initial_slope_right;

    ScalarFunction left_boundary;
    ScalarFunction right_boundary;

    Mesh mesh() const { return Mesh(a, b, elements); }
    std::int64_t step_count() const;
};

inline constexpr std::int64_t kMaxSteps = 100'000'000;

/// Throws std::invalid_argument describing the first violated requirement.
void validate(const ProblemSpec& problem);

/// Spline coefficients delta_{-1} .. delta_{N+1} at time t.
struct CoefficientVector {
    std::vector<double> values;
    double t = 0.0;

    CoefficientVector() = default;
    CoefficientVector(int elements, double time) : values(elements + 3, 0.0), t(time) {}

    int elements() const noexcept { return static_cast<int>(values.size()) - 3; }
    /// Basis index i in -1 .. N+1.
    double operator[](int i) const { return values[i + 1]; }
    double& operator[](int i) { return values[i + 1]; }
};

struct SolutionHistory {
    Mesh mesh;
    BasisConstants constants;
    std::vector<CoefficientVector> snapshots;  // strictly increasing t, first at t = 0

    const CoefficientVector& final_state() const { return snapshots.back(); }
};

/// One-sided fourth-order estimate of f'(x) with step `step` (negative
/// steps look to the left).
double one_sided_derivative(const ScalarFunction& f, double x, double step);

/** Initial coefficients from the N+1 knot interpolation conditions plus the two
 * endpoint slope conditions. The exterior coefficients are eliminated through
 * the slope rows, leaving an (N+1) tridiagonal system solved by Thomas.
 */
CoefficientVector fit_initial(const ProblemSpec& problem, const BasisConstants& k);

struct CrankNicolsonMatrices {
    BandedMatrix lhs;  // A + dt/2 (xi B - lambda C)
    BandedMatrix rhs;  // A - dt/2 (xi B - lambda C)
};

CrankNicolsonMatrices build_crank_nicolson(const BandedMatrix& mass, const BandedMatrix& advection,
                                           const BandedMatrix& diffusion, double xi, double lambda,
                                           double dt);

/** Dirichlet-reduced Crank-Nicolson system in the unknowns delta_0..delta_N.
 *
 * The Galerkin equations for weights phi_{-1} and phi_{N+1} are dropped, and
 * delta_{-1}, delta_{N+1} are replaced using the knot reconstruction at x_0
 * and x_N equated to the boundary values.
 */
struct DirichletReduction {
    BandedMatrix lhs;            // (N+1) x (N+1)
    BandedMatrix rhs_operator;   // full (N+3) right-hand matrix
    double alpha1 = 0.0;
    /// lhs entries multiplying delta_{-1} in reduced rows 0..2.
    std::array<double, 3> left_column{};
    /// lhs entries multiplying delta_{N+1} in reduced rows N-2..N.
    std::array<double, 3> right_column{};

    int unknowns() const noexcept { return lhs.size(); }
};

DirichletReduction apply_dirichlet(const BandedMatrix& lhs, const BandedMatrix& rhs,
                                   const BasisConstants& k);

/// Right-hand side of the reduced system for a step ending at boundary values
/// (left_next, right_next).
void reduced_rhs(const DirichletReduction& red, const CoefficientVector& state, double left_next,
                 double right_next, std::span<double> full_work, std::span<double> out);

/// Recovers delta_{-1}, delta_{N+1} from the interior values and the boundary data.
void restore_exterior(const DirichletReduction& red, CoefficientVector& state, double left,
                      double right);

/** Factored time-stepping machinery for one problem. The factorization is
 * computed once; step() and advance() are const and may run concurrently on
 * distinct states.
 */
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(DirichletReduction reduction, ScalarFunction left_boundary,
                         ScalarFunction right_boundary);

    /// Advances `state` to t_next in place; `work` is scratch of any size.
    void advance(CoefficientVector& state, double t_next, std::vector<double>& work) const;

    CoefficientVector step(const CoefficientVector& state, double t_next) const;

    /// Step with explicitly supplied boundary values at t_next.
    void advance_with(CoefficientVector& state, double t_next, double left_next,
                      double right_next, std::vector<double>& work) const;

    const DirichletReduction& reduction() const noexcept { return reduction_; }

private:
    DirichletReduction reduction_;
    BandedLU lu_;
    ScalarFunction left_;
    ScalarFunction right_;
};

/// Builds the full stepping machinery (assembly through factorization).
CrankNicolsonStepper make_stepper(const ProblemSpec& problem, const Mesh& mesh,
                                  const BasisConstants& k,
                                  int quad_order = kDefaultQuadratureOrder);

struct RunOptions {
    /// Requested snapshot times; each is snapped to the nearest step.
    std::vector<double> output_times;
    int quad_order = kDefaultQuadratureOrder;
};

/// Snapshots are always taken at t = 0 and t_final.
SolutionHistory run(const ProblemSpec& problem, const RunOptions& options = {});

/// U(x) for a <= x <= b (deriv 0, 1 or 2). Throws std::out_of_range outside the domain.
double evaluate(const CoefficientVector& state, const Mesh& mesh, const BasisConstants& k,
                double x, int deriv = 0);

/// U at the knots x_0..x_N: alpha1 delta_{i-1} + delta_i + alpha1 delta_{i+1}.
std::vector<double> nodal_values(const CoefficientVector& state, const BasisConstants& k);

}  // namespace ebsg

#endif
