#include "ebsg/solver.hpp"

#include "ebsg/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ebsg {

std::int64_t ProblemSpec::step_count() const
{
    const double ratio = t_final / dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << "problem: t_final / dt = " << ratio << " is not a whole number of steps";
        throw std::invalid_argument(msg.str());
    }
    if (steps > static_cast<double>(kMaxSteps)) {
        throw std::invalid_argument("problem: more than 1e8 time steps requested");
    }
    return static_cast<std::int64_t>(steps);
}

void validate(const ProblemSpec& problem)
{
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("problem: ") + what); };
    if (!std::isfinite(problem.xi) || !std::isfinite(problem.lambda)) {
        fail("xi and lambda must be finite");
    }
    if (problem.lambda < 0.0) {
        fail("lambda must be non-negative");
    }
    if (!(problem.dt > 0.0) || !std::isfinite(problem.dt)) {
        fail("dt must be positive");
    }
    if (!(problem.t_final >= 0.0) || !std::isfinite(problem.t_final)) {
        fail("t_final must be non-negative");
    }
    if (!(problem.p > 0.0)) {
        fail("tension p must be positive");
    }
    if (problem.elements < 3) {
        fail("at least 3 elements are required");
    }
    if (!(problem.a < problem.b)) {
        fail("domain must satisfy a < b");
    }
    if (!problem.initial || !problem.left_boundary || !problem.right_boundary) {
        fail("initial and boundary functions must be set");
    }
    (void)problem.step_count();
}

double one_sided_derivative(const ScalarFunction& f, double x, double step)
{
    const double f0 = f(x);
    const double f1 = f(x + step);
    const double f2 = f(x + 2.0 * step);
    const double f3 = f(x + 3.0 * step);
    const double f4 = f(x + 4.0 * step);
    return (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * step);
}

CoefficientVector fit_initial(const ProblemSpec& problem, const BasisConstants& k)
{
    const Mesh mesh = problem.mesh();
    const int n = mesh.elements();
    const double a1 = k.alpha1;
    const double a2 = k.alpha2;
    if (!(a1 > 0.0 && a1 < 0.5)) {
        throw std::logic_error("fit_initial: alpha1 outside (0, 1/2); system would be singular");
    }

    const double fd_step = std::min(mesh.spacing(), 1e-4 * (mesh.b() - mesh.a()));
    const double slope_left = problem.initial_slope_left
                                  ? *problem.initial_slope_left
                                  : one_sided_derivative(problem.initial, mesh.a(), fd_step);
    const double slope_right = problem.initial_slope_right
                                   ? *problem.initial_slope_right
                                   : one_sided_derivative(problem.initial, mesh.b(), -fd_step);

    // Knot slopes: U'_i = alpha2 (delta_{i-1} - delta_{i+1}), so
    //   delta_{-1}  = delta_1     + u0'(a) / alpha2
    //   delta_{N+1} = delta_{N-1} - u0'(b) / alpha2
    const double shift_left = slope_left / a2;
    const double shift_right = -slope_right / a2;

    TridiagonalSystem sys;
    sys.sub.assign(n + 1, a1);
    sys.diag.assign(n + 1, 1.0);
    sys.super.assign(n + 1, a1);
    std::vector<double> rhs(n + 1);
    for (int m = 0; m <= n; ++m) {
        rhs[m] = problem.initial(mesh.knot(m));
    }
    sys.super[0] = 2.0 * a1;
    rhs[0] -= a1 * shift_left;
    sys.sub[n] = 2.0 * a1;
    rhs[n] -= a1 * shift_right;

    const std::vector<double> interior = thomas_solve(sys, rhs);

    CoefficientVector state(n, 0.0);
    for (int m = 0; m <= n; ++m) {
        state[m] = interior[m];
    }
    state[-1] = state[1] + shift_left;
    state[n + 1] = state[n - 1] + shift_right;
    return state;
}

CrankNicolsonMatrices build_crank_nicolson(const BandedMatrix& mass, const BandedMatrix& advection,
                                           const BandedMatrix& diffusion, double xi, double lambda,
                                           double dt)
{
    if (advection.size() != mass.size() || diffusion.size() != mass.size()) {
        throw std::invalid_argument("build_crank_nicolson: matrix dimensions differ");
    }
    const int bw = std::max({mass.bandwidth(), advection.bandwidth(), diffusion.bandwidth()});
    BandedMatrix op(mass.size(), bw);
    op.add_scaled(xi, advection).add_scaled(-lambda, diffusion);

    CrankNicolsonMatrices cn{BandedMatrix(mass.size(), bw), BandedMatrix(mass.size(), bw)};
    cn.lhs.add_scaled(1.0, mass).add_scaled(0.5 * dt, op);
    cn.rhs.add_scaled(1.0, mass).add_scaled(-0.5 * dt, op);
    return cn;
}

DirichletReduction apply_dirichlet(const BandedMatrix& lhs, const BandedMatrix& rhs,
                                   const BasisConstants& k)
{
    const int full = lhs.size();
    const int n = full - 3;
    if (n < 3 || rhs.size() != full) {
        throw std::invalid_argument("apply_dirichlet: expected matching (N+3) systems with N >= 3");
    }
    if (!(k.alpha1 > 0.0)) {
        throw std::logic_error("apply_dirichlet: alpha1 must be positive");
    }
    const int bw = lhs.bandwidth();
    DirichletReduction red{BandedMatrix(n + 1, bw), rhs, k.alpha1, {}, {}};

    // Reduced row r is the Galerkin equation for phi_r, i.e. full row r + 1.
    for (int r = 0; r <= n; ++r) {
        for (int c = std::max(0, r - bw); c <= std::min(n, r + bw); ++c) {
            red.lhs.at(r, c) = lhs(r + 1, c + 1);
        }
    }
    const double a1 = k.alpha1;
    // delta_{-1}  = (beta1 - delta_0 - a1 delta_1) / a1
    // delta_{N+1} = (beta2 - delta_N - a1 delta_{N-1}) / a1
    for (int r = 0; r < 3; ++r) {
        const double left = lhs(r + 1, 0);
        red.left_column[r] = left;
        red.lhs.add(r, 0, -left / a1);
        red.lhs.add(r, 1, -left);

        const int rr = n - 2 + r;
        const double right = lhs(rr + 1, n + 2);
        red.right_column[r] = right;
        red.lhs.add(rr, n, -right / a1);
        red.lhs.add(rr, n - 1, -right);
    }
    return red;
}

void reduced_rhs(const DirichletReduction& red, const CoefficientVector& state, double left_next,
                 double right_next, std::span<double> full_work, std::span<double> out)
{
    const int n = state.elements();
    red.rhs_operator.multiply(state.values, full_work);
    for (int r = 0; r <= n; ++r) {
        out[r] = full_work[r + 1];
    }
    const double a1 = red.alpha1;
    for (int r = 0; r < 3; ++r) {
        out[r] -= red.left_column[r] * left_next / a1;
        out[n - 2 + r] -= red.right_column[r] * right_next / a1;
    }
}

void restore_exterior(const DirichletReduction& red, CoefficientVector& state, double left,
                      double right)
{
    const int n = state.elements();
    const double a1 = red.alpha1;
    state[-1] = (left - state[0] - a1 * state[1]) / a1;
    state[n + 1] = (right - state[n] - a1 * state[n - 1]) / a1;
}

CrankNicolsonStepper::CrankNicolsonStepper(DirichletReduction reduction,
                                           ScalarFunction left_boundary,
                                           ScalarFunction right_boundary)
    : reduction_(std::move(reduction)),
      lu_(banded_lu_factor(reduction_.lhs)),
      left_(std::move(left_boundary)),
      right_(std::move(right_boundary))
{
}

void CrankNicolsonStepper::advance_with(CoefficientVector& state, double t_next, double left_next,
                                        double right_next, std::vector<double>& work) const
{
    const int n = state.elements();
    if (n + 1 != reduction_.unknowns()) {
        throw std::invalid_argument("step: state size does not match the stepper");
    }
    const std::size_t full = state.values.size();
    work.resize(2 * full);
    std::span<double> full_work(work.data(), full);
    std::span<double> interior(work.data() + full, static_cast<std::size_t>(n + 1));

    reduced_rhs(reduction_, state, left_next, right_next, full_work, interior);
    lu_.solve_in_place(interior);
    std::copy(interior.begin(), interior.end(), state.values.begin() + 1);
    restore_exterior(reduction_, state, left_next, right_next);
    state.t = t_next;
}

void CrankNicolsonStepper::advance(CoefficientVector& state, double t_next,
                                   std::vector<double>& work) const
{
    advance_with(state, t_next, left_(t_next), right_(t_next), work);
}

CoefficientVector CrankNicolsonStepper::step(const CoefficientVector& state, double t_next) const
{
    CoefficientVector next = state;
    std::vector<double> work;
    advance(next, t_next, work);
    return next;
}

CrankNicolsonStepper make_stepper(const ProblemSpec& problem, const Mesh& mesh,
                                  const BasisConstants& k, int quad_order)
{
    const ElementMatrices elem = reference_element_matrices(k, quad_order);
    const GlobalMatrices global = assemble_global(mesh, elem);
    const CrankNicolsonMatrices cn = build_crank_nicolson(
        global.mass, global.advection, global.diffusion, problem.xi, problem.lambda, problem.dt);
    return CrankNicolsonStepper(apply_dirichlet(cn.lhs, cn.rhs, k), problem.left_boundary,
                                problem.right_boundary);
}

SolutionHistory run(const ProblemSpec& problem, const RunOptions& options)
{
    validate(problem);
    const Mesh mesh = problem.mesh();
    const BasisConstants k = derive_constants(problem.p, mesh.spacing());
    const std::int64_t steps = problem.step_count();

    std::vector<std::int64_t> record{0, steps};
    for (double t : options.output_times) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("run: snapshot times must be finite");
        }
        const double idx = std::round(t / problem.dt);
        record.push_back(std::clamp(static_cast<std::int64_t>(std::max(idx, 0.0)),
                                    std::int64_t{0}, steps));
    }
    std::sort(record.begin(), record.end());
    record.erase(std::unique(record.begin(), record.end()), record.end());

    SolutionHistory history{mesh, k, {}};
    CoefficientVector state = fit_initial(problem, k);
    state.t = 0.0;
    history.snapshots.push_back(state);
    if (steps == 0) {
        return history;
    }

    const CrankNicolsonStepper stepper = make_stepper(problem, mesh, k, options.quad_order);
    std::vector<double> work;
    std::size_t next_record = 1;
    for (std::int64_t s = 1; s <= steps; ++s) {
        stepper.advance(state, static_cast<double>(s) * problem.dt, work);
        if (next_record < record.size() && record[next_record] == s) {
            history.snapshots.push_back(state);
            ++next_record;
        }
    }
    return history;
}

double evaluate(const CoefficientVector& state, const Mesh& mesh, const BasisConstants& k,
                double x, int deriv)
{
    if (!(x >= mesh.a() && x <= mesh.b())) {
        throw std::out_of_range("evaluate: x outside the domain");
    }
    if (deriv < 0 || deriv > 2) {
        throw std::invalid_argument("evaluate: derivative order must be 0, 1 or 2");
    }
    const int m = mesh.element_of(x);
    double sum = 0.0;
    for (int r = 0; r < 4; ++r) {
        const int i = m - 1 + r;
        sum += state[i] * eval_piece(k, element_piece(r), x - mesh.knot(i), deriv);
    }
    return sum;
}

std::vector<double> nodal_values(const CoefficientVector& state, const BasisConstants& k)
{
    const int n = state.elements();
    std::vector<double> u(n + 1);
    for (int i = 0; i <= n; ++i) {
        u[i] = k.alpha1 * state[i - 1] + state[i] + k.alpha1 * state[i + 1];
    }
    return u;
}

}  // namespace ebsg
