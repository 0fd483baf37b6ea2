#ifndef EBSG_TEST_PROPERTIES_HPP
#define EBSG_TEST_PROPERTIES_HPP

#include <string>
#include <vector>

namespace ebsg::test {

/// Outcome of one property check: the worst observed deviation against its bound.
struct Check {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Tension products p*h the basis properties are exercised at.
inline const std::vector<double> kTensionProducts{1e-4, 0.1, 1.0, 5.0};

// basis
Check check_knot_table(double ph);
Check check_continuity(double ph);
Check check_symmetry(double ph);
Check check_cubic_limit();
Check check_derivative_consistency(double ph);

// assembly
Check check_mass_symmetric_positive(double ph);
Check check_advection_by_parts(double ph);
Check check_diffusion_by_parts(double ph);
Check check_quadrature_refinement(double ph);

// linalg
Check check_banded_dense_oracle(int systems);
Check check_banded_round_trip(int systems);

// solver
Check check_constant_preservation();
Check check_identity_stepping();
Check check_homogeneous_boundaries();

/// Every check above over every tension product, in a fixed order.
std::vector<Check> all_property_checks();

}  // namespace ebsg::test

#endif
