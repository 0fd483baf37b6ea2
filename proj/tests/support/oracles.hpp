#ifndef EBSG_TEST_ORACLES_HPP
#define EBSG_TEST_ORACLES_HPP

#include "ebsg/assembly.hpp"
#include "ebsg/banded.hpp"
#include "ebsg/basis.hpp"

#include <random>
#include <vector>

namespace ebsg::test {

using DenseMatrix = std::vector<std::vector<double>>;

/// Gaussian elimination with full-row partial pivoting on a dense copy.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

DenseMatrix to_dense(const BandedMatrix& m);
std::vector<double> dense_multiply(const DenseMatrix& a, const std::vector<double>& x);

/** Basis coefficients from their defining closed formulas, evaluated in
 * 100-digit binary floating point and rounded to double at the end.
 */
struct RawConstants {
    double b2;
    double a1;
    double b1;
    double c1;
    double d1;
    double alpha1;
    double alpha2;
    double alpha3;
    /// phi_i'' at the centre knot, -p^2 s / (p h c - s).
    double centre_second;
};

RawConstants raw_constants(double p, double h);

/// Inner piece a1 + b1 y + c1 e^{py} + d1 e^{-py}, 0 <= y <= h, in double arithmetic.
double raw_inner_piece(const BasisConstants& k, double y);

/// Classical uniform cubic B-spline scaled to centre value 1, as a function of y = x - x_i.
double cubic_bspline(double y, double h);

/// Element mass matrix of the scaled cubic B-splines by exact polynomial integration.
Matrix4 cubic_element_mass(double h);

/// int phi_i phi_j over the whole overlap of the supports, element by element
/// with a 30-point rule, evaluated through eval_basis.
double direct_mass_entry(const Mesh& mesh, const BasisConstants& k, int i, int j);

/// Random banded matrix with |i - j| <= bw, made diagonally dominant when
/// `dominant` is set.
BandedMatrix random_banded(int n, int bw, std::mt19937_64& rng, bool dominant);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);
double max_abs(const std::vector<double>& a);

}  // namespace ebsg::test

#endif
