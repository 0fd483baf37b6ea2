#ifndef EBSG_BASIS_HPP
#define EBSG_BASIS_HPP

#include <stdexcept>

namespace ebsg {

/// Largest accepted p*h. sinh/cosh of the product must stay far from overflow.
inline constexpr double kMaxTensionProduct = 50.0;

/// Below this value of p*h the tension-derived quantities are evaluated from
/// truncated Taylor series instead of the closed forms.
inline constexpr double kSeriesThreshold = 1e-2;

class TensionOverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/** Scalars derived from the tension parameter p and the knot spacing h.
 *
 * b2, a1, b1, c1, d1 are the coefficients of the piecewise definition
 *
 *   outer pieces:  b2 * [ (x_{i-2} - x) - sinh(p (x_{i-2} - x)) / p ]
 *   inner pieces:  a1 + b1 |x - x_i| + c1 e^{p |x - x_i|} + d1 e^{-p |x - x_i|}
 *
 * and alpha1..alpha3 are the knot value, first and second derivative
 * coefficients of a basis function at its neighbouring knots.
 *
 * The remaining members hold the cancellation-free forms used by the
 * evaluator: with q = p h, denom_scaled = (q cosh q - sinh q) / q^3, which
 * tends to 1/3 as q -> 0.
 */
struct BasisConstants {
    double p = 0.0;
    double h = 0.0;
    double s = 0.0;
    double c = 0.0;
    double b2 = 0.0;
    double a1 = 0.0;
    double b1 = 0.0;
    double c1 = 0.0;
    double d1 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;

    double ph = 0.0;
    double denom_scaled = 0.0;  // (ph c - s) / (ph)^3
    double sinhc = 0.0;         // s / (ph)
};

/// Uniform partition of [a, b] into n elements.
class Mesh {
public:
    Mesh(double a, double b, int n);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int elements() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }

    /// Knot position x_i. Indices outside 0..N extend the uniform spacing.
    double knot(int i) const noexcept
    {
        if (i == n_) {
            return b_;
        }
        return a_ + i * h_;
    }

    /// Element m with x in [x_m, x_{m+1}); the last element is closed.
    int element_of(double x) const noexcept;

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

BasisConstants derive_constants(double p, double h);

/// The four polynomial-exponential pieces of a basis function, left to right.
enum class Piece { outer_left, inner_left, inner_right, outer_right };

/** Evaluates one piece of phi_i as a function of the offset y = x - x_i.
 *
 * The piece formula is used regardless of whether y lies in its interval,
 * which lets callers take one-sided limits at the junctions.
 */
double eval_piece(const BasisConstants& k, Piece piece, double offset, int deriv);

/// Piece containing offset y = x - x_i, or none when y is outside (-2h, 2h).
bool piece_for_offset(const BasisConstants& k, double offset, Piece& piece);

/** Value of the deriv-th derivative (0, 1 or 2) of phi_i at x.
 *
 * Returns exactly zero outside the open support (x_{i-2}, x_{i+2}).
 */
double eval_basis(const Mesh& mesh, const BasisConstants& k, int i, double x, int deriv);

namespace detail {

// Cancellation-free auxiliary functions, each tending to a finite limit at 0.
double sinh_minus_x_over_x3(double u);  // (sinh u - u) / u^3   -> 1/6
double cosh_minus_1_over_x2(double u);  // (cosh u - 1) / u^2   -> 1/2
double sinh_over_x(double u);           // sinh u / u           -> 1
double tension_denominator(double q);   // (q cosh q - sinh q) / q^3 -> 1/3

}  // namespace detail

}  // namespace ebsg

#endif
