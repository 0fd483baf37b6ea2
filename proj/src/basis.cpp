#include "ebsg/basis.hpp"

#include <cmath>
#include <sstream>

namespace ebsg {

namespace detail {

// Series are truncated after the u^6 term; for |u| < 1e-2 the first omitted
// term is below 1e-22.

double sinh_minus_x_over_x3(double u)
{
    const double u2 = u * u;
    if (std::abs(u) < kSeriesThreshold) {
        return 1.0 / 6.0 + u2 * (1.0 / 120.0 + u2 * (1.0 / 5040.0 + u2 / 362880.0));
    }
    return (std::sinh(u) - u) / (u2 * u);
}

double cosh_minus_1_over_x2(double u)
{
    const double u2 = u * u;
    if (std::abs(u) < kSeriesThreshold) {
        return 0.5 + u2 * (1.0 / 24.0 + u2 * (1.0 / 720.0 + u2 / 40320.0));
    }
    // cosh u - 1 = 2 sinh^2(u/2) has no cancellation.
    const double half = std::sinh(0.5 * u);
    return 2.0 * half * half / u2;
}

double sinh_over_x(double u)
{
    const double u2 = u * u;
    if (std::abs(u) < kSeriesThreshold) {
        return 1.0 + u2 * (1.0 / 6.0 + u2 * (1.0 / 120.0 + u2 / 5040.0));
    }
    return std::sinh(u) / u;
}

double tension_denominator(double q)
{
    const double q2 = q * q;
    if (std::abs(q) < kSeriesThreshold) {
        // sum_k 2k q^(2k-2) / (2k+1)!
        return 1.0 / 3.0 + q2 * (1.0 / 30.0 + q2 * (1.0 / 840.0 + q2 / 45360.0));
    }
    return (q * std::cosh(q) - std::sinh(q)) / (q2 * q);
}

}  // namespace detail

Mesh::Mesh(double a, double b, int n) : a_(a), b_(b), n_(n), h_(0.0)
{
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
        throw std::invalid_argument("mesh: need finite endpoints with a < b");
    }
    if (n < 1) {
        throw std::invalid_argument("mesh: element count must be positive");
    }
    h_ = (b - a) / n;
}

int Mesh::element_of(double x) const noexcept
{
    const double t = std::floor((x - a_) / h_);
    if (!(t > 0.0)) {
        return 0;
    }
    if (t >= n_ - 1) {
        return n_ - 1;
    }
    return static_cast<int>(t);
}

BasisConstants derive_constants(double p, double h)
{
    if (!(p > 0.0) || !(h > 0.0) || !std::isfinite(p) || !std::isfinite(h)) {
        throw std::domain_error("basis: tension p and spacing h must be positive and finite");
    }
    const double q = p * h;
    if (q > kMaxTensionProduct) {
        std::ostringstream msg;
        msg << "basis: p*h = " << q << " exceeds the limit " << kMaxTensionProduct;
        throw TensionOverflowError(msg.str());
    }

    BasisConstants k;
    k.p = p;
    k.h = h;
    k.ph = q;
    k.s = std::sinh(q);
    k.c = std::cosh(q);
    k.denom_scaled = detail::tension_denominator(q);
    k.sinhc = detail::sinh_over_x(q);

    // ph c - s, kept as a product so it never comes from a subtraction.
    const double q3 = q * q * q;
    const double denom = q3 * k.denom_scaled;

    k.b2 = p / (2.0 * denom);
    k.a1 = q * k.c / denom;
    k.b1 = -p * (2.0 * k.c + 1.0) / (2.0 * denom);
    k.c1 = (1.0 + 2.0 * std::exp(-q)) / (4.0 * denom);
    k.d1 = -(1.0 + 2.0 * std::exp(q)) / (4.0 * denom);

    k.alpha1 = detail::sinh_minus_x_over_x3(q) / (2.0 * k.denom_scaled);
    k.alpha2 = -detail::cosh_minus_1_over_x2(q) / (2.0 * h * k.denom_scaled);
    k.alpha3 = k.sinhc / (2.0 * h * h * k.denom_scaled);
    return k;
}

namespace {

// Outer piece as a function of z, the distance from the end of the support.
double outer(const BasisConstants& k, double z, int deriv)
{
    const double t = z / k.h;
    const double u = k.p * z;
    const double scale = 2.0 * k.denom_scaled;
    switch (deriv) {
    case 0:
        return t * t * t * detail::sinh_minus_x_over_x3(u) / scale;
    case 1:
        return t * t * detail::cosh_minus_1_over_x2(u) / (scale * k.h);
    default:
        return t * detail::sinh_over_x(u) / (scale * k.h * k.h);
    }
}

// Inner piece as a function of y = |x - x_i|. For moderate tension the piece
// is written in the basis {1, cosh(py) - 1, sinh(py) - py}, which stays
// accurate as p -> 0. For large tension that basis cancels badly, and the
// decaying exponentials e^{-py}, e^{-p(h-y)} are used instead.
double inner(const BasisConstants& k, double y, int deriv)
{
    const double q = k.ph;
    const double g = k.denom_scaled;
    if (q <= 1.0) {
        const double t = y / k.h;
        const double u = k.p * y;
        const double half_odd = k.c + 0.5;  // (2c + 1) / 2
        switch (deriv) {
        case 0:
            return 1.0 - k.sinhc * t * t * detail::cosh_minus_1_over_x2(u) / g
                 + half_odd * t * t * t * detail::sinh_minus_x_over_x3(u) / g;
        case 1:
            return (-k.sinhc * t * detail::sinh_over_x(u)
                    + half_odd * t * t * detail::cosh_minus_1_over_x2(u))
                 / (g * k.h);
        default:
            return (-k.sinhc * std::cosh(u) + half_odd * t * detail::sinh_over_x(u))
                 / (g * k.h * k.h);
        }
    }
    const double denom = q * q * q * g;
    const double near = (std::exp(q) + 2.0) / (4.0 * denom);  // multiplies e^{-p(h-y)}
    const double far = k.d1;                                   // multiplies e^{-py}
    const double e_near = std::exp(-k.p * (k.h - y));
    const double e_far = std::exp(-k.p * y);
    switch (deriv) {
    case 0:
        return k.a1 + k.b1 * y + near * e_near + far * e_far;
    case 1:
        return k.b1 + k.p * (near * e_near - far * e_far);
    default:
        return k.p * k.p * (near * e_near + far * e_far);
    }
}

}  // namespace

double eval_piece(const BasisConstants& k, Piece piece, double offset, int deriv)
{
    const double two_h = 2.0 * k.h;
    switch (piece) {
    case Piece::outer_left: {
        return outer(k, offset + two_h, deriv);
    }
    case Piece::inner_left: {
        const double v = inner(k, -offset, deriv);
        return deriv == 1 ? -v : v;
    }
    case Piece::inner_right:
        return inner(k, offset, deriv);
    case Piece::outer_right: {
        const double v = outer(k, two_h - offset, deriv);
        return deriv == 1 ? -v : v;
    }
    }
    return 0.0;
}

bool piece_for_offset(const BasisConstants& k, double offset, Piece& piece)
{
    const double h = k.h;
    if (!(offset > -2.0 * h) || !(offset < 2.0 * h)) {
        return false;
    }
    if (offset < -h) {
        piece = Piece::outer_left;
    } else if (offset < 0.0) {
        piece = Piece::inner_left;
    } else if (offset < h) {
        piece = Piece::inner_right;
    } else {
        piece = Piece::outer_right;
    }
    return true;
}

double eval_basis(const Mesh& mesh, const BasisConstants& k, int i, double x, int deriv)
{
    if (deriv < 0 || deriv > 2) {
        throw std::invalid_argument("eval_basis: derivative order must be 0, 1 or 2");
    }
    const double offset = x - mesh.knot(i);
    Piece piece{};
    if (!piece_for_offset(k, offset, piece)) {
        return 0.0;
    }
    return eval_piece(k, piece, offset, deriv);
}

}  // namespace ebsg
