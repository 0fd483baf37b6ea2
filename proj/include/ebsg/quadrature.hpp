#ifndef EBSG_QUADRATURE_HPP
#define EBSG_QUADRATURE_HPP

#include <vector>

namespace ebsg {

struct QuadratureRule {
    std::vector<double> nodes;    // abscissae on [-1, 1], ascending
    std::vector<double> weights;
};

inline constexpr int kMaxQuadratureOrder = 30;

/// Gauss-Legendre rule with `order` points, exact for polynomials of degree
/// 2 * order - 1. Throws std::out_of_range unless 1 <= order <= 30.
QuadratureRule gauss_legendre(int order);

}  // namespace ebsg

#endif
