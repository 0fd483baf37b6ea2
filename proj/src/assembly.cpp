#include "ebsg/assembly.hpp"

#include "ebsg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebsg {

Piece element_piece(int r) noexcept
{
    switch (r) {
    case 0:
        return Piece::outer_right;
    case 1:
        return Piece::inner_right;
    case 2:
        return Piece::inner_left;
    default:
        return Piece::outer_left;
    }
}

int quadrature_panels(double ph) noexcept
{
    return std::max(1, static_cast<int>(std::ceil(ph / kPanelTension)));
}

ElementMatrices reference_element_matrices(const BasisConstants& k, int quad_order)
{
    if (quad_order < kMinQuadratureOrder) {
        throw std::invalid_argument("reference_element_matrices: quadrature order must be at least 8");
    }
    const QuadratureRule rule = gauss_legendre(quad_order);
    const int panels = quadrature_panels(k.ph);
    const double h = k.h;
    const double width = h / panels;

    ElementMatrices e;
    std::array<std::array<double, 4>, 3> values{};
    for (int panel = 0; panel < panels; ++panel) {
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = (panel + 0.5 * (rule.nodes[q] + 1.0)) * width;  // offset from x_m
            const double w = 0.5 * width * rule.weights[q];
            for (int r = 0; r < 4; ++r) {
                const double offset = x - (r - 1) * h;  // x - x_{m-1+r}
                for (int d = 0; d < 3; ++d) {
                    values[d][r] = eval_piece(k, element_piece(r), offset, d);
                }
            }
            for (int j = 0; j < 4; ++j) {
                const double wj = w * values[0][j];
                for (int i = 0; i < 4; ++i) {
                    e.mass[j][i] += wj * values[0][i];
                    e.advection[j][i] += wj * values[1][i];
                    e.diffusion[j][i] += wj * values[2][i];
                }
            }
        }
    }
    return e;
}

GlobalMatrices assemble_global(const Mesh& mesh, const ElementMatrices& elem)
{
    const int n_elem = mesh.elements();
    if (n_elem < 3) {
        throw std::invalid_argument("assemble_global: need at least 3 elements");
    }
    const int dim = n_elem + 3;
    GlobalMatrices g{BandedMatrix(dim, kSplineBandwidth), BandedMatrix(dim, kSplineBandwidth),
                     BandedMatrix(dim, kSplineBandwidth)};
    for (int m = 0; m < n_elem; ++m) {
        // phi_{m-1} sits in row m.
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < 4; ++i) {
                g.mass.add(m + j, m + i, elem.mass[j][i]);
                g.advection.add(m + j, m + i, elem.advection[j][i]);
                g.diffusion.add(m + j, m + i, elem.diffusion[j][i]);
            }
        }
    }
    return g;
}

}  // namespace ebsg
