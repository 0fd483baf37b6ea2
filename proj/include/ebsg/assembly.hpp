#ifndef EBSG_ASSEMBLY_HPP
#define EBSG_ASSEMBLY_HPP

#include "ebsg/banded.hpp"
#include "ebsg/basis.hpp"

#include <array>

namespace ebsg {

using Matrix4 = std::array<std::array<double, 4>, 4>;

/** Element integrals over [x_m, x_{m+1}].
 *
 * Local index r = 0..3 stands for phi_{m-1+r}. Entry [j][i] pairs the weight
 * function phi_j with the trial function phi_i:
 *   mass[j][i]      = int phi_j phi_i
 *   advection[j][i] = int phi_j phi_i'
 *   diffusion[j][i] = int phi_j phi_i''
 */
struct ElementMatrices {
    Matrix4 mass{};
    Matrix4 advection{};
    Matrix4 diffusion{};
};

inline constexpr int kDefaultQuadratureOrder = 10;
inline constexpr int kMinQuadratureOrder = 8;

/** Strongly exponential pieces are integrated panel-wise: the element is split
 * into ceil(p h / kPanelTension) equal panels, each with the requested rule,
 * so that every panel sees at most e^{kPanelTension} variation per factor.
 */
inline constexpr double kPanelTension = 2.0;
int quadrature_panels(double ph) noexcept;

/// Piece of phi_{m-1+r} that covers element m.
Piece element_piece(int r) noexcept;

ElementMatrices reference_element_matrices(const BasisConstants& k,
                                           int quad_order = kDefaultQuadratureOrder);

/// Global (N+3) x (N+3) matrices; row/column r corresponds to basis index r - 1.
struct GlobalMatrices {
    BandedMatrix mass;
    BandedMatrix advection;
    BandedMatrix diffusion;
};

inline constexpr int kSplineBandwidth = 3;

GlobalMatrices assemble_global(const Mesh& mesh, const ElementMatrices& elem);

}  // namespace ebsg

#endif
