#ifndef EBSG_TRIDIAGONAL_HPP
#define EBSG_TRIDIAGONAL_HPP

#include <span>
#include <vector>

namespace ebsg {

/// sub[0] and super[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;

    int size() const noexcept { return static_cast<int>(diag.size()); }
};

/** Thomas algorithm (no pivoting).
 *
 * Throws SingularMatrixError carrying the row index when an elimination
 * pivot is below 1e-14 times the largest coefficient magnitude.
 */
std::vector<double> thomas_solve(const TridiagonalSystem& system, std::span<const double> rhs);

}  // namespace ebsg

#endif
