#include "ebsg/tridiagonal.hpp"

#include "ebsg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ebsg {

std::vector<double> thomas_solve(const TridiagonalSystem& system, std::span<const double> rhs)
{
    const int n = system.size();
    if (n < 1) {
        throw std::invalid_argument("thomas_solve: empty system");
    }
    if (system.sub.size() != static_cast<std::size_t>(n) || system.super.size() != static_cast<std::size_t>(n)
        || rhs.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("thomas_solve: diagonal and right-hand side lengths differ");
    }

    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        scale = std::max({scale, std::abs(system.sub[i]), std::abs(system.diag[i]),
                          std::abs(system.super[i])});
    }
    const double tolerance = 1e-14 * scale;

    std::vector<double> upper(n, 0.0);
    std::vector<double> x(n, 0.0);
    double pivot = system.diag[0];
    for (int i = 0;; ++i) {
        if (!(std::abs(pivot) > tolerance)) {
            std::ostringstream msg;
            msg << "thomas_solve: zero pivot at row " << i;
            throw SingularMatrixError(msg.str(), i);
        }
        const double prev = i == 0 ? 0.0 : x[i - 1];
        x[i] = (rhs[i] - (i == 0 ? 0.0 : system.sub[i] * prev)) / pivot;
        if (i == n - 1) {
            break;
        }
        upper[i] = system.super[i] / pivot;
        pivot = system.diag[i + 1] - system.sub[i + 1] * upper[i];
    }
    for (int i = n - 2; i >= 0; --i) {
        x[i] -= upper[i] * x[i + 1];
    }
    return x;
}

}  // namespace ebsg
