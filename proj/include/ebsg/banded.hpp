#ifndef EBSG_BANDED_HPP
#define EBSG_BANDED_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebsg {

/// Raised when elimination meets a pivot that is zero relative to the matrix scale.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, int index)
        : std::runtime_error(what), index_(index)
    {
    }
    int index() const noexcept { return index_; }

private:
    int index_;
};

/** Square matrix with `bandwidth` sub- and super-diagonals.
 *
 * Stored row by row; row i keeps columns i - bandwidth .. i + bandwidth.
 * Entries outside the band read as zero and cannot be written.
 */
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int bandwidth);

    int size() const noexcept { return n_; }
    int bandwidth() const noexcept { return bw_; }

    bool in_band(int i, int j) const noexcept
    {
        const int d = j - i;
        return i >= 0 && i < n_ && j >= 0 && j < n_ && d >= -bw_ && d <= bw_;
    }

    double operator()(int i, int j) const noexcept
    {
        return in_band(i, j) ? data_[index(i, j)] : 0.0;
    }

    /// Mutable access; throws std::out_of_range outside the band.
    double& at(int i, int j);

    void add(int i, int j, double value) { at(i, j) += value; }

    /// y = M x.
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// this += factor * other (other must have the same size and a band no wider).
    BandedMatrix& add_scaled(double factor, const BandedMatrix& other);

    /// Maximum absolute row sum.
    double norm_inf() const noexcept;

private:
    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * bw_ + 1)
             + static_cast<std::size_t>(j - i + bw_);
    }

    int n_ = 0;
    int bw_ = 0;
    std::vector<double> data_;
};

/** LU factorization of a banded matrix with partial pivoting inside the band.
 *
 * Row interchanges let the upper factor grow to 2 * bandwidth super-diagonals.
 * Immutable once built; solve() may be called concurrently.
 */
class BandedLU {
public:
    int size() const noexcept { return n_; }
    int bandwidth() const noexcept { return lower_; }

    std::vector<double> solve(std::span<const double> rhs) const;
    /// In-place variant: b is overwritten with the solution.
    void solve_in_place(std::span<double> b) const;

private:
    friend BandedLU banded_lu_factor(const BandedMatrix& m);

    int n_ = 0;
    int lower_ = 0;
    int width_ = 0;                // 2 * bandwidth + 1
    std::vector<double> upper_;    // n x width_, row k starts at column k
    std::vector<double> multipliers_;  // n x lower_
    std::vector<int> pivots_;
};

/// Factorizes m. Throws SingularMatrixError if a pivot falls below 1e-14 * ||m||_inf.
BandedLU banded_lu_factor(const BandedMatrix& m);

std::vector<double> banded_lu_solve(const BandedLU& lu, std::span<const double> rhs);

}  // namespace ebsg

#endif
