#include "ebsg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ebsg {

namespace {
constexpr double kPivotTolerance = 1e-14;
}

BandedMatrix::BandedMatrix(int n, int bandwidth) : n_(n), bw_(bandwidth)
{
    if (n < 1 || bandwidth < 0) {
        throw std::invalid_argument("banded matrix: need n >= 1 and bandwidth >= 0");
    }
    bw_ = std::min(bandwidth, n - 1);
    data_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(2 * bw_ + 1), 0.0);
}

double& BandedMatrix::at(int i, int j)
{
    if (!in_band(i, j)) {
        std::ostringstream msg;
        msg << "banded matrix: entry (" << i << ", " << j << ") is outside the band";
        throw std::out_of_range(msg.str());
    }
    return data_[index(i, j)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    if (x.size() != static_cast<std::size_t>(n_) || y.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("banded matrix: vector length does not match dimension");
    }
    const int width = 2 * bw_ + 1;
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - bw_);
        const int j1 = std::min(n_ - 1, i + bw_);
        const double* row = data_.data() + static_cast<std::size_t>(i) * width + (j0 - i + bw_);
        double sum = 0.0;
        for (int j = j0; j <= j1; ++j) {
            sum += *row++ * x[j];
        }
        y[i] = sum;
    }
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const
{
    std::vector<double> y(n_);
    multiply(x, y);
    return y;
}

BandedMatrix& BandedMatrix::add_scaled(double factor, const BandedMatrix& other)
{
    if (other.n_ != n_ || other.bw_ > bw_) {
        throw std::invalid_argument("banded matrix: shape mismatch in add_scaled");
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = std::max(0, i - other.bw_); j <= std::min(n_ - 1, i + other.bw_); ++j) {
            data_[index(i, j)] += factor * other.data_[other.index(i, j)];
        }
    }
    return *this;
}

double BandedMatrix::norm_inf() const noexcept
{
    double norm = 0.0;
    const int width = 2 * bw_ + 1;
    for (int i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (int k = 0; k < width; ++k) {
            sum += std::abs(data_[static_cast<std::size_t>(i) * width + k]);
        }
        norm = std::max(norm, sum);
    }
    return norm;
}

BandedLU banded_lu_factor(const BandedMatrix& m)
{
    const int n = m.size();
    const int bw = m.bandwidth();
    const int width = 2 * bw + 1;  // pivot + bw original + bw fill-in super-diagonals

    BandedLU lu;
    lu.n_ = n;
    lu.lower_ = bw;
    lu.width_ = width;
    lu.upper_.assign(static_cast<std::size_t>(n) * width, 0.0);
    lu.multipliers_.assign(static_cast<std::size_t>(n) * std::max(bw, 1), 0.0);
    lu.pivots_.assign(n, 0);

    // Working rows are left-justified: slot 0 of row i holds the first column
    // not yet eliminated from that row.
    auto row = [&](int i) { return lu.upper_.data() + static_cast<std::size_t>(i) * width; };
    for (int i = 0; i < n; ++i) {
        const int j0 = std::max(0, i - bw);
        const int j1 = std::min(n - 1, i + bw);
        double* r = row(i);
        for (int j = j0; j <= j1; ++j) {
            r[j - j0] = m(i, j);
        }
    }

    const double tolerance = kPivotTolerance * m.norm_inf();
    for (int k = 0; k < n; ++k) {
        const int last = std::min(n - 1, k + bw);
        int pivot = k;
        double best = std::abs(row(k)[0]);
        for (int i = k + 1; i <= last; ++i) {
            if (std::abs(row(i)[0]) > best) {
                best = std::abs(row(i)[0]);
                pivot = i;
            }
        }
        if (!(best > tolerance)) {
            std::ostringstream msg;
            msg << "banded LU: matrix is numerically singular at column " << k;
            throw SingularMatrixError(msg.str(), k);
        }
        lu.pivots_[k] = pivot;
        if (pivot != k) {
            std::swap_ranges(row(k), row(k) + width, row(pivot));
        }
        const double* pr = row(k);
        for (int i = k + 1; i <= last; ++i) {
            double* r = row(i);
            const double factor = r[0] / pr[0];
            lu.multipliers_[static_cast<std::size_t>(k) * bw + (i - k - 1)] = factor;
            for (int j = 1; j < width; ++j) {
                r[j - 1] = r[j] - factor * pr[j];
            }
            r[width - 1] = 0.0;
        }
    }
    return lu;
}

void BandedLU::solve_in_place(std::span<double> b) const
{
    if (b.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("banded LU: right-hand side length does not match dimension");
    }
    for (int k = 0; k < n_; ++k) {
        const int pivot = pivots_[k];
        if (pivot != k) {
            std::swap(b[k], b[pivot]);
        }
        const int last = std::min(n_ - 1, k + lower_);
        const double* mult = multipliers_.data() + static_cast<std::size_t>(k) * lower_;
        for (int i = k + 1; i <= last; ++i) {
            b[i] -= mult[i - k - 1] * b[k];
        }
    }
    for (int i = n_ - 1; i >= 0; --i) {
        const double* r = upper_.data() + static_cast<std::size_t>(i) * width_;
        const int span_end = std::min(width_, n_ - i);
        double sum = b[i];
        for (int j = 1; j < span_end; ++j) {
            sum -= r[j] * b[i + j];
        }
        b[i] = sum / r[0];
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const
{
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

std::vector<double> banded_lu_solve(const BandedLU& lu, std::span<const double> rhs)
{
    return lu.solve(rhs);
}

}  // namespace ebsg
