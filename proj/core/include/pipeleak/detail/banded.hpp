#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pipeleak/errors.hpp"

namespace pipeleak::detail {

// Square banded matrix with `kl` sub- and `ku` super-diagonals, row-major by
// bands.  LU factorization is done in place without pivoting, which keeps the
// bandwidth intact; the systems assembled by the finite-difference solver are
// diagonally dominant, so pivoting is not needed.
class BandedMatrix {
  public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
        : n_(n), kl_(kl), ku_(ku), data_(n * (kl + ku + 1), 0.0) {}

    std::size_t size() const { return n_; }

    bool in_band(std::size_t i, std::size_t j) const {
        return (j + kl_ >= i) && (j <= i + ku_);
    }

    double& operator()(std::size_t i, std::size_t j) {
        return data_[i * (kl_ + ku_ + 1) + (j + kl_ - i)];
    }

    double at(std::size_t i, std::size_t j) const {
        if (!in_band(i, j)) return 0.0;
        return data_[i * (kl_ + ku_ + 1) + (j + kl_ - i)];
    }

    std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t lo = i >= kl_ ? i - kl_ : 0;
            const std::size_t hi = std::min(n_ - 1, i + ku_);
            double acc = 0.0;
            for (std::size_t j = lo; j <= hi; ++j) acc += at(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    void lu_factor() {
        for (std::size_t k = 0; k < n_; ++k) {
            const double pivot = (*this)(k, k);
            if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot))
                throw NumericalBlowup(
                    "BandedMatrix::lu_factor: zero or non-finite pivot at "
                    "row " +
                    std::to_string(k));
            const std::size_t i_hi = std::min(n_ - 1, k + kl_);
            const std::size_t j_hi = std::min(n_ - 1, k + ku_);
            for (std::size_t i = k + 1; i <= i_hi; ++i) {
                const double l = (*this)(i, k) / pivot;
                (*this)(i, k) = l;
                for (std::size_t j = k + 1; j <= j_hi; ++j)
                    (*this)(i, j) -= l * (*this)(k, j);
            }
        }
        factored_ = true;
    }

    // Solves L*U*x = rhs in place using the factors from lu_factor().
    void lu_solve(std::vector<double>& rhs) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t lo = i >= kl_ ? i - kl_ : 0;
            for (std::size_t j = lo; j < i; ++j) rhs[i] -= at(i, j) * rhs[j];
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            const std::size_t hi = std::min(n_ - 1, ii + ku_);
            for (std::size_t j = ii + 1; j <= hi; ++j)
                rhs[ii] -= at(ii, j) * rhs[j];
            rhs[ii] /= at(ii, ii);
        }
    }

    bool factored() const { return factored_; }

  private:
    std::size_t n_, kl_, ku_;
    std::vector<double> data_;
    bool factored_ = false;
};

}  // namespace pipeleak::detail
