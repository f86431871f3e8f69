#pragma once

#include "nematic/errors.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nematic {

/// Thomas algorithm for a tridiagonal system. Row i reads
/// lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored. No pivoting: intended for the
/// diagonally dominant systems assembled in this library.
template<class T>
class TridiagonalSolver
{
  public:
    TridiagonalSolver(std::vector<T> lower, std::vector<T> diag, std::vector<T> upper)
        : lower_{std::move(lower)}, c_prime_(diag.size()), inv_pivot_(diag.size())
    {
        auto const n = diag.size();
        if (n == 0 || lower_.size() != n || upper.size() != n)
            throw LinearSolveFailure("tridiagonal: inconsistent sizes");
        T pivot = diag[0];
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0)
                pivot = diag[i] - lower_[i] * c_prime_[i - 1];
            if (std::abs(pivot) == 0 || !std::isfinite(std::abs(pivot)))
                throw SingularSystem("tridiagonal: zero pivot at row " + std::to_string(i));
            inv_pivot_[i] = T{1} / pivot;
            c_prime_[i] = (i + 1 < n) ? upper[i] * inv_pivot_[i] : T{0};
        }
    }

    std::size_t size() const noexcept { return c_prime_.size(); }

    /// Solves in place: on entry x holds the right-hand side.
    void solve_in_place(std::span<T> x) const
    {
        auto const n = size();
        if (x.size() != n)
            throw LinearSolveFailure("tridiagonal: rhs size mismatch");
        x[0] *= inv_pivot_[0];
        for (std::size_t i = 1; i < n; ++i)
            x[i] = (x[i] - lower_[i] * x[i - 1]) * inv_pivot_[i];
        for (std::size_t i = n - 1; i > 0; --i)
            x[i - 1] -= c_prime_[i - 1] * x[i];
    }

    std::vector<T> solve(std::vector<T> rhs) const
    {
        solve_in_place(rhs);
        return rhs;
    }

  private:
    std::vector<T> lower_;
    std::vector<T> c_prime_;
    std::vector<T> inv_pivot_;
};

template<class T>
std::vector<T> solve_tridiagonal(std::vector<T> lower, std::vector<T> diag, std::vector<T> upper,
                                 std::vector<T> rhs)
{
    return TridiagonalSolver<T>{std::move(lower), std::move(diag), std::move(upper)}.solve(
        std::move(rhs));
}

}  // namespace nematic
