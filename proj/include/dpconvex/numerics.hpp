#pragma once

#include "dpconvex/error.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace dpconvex {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using ComplexSpan = std::span<const Complex>;

/// Seeded generator; one per task, never shared between threads.
using Rng = std::mt19937_64;

/// Dense row-major square complex matrix. Dimensions here are small (n <= 16).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    ComplexVector apply(ComplexSpan x) const;
    double max_abs() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// LU factorization with partial pivoting, P A = L U stored in place.
class LuFactorization {
public:
    /// Throws SingularMatrix when a pivot falls below 1e-14 times max|A_ij|.
    explicit LuFactorization(const ComplexMatrix& a);

    ComplexVector solve(ComplexSpan rhs) const;
    Complex determinant() const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

inline constexpr double kSingularPivotRatio = 1e-14;

/// Solves A x = y by LU with partial pivoting.
ComplexVector solve_linear(const ComplexMatrix& a, ComplexSpan y);

Complex determinant(const ComplexMatrix& a);

/// Entries with independent standard-normal real and imaginary parts.
ComplexVector sample_complex_gaussian(std::size_t n, Rng& rng);

/// <x, y> = sum_j x_j conj(y_j).
Complex hermitian_inner(ComplexSpan x, ComplexSpan y);

double norm2(ComplexSpan x);
double norm_inf(ComplexSpan x);
bool all_finite(ComplexSpan x);

/// Generator for stream `stream` of a run seeded with `seed`. Streams are
/// statistically independent and do not depend on how tasks are scheduled.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

/// Runs body(task) for every task in [0, tasks) on up to `threads` workers.
/// The first exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t tasks, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace dpconvex
