#include "dpconvex/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <cmath>
#include <string>

namespace dpconvex {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::DegenerateConstraint: return "DegenerateConstraint";
    case ErrorCode::AllSamplesSingular: return "AllSamplesSingular";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexVector ComplexMatrix::apply(ComplexSpan x) const {
    if (x.size() != n_)
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    ComplexVector y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

LuFactorization::LuFactorization(const ComplexMatrix& a) : lu_(a), perm_(a.size()) {
    const std::size_t n = a.size();
    if (n == 0)
        throw Error(ErrorCode::DimensionMismatch, "empty matrix");
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;

    const double scale = a.max_abs();
    if (!std::isfinite(scale))
        throw Error(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
    const double threshold = kSingularPivotRatio * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > threshold) || best == 0.0)
            throw Error(ErrorCode::SingularMatrix,
                        "pivot " + std::to_string(best) + " below threshold at column " +
                            std::to_string(k));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            sign_ = -sign_;
        }
        const Complex inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu_(i, k) * inv;
            lu_(i, k) = factor;
            if (factor == Complex(0.0))
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                lu_(i, j) -= factor * lu_(k, j);
        }
    }
}

ComplexVector LuFactorization::solve(ComplexSpan rhs) const {
    const std::size_t n = lu_.size();
    if (rhs.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
    ComplexVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            x[i] -= lu_(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j)
            x[ii] -= lu_(ii, j) * x[j];
        x[ii] /= lu_(ii, ii);
    }
    return x;
}

Complex LuFactorization::determinant() const {
    Complex d = static_cast<double>(sign_);
    for (std::size_t i = 0; i < lu_.size(); ++i)
        d *= lu_(i, i);
    return d;
}

ComplexVector solve_linear(const ComplexMatrix& a, ComplexSpan y) {
    if (y.size() != a.size())
        throw Error(ErrorCode::DimensionMismatch, "solve_linear: size mismatch");
    return LuFactorization(a).solve(y);
}

Complex determinant(const ComplexMatrix& a) {
    try {
        return LuFactorization(a).determinant();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix)
            return 0.0;
        throw;
    }
}

ComplexVector sample_complex_gaussian(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(n);
    for (auto& x : v) {
        const double re = normal(rng);
        const double im = normal(rng);
        x = Complex(re, im);
    }
    return v;
}

Complex hermitian_inner(ComplexSpan x, ComplexSpan y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::DimensionMismatch, "hermitian_inner: lengths differ");
    Complex acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        acc += x[j] * std::conj(y[j]);
    return acc;
}

double norm2(ComplexSpan x) {
    double s = 0.0;
    for (const auto& v : x)
        s += std::norm(v);
    return std::sqrt(s);
}

double norm_inf(ComplexSpan x) {
    double m = 0.0;
    for (const auto& v : x)
        m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(ComplexSpan x) {
    return std::all_of(x.begin(), x.end(), [](const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
    return Rng(seq);
}

void parallel_for(std::size_t tasks, unsigned threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, tasks));
    if (workers == 1) {
        for (std::size_t t = 0; t < tasks; ++t)
            body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < tasks; t = next++) {
                try {
                    body(t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = tasks;
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace dpconvex
