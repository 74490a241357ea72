#pragma once

#include <cstddef>
#include <span>

// Reduction kernels used by the model forward passes and the metric
// computations. A scalar reference implementation always exists; an AVX2
// (x86-64) or NEON (aarch64) variant is selected at runtime when the CPU
// supports it. Variants are equivalence-tested against the scalar path.

namespace ozs::kern {

// Accumulated second-order moments of two equal-length vectors,
// enough to compute Pearson correlation in one pass.
struct Comoments {
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
};

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name(Backend b);

// Test hook: pin the backend (throws if unavailable on this CPU).
void force_backend(Backend b);
void reset_backend();

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double max_value(std::span<const double> a);          // a must be non-empty
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
Comoments comoments(std::span<const double> x, std::span<const double> y);

// Scalar reference implementations, always available (used for equivalence
// tests and as the dispatch fallback).
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_value(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
Comoments comoments(const double* x, const double* y, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_value(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
Comoments comoments(const double* x, const double* y, std::size_t n);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported();
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_value(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
Comoments comoments(const double* x, const double* y, std::size_t n);
} // namespace neon
#endif

} // namespace ozs::kern
