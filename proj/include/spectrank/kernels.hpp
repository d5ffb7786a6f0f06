#pragma once

#include <cstddef>

// Dense vector/matrix inner loops used by the power iteration and the
// matrix-exponential series. Each kernel has a scalar reference
// implementation and an AVX2 variant; the active variant is selected at
// runtime from CPU features. The scalar path is the semantic reference and
// the two are equivalence-tested against each other.

namespace spectrank::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
Isa best_isa();
// Testing hook; also lets the CLI force the reference path.
void force_isa(Isa isa);

double dot(const double* a, const double* b, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

// x *= alpha
void scale(double* x, double alpha, std::size_t n);

double sum(const double* x, std::size_t n);

double l1_diff(const double* a, const double* b, std::size_t n);

double max_abs_diff(const double* a, const double* b, std::size_t n);

// y^T = x^T A for row-major square A (left action of a row-stochastic matrix).
void left_matvec(const double* x, const double* a, double* y, std::size_t n);

// C = A B for row-major square matrices.
void gemm(const double* a, const double* b, double* c, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_diff(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void left_matvec(const double* x, const double* a, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t n);
}  // namespace scalar

#ifdef SPECTRANK_HAVE_AVX2_SOURCES
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_diff(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void left_matvec(const double* x, const double* a, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t n);
}  // namespace avx2
#endif

}  // namespace spectrank::kernels
