#include "spectrank/kernels.hpp"

namespace spectrank::kernels {

namespace {

bool avx2_available() {
#if defined(SPECTRANK_HAVE_AVX2_SOURCES) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa& active() {
    static Isa isa = avx2_available() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

}  // namespace

Isa best_isa() { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active(); }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
    active() = isa;
}

#if defined(SPECTRANK_HAVE_AVX2_SOURCES)
#define SPECTRANK_DISPATCH(fn, ...) \
    return active() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define SPECTRANK_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double dot(const double* a, const double* b, std::size_t n) { SPECTRANK_DISPATCH(dot, a, b, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    SPECTRANK_DISPATCH(axpy, alpha, x, y, n);
}

void scale(double* x, double alpha, std::size_t n) { SPECTRANK_DISPATCH(scale, x, alpha, n); }

double sum(const double* x, std::size_t n) { SPECTRANK_DISPATCH(sum, x, n); }

double l1_diff(const double* a, const double* b, std::size_t n) {
    SPECTRANK_DISPATCH(l1_diff, a, b, n);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    SPECTRANK_DISPATCH(max_abs_diff, a, b, n);
}

void left_matvec(const double* x, const double* a, double* y, std::size_t n) {
    SPECTRANK_DISPATCH(left_matvec, x, a, y, n);
}

void gemm(const double* a, const double* b, double* c, std::size_t n) {
    SPECTRANK_DISPATCH(gemm, a, b, c, n);
}

}  // namespace spectrank::kernels
