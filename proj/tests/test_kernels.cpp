#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "spectrank/kernels.hpp"
#include "spectrank/rng.hpp"

namespace k = spectrank::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    spectrank::rng::Stream stream(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * stream.next_u01() - 1.0;
    return v;
}

struct IsaGuard {
    explicit IsaGuard(k::Isa isa) { k::force_isa(isa); }
    ~IsaGuard() { k::force_isa(k::best_isa()); }
};

}  // namespace

TEST_CASE("scalar kernels match straightforward loops") {
    const std::size_t n = 37;  // odd size exercises vector tails
    const auto a = random_vec(n, 1);
    const auto b = random_vec(n, 2);

    double dot = 0.0, sum = 0.0, l1 = 0.0, linf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        sum += a[i];
        l1 += std::abs(a[i] - b[i]);
        linf = std::max(linf, std::abs(a[i] - b[i]));
    }
    CHECK(k::scalar::dot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-14));
    CHECK(k::scalar::sum(a.data(), n) == doctest::Approx(sum).epsilon(1e-14));
    CHECK(k::scalar::l1_diff(a.data(), b.data(), n) == doctest::Approx(l1).epsilon(1e-14));
    CHECK(k::scalar::max_abs_diff(a.data(), b.data(), n) == doctest::Approx(linf));

    auto y = b;
    k::scalar::axpy(0.75, a.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(b[i] + 0.75 * a[i]));

    auto z = a;
    k::scalar::scale(z.data(), -2.5, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == doctest::Approx(-2.5 * a[i]));
}

TEST_CASE("scalar left_matvec and gemm match reference loops") {
    const std::size_t n = 13;
    const auto a = random_vec(n * n, 3);
    const auto b = random_vec(n * n, 4);
    const auto x = random_vec(n, 5);

    std::vector<double> y_ref(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y_ref[j] += x[i] * a[i * n + j];
    std::vector<double> y(n);
    k::scalar::left_matvec(x.data(), a.data(), y.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(y[j] == doctest::Approx(y_ref[j]).epsilon(1e-13));

    std::vector<double> c_ref(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t j = 0; j < n; ++j) c_ref[i * n + j] += a[i * n + l] * b[l * n + j];
    std::vector<double> c(n * n);
    k::scalar::gemm(a.data(), b.data(), c.data(), n);
    for (std::size_t i = 0; i < n * n; ++i)
        CHECK(c[i] == doctest::Approx(c_ref[i]).epsilon(1e-12));
}

TEST_CASE("active ISA variant is equivalent to the scalar reference") {
    if (k::best_isa() == k::Isa::Scalar) {
        MESSAGE("no SIMD variant available on this host; dispatch covered trivially");
        return;
    }
    for (std::size_t n : {1, 4, 7, 8, 17, 64, 129}) {
        const auto a = random_vec(n * n, 100 + n);
        const auto b = random_vec(n * n, 200 + n);
        const auto x = random_vec(n, 300 + n);

        std::vector<double> y_s(n), y_v(n), c_s(n * n), c_v(n * n);
        double dot_s, dot_v, sum_s, sum_v, l1_s, l1_v, mx_s, mx_v;
        std::vector<double> ax_s = b, ax_v = b, sc_s = a, sc_v = a;
        {
            IsaGuard guard(k::Isa::Scalar);
            dot_s = k::dot(a.data(), b.data(), n);
            sum_s = k::sum(a.data(), n);
            l1_s = k::l1_diff(a.data(), b.data(), n);
            mx_s = k::max_abs_diff(a.data(), b.data(), n);
            k::axpy(0.5, a.data(), ax_s.data(), n);
            k::scale(sc_s.data(), 1.25, n);
            k::left_matvec(x.data(), a.data(), y_s.data(), n);
            k::gemm(a.data(), b.data(), c_s.data(), n);
        }
        {
            IsaGuard guard(k::best_isa());
            dot_v = k::dot(a.data(), b.data(), n);
            sum_v = k::sum(a.data(), n);
            l1_v = k::l1_diff(a.data(), b.data(), n);
            mx_v = k::max_abs_diff(a.data(), b.data(), n);
            k::axpy(0.5, a.data(), ax_v.data(), n);
            k::scale(sc_v.data(), 1.25, n);
            k::left_matvec(x.data(), a.data(), y_v.data(), n);
            k::gemm(a.data(), b.data(), c_v.data(), n);
        }
        CHECK(dot_v == doctest::Approx(dot_s).epsilon(1e-13));
        CHECK(sum_v == doctest::Approx(sum_s).epsilon(1e-13));
        CHECK(l1_v == doctest::Approx(l1_s).epsilon(1e-13));
        CHECK(mx_v == doctest::Approx(mx_s).epsilon(1e-13));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ax_v[i] == doctest::Approx(ax_s[i]).epsilon(1e-13));
            CHECK(sc_v[i] == sc_s[i]);
            CHECK(y_v[i] == doctest::Approx(y_s[i]).epsilon(1e-12));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < n * n; ++i)
            worst = std::max(worst, std::abs(c_v[i] - c_s[i]));
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("force_isa switches the reported active ISA") {
    k::force_isa(k::Isa::Scalar);
    CHECK(k::active_isa() == k::Isa::Scalar);
    k::force_isa(k::best_isa());
    CHECK(k::active_isa() == k::best_isa());
}
