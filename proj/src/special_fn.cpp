#include "scarf/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scarf::special {

namespace {

// a = -j with j a positive integer, exactly.
bool negative_integer(cplx a, int& j) {
    if (a.imag() != 0.0 || a.real() >= 0.0) return false;
    const double r = a.real();
    if (std::nearbyint(r) != r) return false;
    j = static_cast<int>(-r);
    return true;
}

long double factorial_l(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

cplx pochhammer_ratio(cplx x, int k) {
    if (k < 0) throw std::invalid_argument("pochhammer_ratio: k must be non-negative");
    cplx prod{1.0, 0.0};
    for (int i = 0; i < k; ++i) prod *= x + static_cast<double>(i);
    return prod;
}

cplx ipow(cplx z, int k) {
    cplx result{1.0, 0.0};
    cplx base = z;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

cplx jacobi_eval(const JacobiParams& p, cplx z) {
    const int n = p.n;
    if (n < 0) throw std::invalid_argument("jacobi_eval: degree must be non-negative");
    if (n > kMaxJacobiDegree)
        throw std::invalid_argument("jacobi_eval: degree " + std::to_string(n) + " exceeds " +
                                    std::to_string(kMaxJacobiDegree));
    if (n == 0) return {1.0, 0.0};

    // P = sum_m [1/(m!(n-m)!)] (a+m+1)_{n-m} (a+b+n+1)_m w^m,  w = (z-1)/2.
    // For a = -j, (a+m+1)_{n-m} contains the factor 0 for every m < j.
    int j = 0;
    const int m_start = negative_integer(p.a, j) && j <= n ? j : 0;

    // Accumulated in extended precision: near a zero of P the terms cancel heavily.
    using lcplx = std::complex<long double>;
    const lcplx a(p.a.real(), p.a.imag());
    const lcplx w = 0.5L * (lcplx(z.real(), z.imag()) - 1.0L);
    const lcplx apb = a + lcplx(p.b.real(), p.b.imag()) + static_cast<long double>(n + 1);

    lcplx wm{1.0L, 0.0L}, rising_ab{1.0L, 0.0L};
    for (int m = 0; m < m_start; ++m) {
        wm *= w;
        rising_ab *= apb + static_cast<long double>(m);
    }
    lcplx sum{0.0L, 0.0L};
    for (int m = m_start; m <= n; ++m) {
        lcplx rising_a{1.0L, 0.0L};
        for (int i = m + 1; i <= n; ++i) rising_a *= a + static_cast<long double>(i);
        sum += rising_a * rising_ab * wm / (factorial_l(m) * factorial_l(n - m));
        rising_ab *= apb + static_cast<long double>(m);
        wm *= w;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

cplx identity_coefficient(int n, int j, cplx s) {
    if (j <= 0 || j > n)
        throw std::invalid_argument("identity_coefficient: requires 0 < j <= n (got n=" +
                                    std::to_string(n) + ", j=" + std::to_string(j) + ")");
    double ratio = 1.0; // (n-j)!/n!
    for (int i = n - j + 1; i <= n; ++i) ratio /= i;
    const double sign_pow = std::ldexp(j % 2 == 0 ? 1.0 : -1.0, -j); // (-2)^{-j}
    return sign_pow * ratio * pochhammer_ratio(s + static_cast<double>(n - j + 1), j);
}

double verify_jacobi_identity(int n, int j, cplx s, std::span<const cplx> z_samples) {
    const cplx c = identity_coefficient(n, j, s);
    const JacobiParams lhs_params{cplx(-j, 0.0), s, n};
    const JacobiParams rhs_params{cplx(j, 0.0), s, n - j};
    double worst = 0.0;
    for (const cplx z : z_samples) {
        const cplx lhs = jacobi_eval(lhs_params, z);
        const cplx rhs = c * ipow(1.0 - z, j) * jacobi_eval(rhs_params, z);
        const double res = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        worst = std::max(worst, res);
    }
    return worst;
}

} // namespace scarf::special
