#pragma once

#include <complex>
#include <span>

namespace scarf::special {

using cplx = std::complex<double>;

inline constexpr int kMaxJacobiDegree = 64;

/// Parameters of P_n^{(a,b)}. The argument is supplied at evaluation time.
struct JacobiParams {
    cplx a;
    cplx b;
    int n = 0;
};

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), i.e. Gamma(x+k)/Gamma(x).
cplx pochhammer_ratio(cplx x, int k);

/// P_n^{(a,b)}(z) from the hypergeometric finite sum with every Gamma ratio
/// replaced by a rising factorial. Defined for arbitrary complex a, b,
/// including a = -j with 0 < j <= n where only terms m >= j survive.
/// Throws std::invalid_argument for n < 0 or n > kMaxJacobiDegree.
cplx jacobi_eval(const JacobiParams& p, cplx z);

/// Constant C in P_n^{(-j,s)}(z) = C (1-z)^j P_{n-j}^{(j,s)}(z):
///   C = (-2)^{-j} (n-j)!/n! (s+n-j+1)_j.
/// Throws std::invalid_argument unless 0 < j <= n.
cplx identity_coefficient(int n, int j, cplx s);

/// Max over samples of |L - R| / (|L| + |R| + 1e-300) with
/// L = P_n^{(-j,s)}(z) and R = C (1-z)^j P_{n-j}^{(j,s)}(z).
double verify_jacobi_identity(int n, int j, cplx s, std::span<const cplx> z_samples);

/// z^k for integer k >= 0 by repeated multiplication.
cplx ipow(cplx z, int k);

} // namespace scarf::special
