#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "scarf/matrix_models.hpp"

using namespace scarf::matrix;

namespace {

double eigen_residual(const CMatrix& h, cplx e, const Eigen::Vector2cd& v) {
    return (h * v - e * v).norm() / v.norm();
}

} // namespace

TEST_CASE("model hamiltonian and metric") {
    const PseudoHermitianModel m{0.5, 1.0, 0.3};
    const CMatrix h = m.hamiltonian();
    CHECK(h(0, 0) == cplx(1.5, 0.0));
    CHECK(h(1, 1) == cplx(-0.5, 0.0));
    CHECK(h(0, 1) == cplx(0.0, 0.3));
    CHECK(h(1, 0) == cplx(0.0, 0.3));
    const CMatrix eta = PseudoHermitianModel::metric();
    CHECK(eta(0, 0) == cplx(1.0, 0.0));
    CHECK(eta(1, 1) == cplx(-1.0, 0.0));
}

TEST_CASE("model spectrum") {
    const auto real = model_spectrum({0.0, 1.0, 0.5});
    CHECK(std::abs(real.e1 - std::sqrt(0.75)) < 1e-15);
    CHECK(std::abs(real.e2 + std::sqrt(0.75)) < 1e-15);

    const auto broken = model_spectrum({2.0, 0.0, 1.0});
    CHECK(std::abs(broken.e1 - cplx(2.0, 1.0)) < 1e-15);
    CHECK(std::abs(broken.e2 - cplx(2.0, -1.0)) < 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const PseudoHermitianModel m{u(rng), u(rng), u(rng)};
        const auto s = model_spectrum(m);
        const CMatrix h = m.hamiltonian();
        CHECK(std::abs(s.e1 + s.e2 - h.trace()) < 1e-12);
        CHECK(std::abs(s.e1 * s.e2 - h.determinant()) < 1e-11);
        CHECK(eigen_residual(h, s.e1, s.v1) < 1e-12 * (1.0 + h.norm()));
        CHECK(eigen_residual(h, s.e2, s.v2) < 1e-12 * (1.0 + h.norm()));
    }
}

TEST_CASE("diagonal case") {
    const auto s = model_spectrum({0.0, 1.0, 0.0});
    const CMatrix h = PseudoHermitianModel{0.0, 1.0, 0.0}.hamiltonian();
    CHECK(eigen_residual(h, s.e1, s.v1) == 0.0);
    CHECK(eigen_residual(h, s.e2, s.v2) == 0.0);
    CHECK(std::abs(s.eigenvector_determinant) == 1.0);
}

TEST_CASE("exceptional point of the model") {
    const auto ep = model_spectrum({0.0, 1.0, 1.0});
    CHECK(ep.e1 == ep.e2);
    CHECK(ep.eigenvector_determinant == cplx(0.0, 0.0));
    CHECK(ep.v1 == ep.v2);
    // (-i, 1) up to scale
    CHECK(std::abs(ep.v1(0) / ep.v1(1) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(eigen_residual(PseudoHermitianModel{0.0, 1.0, 1.0}.hamiltonian(), ep.e1, ep.v1) == 0.0);

    double prev = 1e300;
    for (double c : {0.5, 0.9, 0.99, 0.999}) {
        const double d = std::abs(model_spectrum({0.0, 1.0, c}).eigenvector_determinant);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("diagonalizability verdicts") {
    CHECK(diagonalizability(lower_jordan2()).verdict == Verdict::Defective);
    const auto j3 = diagonalizability(jordan3());
    CHECK(j3.verdict == Verdict::Defective);
    REQUIRE(j3.clusters.size() == 1);
    CHECK(j3.clusters[0].algebraic == 3);
    CHECK(j3.clusters[0].geometric == 1);
    CHECK(j3.eigenvector_rank == 1);

    // Repeated eigenvalue with a full eigenspace is not defective.
    const auto id = diagonalizability(CMatrix::Identity(3, 3));
    CHECK(id.verdict == Verdict::Diagonalizable);
    CHECK(id.eigenvector_rank == 3);

    CMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    CHECK(diagonalizability(m).verdict == Verdict::Diagonalizable);
    CHECK(diagonalizability(PseudoHermitianModel{0.0, 1.0, 1.0}.hamiltonian()).verdict == Verdict::Defective);

    CHECK_THROWS_AS(diagonalizability(CMatrix::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(diagonalizability(CMatrix::Identity(9, 9)), std::invalid_argument);
}

TEST_CASE("pseudo-hermiticity") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const PseudoHermitianModel m{u(rng), u(rng), u(rng)};
        CHECK(pseudo_hermiticity_residual(m.hamiltonian(), m.metric()) <= 1e-15 * m.hamiltonian().norm());
    }
    // A generic complex matrix is not eta-pseudo-Hermitian.
    CMatrix g(2, 2);
    g << cplx(1, 1), 2.0, 0.5, cplx(0, 3);
    CHECK(pseudo_hermiticity_residual(g, PseudoHermitianModel::metric()) > 0.1);
    CHECK_THROWS_AS(pseudo_hermiticity_residual(g, CMatrix::Zero(2, 2)), std::invalid_argument);
}
