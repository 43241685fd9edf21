#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace scarf::matrix {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// H = [[a+b, ic], [ic, a-b]], pseudo-Hermitian under eta = diag(1, -1).
struct PseudoHermitianModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    CMatrix hamiltonian() const;
    static CMatrix metric();
};

struct ModelSpectrum {
    cplx e1;
    cplx e2;
    Eigen::Vector2cd v1;
    Eigen::Vector2cd v2;
    cplx eigenvector_determinant; // det [v1 v2]; zero at the exceptional point |c| = |b|
};

/// E_{1,2} = a +- sqrt(b^2 - c^2) (principal root), v_{1,2} = (-i(b +- sqrt(b^2-c^2))/c, 1),
/// equivalently (1, i(b -+ sqrt(b^2-c^2))/c).
/// c = 0 is the diagonal case with unit eigenvectors.
ModelSpectrum model_spectrum(const PseudoHermitianModel& m);

enum class Verdict { Diagonalizable, Defective };

const char* to_string(Verdict v);

struct EigenCluster {
    cplx eigenvalue;
    int algebraic = 0;
    int geometric = 0;
    CMatrix eigenvectors; // orthonormal basis of ker(M - lambda I), one column per vector
};

struct DiagonalizabilityReport {
    Verdict verdict = Verdict::Diagonalizable;
    std::vector<EigenCluster> clusters;
    int eigenvector_rank = 0; // total geometric multiplicity
};

/// Eigenvalues are grouped within cluster_tol * max(1, ||M||); the geometric
/// multiplicity of each group is the number of singular values of M - lambda I
/// below tol * max(1, ||M||). Defective when the total falls short of the size.
/// Throws std::invalid_argument for non-square input or size > 8.
DiagonalizabilityReport diagonalizability(const CMatrix& m, double tol = 1e-10, double cluster_tol = 1e-6);

/// max |(eta^{-1} M eta - M^dagger)_{ij}|. Throws std::invalid_argument for singular eta.
double pseudo_hermiticity_residual(const CMatrix& m, const CMatrix& eta);

/// The two non-diagonalizable fixtures: [[1,0],[1,1]] and the 3x3 Jordan block.
CMatrix lower_jordan2();
CMatrix jordan3();

} // namespace scarf::matrix
