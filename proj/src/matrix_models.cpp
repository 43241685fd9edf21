#include "scarf/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scarf::matrix {

namespace {
constexpr cplx I{0.0, 1.0};
}

CMatrix PseudoHermitianModel::hamiltonian() const {
    CMatrix h(2, 2);
    h << a + b, I * c, I * c, a - b;
    return h;
}

CMatrix PseudoHermitianModel::metric() {
    CMatrix eta = CMatrix::Zero(2, 2);
    eta(0, 0) = 1.0;
    eta(1, 1) = -1.0;
    return eta;
}

ModelSpectrum model_spectrum(const PseudoHermitianModel& m) {
    const cplx root = std::sqrt(cplx(m.b * m.b - m.c * m.c, 0.0));
    ModelSpectrum out;
    out.e1 = m.a + root;
    out.e2 = m.a - root;
    if (m.c == 0.0) {
        // Diagonal: a+b on e_0, a-b on e_1; root = |b|.
        const bool first_upper = m.b >= 0.0;
        out.v1 = first_upper ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
        out.v2 = first_upper ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    } else {
        out.v1 = Eigen::Vector2cd(-I * (m.b + root) / m.c, 1.0);
        out.v2 = Eigen::Vector2cd(-I * (m.b - root) / m.c, 1.0);
    }
    out.eigenvector_determinant = out.v1(0) * out.v2(1) - out.v2(0) * out.v1(1);
    return out;
}

const char* to_string(Verdict v) { return v == Verdict::Diagonalizable ? "diagonalizable" : "defective"; }

DiagonalizabilityReport diagonalizability(const CMatrix& m, double tol, double cluster_tol) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("diagonalizability: matrix must be square");
    if (m.rows() > 8) throw std::invalid_argument("diagonalizability: supported up to 8x8");
    const auto size = m.rows();
    const double norm = std::max(1.0, m.norm());

    Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
    std::vector<cplx> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + size);

    DiagonalizabilityReport rep;
    std::vector<bool> used(eig.size(), false);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        if (used[i]) continue;
        EigenCluster cl;
        cplx sum{};
        for (std::size_t k = i; k < eig.size(); ++k) {
            if (!used[k] && std::abs(eig[k] - eig[i]) <= cluster_tol * norm) {
                used[k] = true;
                sum += eig[k];
                ++cl.algebraic;
            }
        }
        cl.eigenvalue = sum / static_cast<double>(cl.algebraic);

        const CMatrix shifted = m - cl.eigenvalue * CMatrix::Identity(size, size);
        Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int null_dim = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k)
            if (sv(k) < tol * norm) ++null_dim;
        cl.geometric = null_dim;
        cl.eigenvectors = svd.matrixV().rightCols(null_dim);
        rep.eigenvector_rank += null_dim;
        rep.clusters.push_back(std::move(cl));
    }
    rep.verdict = rep.eigenvector_rank < size ? Verdict::Defective : Verdict::Diagonalizable;
    return rep;
}

double pseudo_hermiticity_residual(const CMatrix& m, const CMatrix& eta) {
    if (eta.rows() != eta.cols() || eta.rows() != m.rows() || m.rows() != m.cols())
        throw std::invalid_argument("pseudo_hermiticity_residual: dimension mismatch");
    Eigen::FullPivLU<CMatrix> lu(eta);
    if (!lu.isInvertible()) throw std::invalid_argument("pseudo_hermiticity_residual: metric is singular");
    const CMatrix diff = lu.inverse() * m * eta - m.adjoint();
    return diff.cwiseAbs().maxCoeff();
}

CMatrix lower_jordan2() {
    CMatrix a(2, 2);
    a << 1.0, 0.0, 1.0, 1.0;
    return a;
}

CMatrix jordan3() {
    CMatrix a(3, 3);
    a << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0;
    return a;
}

} // namespace scarf::matrix
