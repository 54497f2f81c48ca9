#include "quop/linalg.hpp"

#include <cmath>

#include "quop/errors.hpp"

namespace quop {

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd gram = u.adjoint() * u;
    gram -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return gram.cwiseAbs().maxCoeff();
}

EighResult eigh(const Eigen::MatrixXcd& hermitian) {
    if (hermitian.rows() != hermitian.cols() || hermitian.rows() < 1) {
        throw DataError("eigh requires a square matrix");
    }
    if (hermiticity_defect(hermitian) > 1e-10) {
        throw DataError("eigh input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd expm_neg_i(const Eigen::MatrixXcd& hermitian) {
    EighResult eig = eigh(hermitian);
    const Eigen::Index n = hermitian.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        phases(j) = std::polar(1.0, -eig.eigenvalues(j));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

NodeUnitary node_unitary(const LocalHermitian& generator) {
    EighResult eig = eigh(generator.matrix);
    const Eigen::Index n = generator.matrix.rows();
    Eigen::VectorXcd phases(n);
    std::complex<double> det{1.0, 0.0};
    for (Eigen::Index j = 0; j < n; ++j) {
        phases(j) = std::polar(1.0, -eig.eigenvalues(j));
        det *= phases(j);
    }
    NodeUnitary u;
    u.anchor = generator.anchor;
    u.matrix = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    u.det = det;
    return u;
}

}  // namespace quop
