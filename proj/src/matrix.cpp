#include "licore/matrix.hpp"

#include <Eigen/Eigenvalues>

namespace licore::ops {

Matrix2 sigma_x() {
    Matrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix2 sigma_y() {
    Matrix2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

Matrix2 sigma_z() {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix2 sigma_plus() {
    Matrix2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

Matrix2 sigma_minus() {
    Matrix2 m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}

Matrix2 identity() { return Matrix2::Identity(); }

bool is_hermitian(const Matrix2& m, double tol) {
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= tol * scale;
}

double min_eigenvalue(const Matrix2& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix2> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool is_density_matrix(const Matrix2& rho, double tol) {
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > tol) return false;
    if (!is_hermitian(rho, tol)) return false;
    return min_eigenvalue(0.5 * (rho + rho.adjoint())) >= -tol;
}

Vector4 vec(const Matrix2& m) {
    Vector4 v;
    v << m(0, 0), m(1, 0), m(0, 1), m(1, 1);
    return v;
}

Matrix2 unvec(const Vector4& v) {
    Matrix2 m;
    m << v(0), v(2), v(1), v(3);
    return m;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

Matrix4 left(const Matrix2& a) { return kron(Matrix2::Identity(), a); }
Matrix4 right(const Matrix2& b) { return kron(b.transpose(), Matrix2::Identity()); }
Matrix4 sandwich(const Matrix2& a, const Matrix2& b) { return kron(b.transpose(), a); }

Matrix4 dissipator(const Matrix2& s) {
    const Matrix2 sds = s.adjoint() * s;
    return sandwich(s, s.adjoint()) - 0.5 * left(sds) - 0.5 * right(sds);
}

Eigen::RowVector4cd trace_functional() {
    Eigen::RowVector4cd t;
    t << 1.0, 0.0, 0.0, 1.0;
    return t;
}

} // namespace licore::ops
