// matrix.hpp - dense 2x2 operators and 4x4 superoperators on a qubit

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace licore {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

namespace ops {

// Basis order (|upper>, |lower>) with sigma_z |upper> = +|upper>.
Matrix2 sigma_x();
Matrix2 sigma_y();
Matrix2 sigma_z();
Matrix2 sigma_plus();  // |upper><lower|
Matrix2 sigma_minus(); // |lower><upper|
Matrix2 identity();

bool is_hermitian(const Matrix2& m, double tol = 1e-12);

// Checks trace 1, Hermiticity and positivity of a density matrix.
bool is_density_matrix(const Matrix2& rho, double tol = 1e-12);
double min_eigenvalue(const Matrix2& hermitian);

// Column-stacking vectorisation: vec(A X B) = (B^T kron A) vec(X).
Vector4 vec(const Matrix2& m);
Matrix2 unvec(const Vector4& v);
Matrix4 kron(const Matrix2& a, const Matrix2& b);

// Superoperators for X -> A X, X -> X B and X -> A X B.
Matrix4 left(const Matrix2& a);
Matrix4 right(const Matrix2& b);
Matrix4 sandwich(const Matrix2& a, const Matrix2& b);

// D[S] rho = S rho S^dag - 1/2 {S^dag S, rho}.
Matrix4 dissipator(const Matrix2& s);

// Row vector implementing rho -> Tr(rho); zero-product with a superoperator
// means trace preservation.
Eigen::RowVector4cd trace_functional();

} // namespace ops
} // namespace licore
