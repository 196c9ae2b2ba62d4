#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "infoflux/tolerances.hpp"

// Dense complex linear algebra core. Conventions used across the library:
//   - entry (i, j) means row i, column j;
//   - qubit 0 is the most significant bit of a basis label, i.e. the bit of
//     qubit q inside a global index g of an n-qubit register is
//     (g >> (n - 1 - q)) & 1.

namespace infoflux {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Register size guard; overridable through INFOFLUX_MAX_QUBITS (read once).
int max_register_qubits();
Eigen::Index max_register_dim();

bool is_hermitian(const Operator& a, double tolerance = tol::hermiticity);
bool is_unitary(const Operator& a, double tolerance = tol::unitarity);

// Kronecker product; the first factor supplies the high-order bits:
// result((i*b.rows()+k), (j*b.cols()+l)) = a(i,j) * b(k,l).
// Throws std::length_error when the result would exceed the register cap.
Operator kron(const Operator& a, const Operator& b);

// Trace over the complement of `keep` (qubit indices, any order, no
// duplicates) of a 2^qubit_count dimensional operator. Kept qubits appear in
// the result ordered by their original index.
Operator partial_trace(const Operator& rho, int qubit_count, const std::vector<int>& keep);

struct HermEig {
  Eigen::VectorXd eigenvalues;  // ascending
  Operator eigenvectors;        // columns
};

// Eigendecomposition of a Hermitian operator; throws std::invalid_argument on
// a non-Hermitian input.
HermEig herm_eig(const Operator& h);

// exp(-i t h) for Hermitian h, built as V diag(exp(-i t lambda)) V^dag so the
// result is unitary by construction.
Operator matexp_unitary(const Operator& h, double t);

// Sum of absolute eigenvalues of a Hermitian operator. dim-2 inputs take an
// analytic path; larger ones go through an eigenvalues-only solve.
double trace_norm_hermitian(const Operator& a);

// Small fixed matrices used throughout.
Operator identity_op(Eigen::Index dim);
const Operator& pauli(int which);  // 0 = I, 1 = X, 2 = Y, 3 = Z

}  // namespace infoflux
