#pragma once

#include <vector>

#include "specstat/linalg.hpp"

namespace specstat {

// Householder reduction of a real symmetric matrix to tridiagonal form
// (eigenvalues only; the matrix is destroyed). d gets the diagonal, e the
// n-1 subdiagonal entries.
void sym_tridiag(RMatrix &a, std::vector<double> &d, std::vector<double> &e);

// Complex Hermitian analogue. The tridiagonal produced has complex
// subdiagonals; their moduli go to e, which leaves the spectrum unchanged
// (a diagonal phase similarity).
void herm_tridiag(CMatrix &a, std::vector<double> &d, std::vector<double> &e);

// Implicit-shift QL on a symmetric tridiagonal (d, e). On return d holds the
// eigenvalues, sorted ascending. Throws numeric_error after the iteration cap.
void tridiag_ql_eigenvalues(std::vector<double> &d, std::vector<double> &e);

std::vector<double> eig_sym(RMatrix a);
std::vector<double> eig_herm(CMatrix a);

// Reduction to upper Hessenberg form followed by shifted QR, eigenvalues only.
std::vector<cplx> eig_general(CMatrix a);

}  // namespace specstat
