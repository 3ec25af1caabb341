// SPDX-License-Identifier: Apache-2.0
//
// wimemchap -- parametric prediction of wideband MIMO wireless channels
// Copyright (C) 2026 The wimemchap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WIMEMCHAP_NUMKERNEL_HPP
#define WIMEMCHAP_NUMKERNEL_HPP

#include <armadillo>

namespace wimemchap
{

// Matrix convention used throughout: arma::cx_mat is column-major and
// arma::vectorise stacks columns, so vec(a * b.st()) == kron(b, a).
// Every stacking, selection and Khatri-Rao factor order in this library is
// derived from that identity.

struct EigenDecomposition
{
    arma::cx_vec values;  // Hermitian input: real values, sorted descending
    arma::cx_mat vectors; // column eigenvectors, values(i) pairs with vectors.col(i)
    bool is_hermitian_input = false;
    double vec_condition = 1.0; // condition number of the eigenvector matrix
    bool near_defective = false;

    arma::vec real_values() const { return arma::real(values); }
};

// Kronecker product, rows(A)*rows(B) by cols(A)*cols(B).
arma::cx_mat kron(const arma::cx_mat &a, const arma::cx_mat &b);

// Column-wise Kronecker product of two matrices with equal column counts.
arma::cx_mat khatri_rao(const arma::cx_mat &a, const arma::cx_mat &b);

// Eigendecomposition of a Hermitian matrix. Eigenvalues come back real and
// sorted descending with orthonormal eigenvectors. Inputs further than 1e-10
// (relative) from Hermitian are rejected.
EigenDecomposition hermitian_eig(const arma::cx_mat &c);

// Eigendecomposition of a general square matrix. A condition number of the
// eigenvector matrix above the ceiling flags the result as near-defective
// instead of failing, so downstream pairing can degrade gracefully.
EigenDecomposition general_eig(const arma::cx_mat &m, double cond_ceiling = 1e10);

// Minimizer of |W x - y|^2 + sigma_reg |x|^2 via the normal equations
// (W^H W + sigma_reg I) x = W^H y.
arma::cx_vec ls_solve_regularized(const arma::cx_mat &w, const arma::cx_vec &y, double sigma_reg);

} // namespace wimemchap

#endif
