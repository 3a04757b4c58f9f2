#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hankel/rng.hpp"

namespace hankel::momentspace {

using Matrix = Eigen::MatrixXd;

// Matrix moments M_1..M_n of a p x p matrix measure on [0, 1] with total
// mass I_p; M_0 = I is implicit.
struct MomentSequence {
  int p = 1;
  std::vector<Matrix> moments;

  int order() const { return static_cast<int>(moments.size()); }
  // moment(0) is the identity.
  Matrix moment(int k) const;
};

// Canonical moments U_1..U_n, each strictly between 0 and I in the Loewner
// order.
struct CanonicalSequence {
  int p = 1;
  std::vector<Matrix> canon;

  int order() const { return static_cast<int>(canon.size()); }
};

// Symmetric-matrix helpers.  Eigenvalues in [-1e-12, 0) are clamped to zero;
// anything more negative raises boundary_error.
Matrix sym_sqrt(const Matrix& a);
Matrix sym_inv_sqrt(const Matrix& a);
// log det of a symmetric positive definite matrix via Cholesky; failure of
// the factorization is the positive-definiteness test.
double log_det_spd(const Matrix& a);
bool is_spd(const Matrix& a);

// Block Hankel matrix of moments of index k: block (i, j) is M_{i+j} for
// even k and M_{i+j+1} for odd k.
Matrix build_lower_hankel(const MomentSequence& seq, int k);

// Block Hankel matrix of consecutive moment differences: block (i, j) is
// M_{i+j+1} - M_{i+j+2} for even k and M_{i+j} - M_{i+j+1} for odd k.
Matrix build_upper_hankel(const MomentSequence& seq, int k);

// Every leading pair of Hankel matrices strictly positive definite.
bool is_interior(const MomentSequence& seq);

// Smallest/largest admissible moment of the given order via Schur
// complements; (0, I) at order 1 and (M_1^2, M_1) at order 2.
std::pair<Matrix, Matrix> extremal_moments(const MomentSequence& seq, int order);

// The coordinate change between moments and canonical moments,
//   U_i = (M_i^+ - M_i^-)^{-1/2} (M_i - M_i^-) (M_i^+ - M_i^-)^{-1/2},
// and its inverse.  `margin` is the enforced distance of each U_i from the
// boundary of the cube (the map divides by M_i^+ - M_i^-, which degenerates
// there).
CanonicalSequence moments_to_canonical(const MomentSequence& seq,
                                       double margin = 1e-10);
MomentSequence canonical_to_moments(const CanonicalSequence& c,
                                    double margin = 1e-10);

// log det of the order-2n lower block Hankel matrix as a weighted sum of
// canonical-moment log determinants:
//   sum_i (n-i+1) [ld U_{2i-1} + ld(I-U_{2i-1}) + ld U_{2i}] + (n-i) ld(I-U_{2i}).
double hankel_log_det_product(const CanonicalSequence& c, int n);

// Random canonical sequence safely inside the cube: V diag(d) V^t with d
// uniform on [0.05, 0.95] and V Haar orthogonal.
CanonicalSequence random_interior_canonical(RandomStream& rng, int p, int count);

}  // namespace hankel::momentspace
