#pragma once

#include <cstdint>
#include <vector>

#include "hankel/logbeta.hpp"
#include "hankel/momentspace.hpp"
#include "hankel/rng.hpp"

namespace hankel::jacobi {

using Matrix = momentspace::Matrix;

// Parameters of the real Jacobi beta ensemble on the matrix cube, density
// proportional to det(U)^{gamma - e1} det(I - U)^{delta - e1} with
// e1 = (p + 1) / 2.  Requires gamma, delta > (p - 1) / 2.
struct JBEParams {
  int p = 1;
  double gamma = 1.0;
  double delta = 1.0;
};

void validate(const JBEParams& params);

// Log determinants of all leading subblocks of a draw, together with the
// independent beta factors they decompose into:
//   p_{i,1} ~ beta(gamma - i/2, delta),        i = 0..p-1,
//   p_{i,2} ~ beta(delta - i/2, i/2),          i = 1..p-1,
// with log det U^{[j]} = sum_{i<j} log p_{i,1} and
// log det(I_j - U^{[j]}) = log(1-p_{0,1}) + sum_{i=1}^{j-1} [log(1-p_{i,1}) + log p_{i,2}].
struct SubblockDets {
  std::vector<double> logdet_u;   // j = 1..p
  std::vector<double> logdet_iu;  // j = 1..p
  std::vector<double> p1;         // p_{0,1}..p_{p-1,1}
  std::vector<double> p2;         // p_{1,2}..p_{p-1,2}
};

// Counters for rejected replications and redrawn degenerate beta values.
struct SampleDiagnostics {
  std::uint64_t rejected = 0;
  std::uint64_t redraws = 0;
};

// One beta(a, b) draw.
double sample_beta(RandomStream& rng, const logbeta::BetaParams& p,
                   std::uint64_t* redraws = nullptr);

// One draw of the ensemble via the double-Wishart construction
// U = (A + B)^{-1/2} A (A + B)^{-1/2} with A ~ Wishart(I, 2 gamma) and
// B ~ Wishart(I, 2 delta), each built by Bartlett factorization with real
// degrees of freedom.  Draws with an eigenvalue outside
// (1e-14, 1 - 1e-14) are rejected and counted.
Matrix sample_jbe(RandomStream& rng, const JBEParams& params,
                  SampleDiagnostics* diag = nullptr);

// Subblock determinants of a matrix strictly between 0 and I.
SubblockDets decompose_subblock_dets(const Matrix& u);

// The same joint law from O(p) independent beta draws.
SubblockDets sample_subblock_dets_fast(RandomStream& rng, const JBEParams& params,
                                       SampleDiagnostics* diag = nullptr);

// Lower-triangular Bartlett factor L of a Wishart(I_p, dof) draw, A = L L^t;
// valid for any real dof > p - 1.
Matrix wishart_bartlett_factor(RandomStream& rng, int p, double dof);

}  // namespace hankel::jacobi
