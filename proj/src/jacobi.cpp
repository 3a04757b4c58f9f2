#include "hankel/jacobi.hpp"

#include <cmath>
#include <stdexcept>

#include "hankel/errors.hpp"

namespace hankel::jacobi {

void validate(const JBEParams& params) {
  if (params.p < 1) throw std::domain_error("JBEParams: p must be >= 1");
  const double edge = 0.5 * (params.p - 1);
  if (!(params.gamma > edge) || !(params.delta > edge))
    throw std::domain_error("JBEParams: gamma, delta must exceed (p - 1) / 2");
}

double sample_beta(RandomStream& rng, const logbeta::BetaParams& p,
                   std::uint64_t* redraws) {
  if (!(p.a > 0.0) || !(p.b > 0.0))
    throw std::domain_error("sample_beta: shapes must be positive");
  return rng.beta(p.a, p.b, redraws);
}

Matrix wishart_bartlett_factor(RandomStream& rng, int p, double dof) {
  if (!(dof > p - 1))
    throw std::domain_error("wishart_bartlett_factor: dof must exceed p - 1");
  Matrix l = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    // Chi-square with dof - i degrees of freedom.
    l(i, i) = std::sqrt(2.0 * rng.gamma(0.5 * (dof - i)));
    for (int j = 0; j < i; ++j) l(i, j) = rng.normal();
  }
  return l;
}

Matrix sample_jbe(RandomStream& rng, const JBEParams& params,
                  SampleDiagnostics* diag) {
  validate(params);
  const int p = params.p;
  for (;;) {
    const Matrix la = wishart_bartlett_factor(rng, p, 2.0 * params.gamma);
    const Matrix lb = wishart_bartlett_factor(rng, p, 2.0 * params.delta);
    const Matrix a = la * la.transpose();
    const Matrix sum = a + lb * lb.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
    if (es.eigenvalues().minCoeff() <= 0.0) {
      if (diag) ++diag->rejected;
      continue;
    }
    const Matrix inv_sqrt = es.eigenvectors() *
                            es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                            es.eigenvectors().transpose();
    Matrix u = inv_sqrt * a * inv_sqrt;
    u = 0.5 * (u + u.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> eu(u);
    if (eu.eigenvalues().minCoeff() <= 1e-14 ||
        eu.eigenvalues().maxCoeff() >= 1.0 - 1e-14) {
      if (diag) ++diag->rejected;
      continue;
    }
    return u;
  }
}

SubblockDets decompose_subblock_dets(const Matrix& u) {
  const int p = static_cast<int>(u.rows());
  const Matrix iu = Matrix::Identity(p, p) - u;
  SubblockDets out;
  out.logdet_u.resize(p);
  out.logdet_iu.resize(p);
  out.p1.resize(p);
  out.p2.resize(p - 1);
  for (int j = 1; j <= p; ++j) {
    out.logdet_u[j - 1] = momentspace::log_det_spd(u.topLeftCorner(j, j));
    out.logdet_iu[j - 1] = momentspace::log_det_spd(iu.topLeftCorner(j, j));
  }
  out.p1[0] = u(0, 0);
  for (int i = 1; i < p; ++i) {
    out.p1[i] = std::exp(out.logdet_u[i] - out.logdet_u[i - 1]);
    out.p2[i - 1] =
        std::exp(out.logdet_iu[i] - out.logdet_iu[i - 1]) / (1.0 - out.p1[i]);
  }
  return out;
}

SubblockDets sample_subblock_dets_fast(RandomStream& rng, const JBEParams& params,
                                       SampleDiagnostics* diag) {
  validate(params);
  const int p = params.p;
  std::uint64_t* redraws = diag ? &diag->redraws : nullptr;
  SubblockDets out;
  out.p1.resize(p);
  out.p2.resize(p - 1);
  for (int i = 0; i < p; ++i)
    out.p1[i] = rng.beta(params.gamma - 0.5 * i, params.delta, redraws);
  for (int i = 1; i < p; ++i)
    out.p2[i - 1] = rng.beta(params.delta - 0.5 * i, 0.5 * i, redraws);

  out.logdet_u.resize(p);
  out.logdet_iu.resize(p);
  double acc_u = 0.0;
  double acc_iu = 0.0;
  for (int j = 1; j <= p; ++j) {
    acc_u += std::log(out.p1[j - 1]);
    acc_iu += std::log1p(-out.p1[j - 1]);
    if (j > 1) acc_iu += std::log(out.p2[j - 2]);
    out.logdet_u[j - 1] = acc_u;
    out.logdet_iu[j - 1] = acc_iu;
  }
  return out;
}

}  // namespace hankel::jacobi
