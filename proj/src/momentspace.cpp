#include "hankel/momentspace.hpp"

#include <cmath>
#include <stdexcept>

#include "hankel/errors.hpp"

namespace hankel::momentspace {
namespace {

constexpr double kEigClamp = 1e-12;

void require_order(const MomentSequence& seq, int k, const char* who) {
  if (k < 0 || k > seq.order())
    throw std::out_of_range(std::string(who) + ": index exceeds available moments");
}

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Stacks the k column blocks of moments picked by `pick` into a (k*p) x p
// matrix.
template <class Pick>
Matrix stack_blocks(int count, int p, Pick&& pick) {
  Matrix h(count * p, p);
  for (int i = 0; i < count; ++i) h.middleRows(i * p, p) = pick(i);
  return h;
}

}  // namespace

Matrix MomentSequence::moment(int k) const {
  if (k == 0) return Matrix::Identity(p, p);
  return moments.at(k - 1);
}

Matrix sym_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a));
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] < -kEigClamp)
      throw boundary_error("sym_sqrt: matrix is not positive semidefinite");
    if (lam[i] < 0.0) lam[i] = 0.0;
  }
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

Matrix sym_inv_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a));
  const Eigen::VectorXd& lam = es.eigenvalues();
  if (lam.minCoeff() <= kEigClamp)
    throw boundary_error("sym_inv_sqrt: matrix is not positive definite");
  return es.eigenvectors() * lam.cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

double log_det_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(symmetrized(a));
  if (llt.info() != Eigen::Success)
    throw boundary_error("log_det_spd: matrix is not positive definite");
  return 2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();
}

bool is_spd(const Matrix& a) {
  return Eigen::LLT<Matrix>(symmetrized(a)).info() == Eigen::Success;
}

Matrix build_lower_hankel(const MomentSequence& seq, int k) {
  require_order(seq, k, "build_lower_hankel");
  const int p = seq.p;
  const int blocks = k / 2 + 1;
  const int offset = (k % 2 == 0) ? 0 : 1;
  Matrix h(blocks * p, blocks * p);
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j)
      h.block(i * p, j * p, p, p) = seq.moment(i + j + offset);
  return h;
}

Matrix build_upper_hankel(const MomentSequence& seq, int k) {
  if (k < 1)
    throw std::out_of_range("build_upper_hankel: index must be at least 1");
  require_order(seq, k, "build_upper_hankel");
  const int p = seq.p;
  const int blocks = (k % 2 == 0) ? k / 2 : k / 2 + 1;
  const int offset = (k % 2 == 0) ? 1 : 0;
  Matrix h(blocks * p, blocks * p);
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j)
      h.block(i * p, j * p, p, p) =
          seq.moment(i + j + offset) - seq.moment(i + j + offset + 1);
  return h;
}

bool is_interior(const MomentSequence& seq) {
  for (int k = 1; k <= seq.order(); ++k) {
    if (!is_spd(build_lower_hankel(seq, k))) return false;
    if (!is_spd(build_upper_hankel(seq, k))) return false;
  }
  return true;
}

namespace {

// The Hankel systems behind the extremal moments lose digits fast with the
// order, and downstream maps divide by the (possibly tiny) extremal range.
// The solves therefore run in extended precision.
using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

LongMatrix widen(const Matrix& a) { return a.cast<long double>(); }

Matrix narrow(const LongMatrix& a) { return a.cast<double>(); }

}  // namespace

std::pair<Matrix, Matrix> extremal_moments(const MomentSequence& seq, int order) {
  const int p = seq.p;
  if (order < 1) throw std::out_of_range("extremal_moments: order must be >= 1");
  if (order > seq.order() + 1)
    throw std::out_of_range("extremal_moments: sequence too short");
  if (order == 1)
    return {Matrix::Zero(p, p), Matrix::Identity(p, p)};

  // M_n^- = h_{n-1}^t H_{n-2}^{-1} h_{n-1} on the lower side.
  const int m = order - 1;  // index of the h vectors
  Matrix h_lo;
  if (m % 2 == 0) {  // h_{2k} = (M_{k+1}, ..., M_{2k})
    const int k = m / 2;
    h_lo = stack_blocks(k, p, [&](int i) -> Matrix { return seq.moment(k + 1 + i); });
  } else {  // h_{2k-1} = (M_k, ..., M_{2k-1})
    const int k = (m + 1) / 2;
    h_lo = stack_blocks(k, p, [&](int i) -> Matrix { return seq.moment(k + i); });
  }
  const LongMatrix lower_hankel =
      widen(symmetrized(build_lower_hankel(seq, order - 2)));
  Eigen::LLT<LongMatrix> llt_lo(lower_hankel);
  if (llt_lo.info() != Eigen::Success)
    throw boundary_error("extremal_moments: singular lower Hankel matrix");
  const LongMatrix hlo_w = widen(h_lo);
  const Matrix lo = symmetrized(narrow(hlo_w.transpose() * llt_lo.solve(hlo_w)));

  if (order == 2) return {lo, seq.moment(1)};

  Matrix h_hi;
  if (m % 2 == 0) {  // (M_k - M_{k+1}, ..., M_{2k-1} - M_{2k})
    const int k = m / 2;
    h_hi = stack_blocks(k, p, [&](int i) -> Matrix {
      return seq.moment(k + i) - seq.moment(k + i + 1);
    });
  } else {  // (M_k - M_{k+1}, ..., M_{2k-2} - M_{2k-1})
    const int k = (m + 1) / 2;
    h_hi = stack_blocks(k - 1, p, [&](int i) -> Matrix {
      return seq.moment(k + i) - seq.moment(k + i + 1);
    });
  }
  const LongMatrix upper_hankel =
      widen(symmetrized(build_upper_hankel(seq, order - 2)));
  Eigen::LLT<LongMatrix> llt_hi(upper_hankel);
  if (llt_hi.info() != Eigen::Success)
    throw boundary_error("extremal_moments: singular upper Hankel matrix");
  const LongMatrix hhi_w = widen(h_hi);
  const Matrix hi = symmetrized(
      seq.moment(order - 1) - narrow(hhi_w.transpose() * llt_hi.solve(hhi_w)));
  return {lo, hi};
}

namespace {

void require_inside_cube(const Matrix& u, double margin, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(u);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < margin || hi > 1.0 - margin)
    throw boundary_error(std::string(who) +
                         ": canonical moment outside the open matrix cube");
}

}  // namespace

namespace {

// Extended-precision square-root factors of the extremal range hi - lo; the
// range can be many orders of magnitude below the moments it scales.
std::pair<LongMatrix, LongMatrix> range_sqrt_factors(const Matrix& range) {
  Eigen::SelfAdjointEigenSolver<LongMatrix> es(widen(symmetrized(range)));
  Eigen::Matrix<long double, Eigen::Dynamic, 1> lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] <= kEigClamp)
      throw boundary_error("canonical map: extremal range is not positive definite");
  }
  const LongMatrix v = es.eigenvectors();
  return {v * lam.cwiseSqrt().asDiagonal() * v.transpose(),
          v * lam.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

}  // namespace

CanonicalSequence moments_to_canonical(const MomentSequence& seq, double margin) {
  CanonicalSequence out;
  out.p = seq.p;
  out.canon.reserve(seq.order());
  MomentSequence prefix{seq.p, {}};
  for (int i = 1; i <= seq.order(); ++i) {
    const auto [lo, hi] = extremal_moments(prefix, i);
    const auto [root, inv_root] = range_sqrt_factors(hi - lo);
    const LongMatrix centered = widen(seq.moment(i)) - widen(lo);
    Matrix u = narrow(inv_root * centered * inv_root);
    u = symmetrized(u);
    require_inside_cube(u, margin, "moments_to_canonical");
    out.canon.push_back(std::move(u));
    prefix.moments.push_back(seq.moment(i));
  }
  return out;
}

MomentSequence canonical_to_moments(const CanonicalSequence& c, double margin) {
  MomentSequence out{c.p, {}};
  out.moments.reserve(c.order());
  for (int i = 1; i <= c.order(); ++i) {
    const Matrix& u = c.canon[i - 1];
    require_inside_cube(u, margin, "canonical_to_moments");
    const auto [lo, hi] = extremal_moments(out, i);
    const auto [root, inv_root] = range_sqrt_factors(hi - lo);
    const Matrix m = narrow(widen(lo) + root * widen(u) * root);
    out.moments.push_back(symmetrized(m));
  }
  return out;
}

double hankel_log_det_product(const CanonicalSequence& c, int n) {
  if (n < 1) throw std::out_of_range("hankel_log_det_product: n must be >= 1");
  if (c.order() < 2 * n)
    throw std::out_of_range("hankel_log_det_product: needs 2n canonical moments");
  const Matrix id = Matrix::Identity(c.p, c.p);
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const Matrix& odd = c.canon[2 * i - 2];
    const Matrix& even = c.canon[2 * i - 1];
    const double w = n - i + 1;
    total += w * (log_det_spd(odd) + log_det_spd(id - odd) + log_det_spd(even));
    if (i < n) total += (n - i) * log_det_spd(id - even);
  }
  return total;
}

CanonicalSequence random_interior_canonical(RandomStream& rng, int p, int count) {
  CanonicalSequence out;
  out.p = p;
  out.canon.reserve(count);
  for (int c = 0; c < count; ++c) {
    // Haar orthogonal factor from the QR of a Gaussian matrix.
    Matrix g(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < p; ++j)
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    Eigen::VectorXd d(p);
    for (int i = 0; i < p; ++i) d[i] = 0.05 + 0.9 * rng.uniform01();
    out.canon.push_back(symmetrized(q * d.asDiagonal() * q.transpose()));
  }
  return out;
}

}  // namespace hankel::momentspace
