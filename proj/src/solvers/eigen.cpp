#include "stcomp/solvers/eigen.hpp"

#include "stcomp/errors.hpp"

namespace stcomp {
namespace {

void require_hermitian(const CMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale) throw Error(ErrorCode::NotHermitian, "asymmetry above 1e-10");
}

}  // namespace

EigPair top_eigpair(const CMat& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  const Eigen::Index last = m.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

double rank_one_ratio(const CMat& m) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) return 0.0;
  return top_eigpair(m).value / tr;
}

}  // namespace stcomp
