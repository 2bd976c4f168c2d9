#include "gaft/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace gaft {
namespace {

// singular values below this are treated as zero in rank / nullspace /
// intersection computations
constexpr double kRankTol = 1e-9;
// span-membership classification needs a wider margin than the rank cutoff
constexpr double kMemberTol = 1e-7;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v[i];
  return out;
}

// orthonormal basis of the column span
Eigen::MatrixXd column_span(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > kRankTol) ++rank;
  return svd.matrixU().leftCols(rank);
}

int matrix_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > kRankTol) ++rank;
  return rank;
}

// {v : v ^ X = 0} for a dense nonzero blade X, as orthonormal columns
Eigen::MatrixXd blade_span(const Multivector& x) {
  const int n = x.sig().dim();
  const std::size_t rows = x.size();
  Eigen::MatrixXd w(static_cast<Eigen::Index>(rows), n);
  for (int j = 0; j < n; ++j) {
    const Multivector col = outer_product(Multivector::basis_vector(x.sig(), j), x);
    for (std::size_t r = 0; r < rows; ++r)
      w(static_cast<Eigen::Index>(r), j) = col[static_cast<BladeIndex>(r)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullV);
  Eigen::MatrixXd null_basis(n, n);
  int cols = 0;
  for (int j = 0; j < n; ++j)
    if (j >= svd.singularValues().size() || svd.singularValues()[j] <= kRankTol)
      null_basis.col(cols++) = svd.matrixV().col(j);
  return column_span(null_basis.leftCols(cols));
}

// intersection of subspaces via the nullspace of stacked orthogonal complements
Eigen::MatrixXd intersect_spans(const std::vector<const Eigen::MatrixXd*>& spans, int n) {
  for (const auto* s : spans)
    if (s->cols() == 0) return Eigen::MatrixXd(n, 0);
  if (spans.size() == 1) return *spans.front();
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(spans.size()) * n, n);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < spans.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) =
        eye - (*spans[i]) * spans[i]->transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  Eigen::MatrixXd null_basis(n, n);
  int cols = 0;
  for (int j = 0; j < n; ++j)
    if (j >= svd.singularValues().size() || svd.singularValues()[j] <= kRankTol)
      null_basis.col(cols++) = svd.matrixV().col(j);
  return column_span(null_basis.leftCols(cols));
}

bool in_span(const Eigen::MatrixXd& q, const Eigen::VectorXd& v) {
  if (q.cols() == 0) return false;
  const Eigen::VectorXd residual = v - q * (q.transpose() * v);
  return residual.norm() < kMemberTol * std::max(1.0, v.norm());
}

Eigen::MatrixXd factor_matrix(const FactoredBlade& b) {
  Eigen::MatrixXd m(b.sig.dim(), b.dim());
  for (int j = 0; j < b.dim(); ++j) m.col(j) = to_eigen(b.vectors[j].vector_coords());
  return m;
}

}  // namespace

FactoredBlade::FactoredBlade(const Signature& s, std::vector<Multivector> vecs, double sc)
    : sig(s), vectors(std::move(vecs)), scale(sc) {
  for (const auto& v : vectors) {
    if (!(v.sig() == sig)) throw SignatureMismatch("blade factor in a different algebra");
    if (!(v - grade_project(v, 1)).is_zero(0.0))
      throw NotABlade("blade factors must be grade-1");
  }
}

Multivector FactoredBlade::expand() const {
  Multivector acc = Multivector::scalar(sig, scale);
  for (const auto& v : vectors) acc = outer_product(acc, v);
  return acc;
}

bool is_orthogonal(const Multivector& v, const Multivector& w, double tol) {
  require_same_signature(v, w);
  if (!(v - grade_project(v, 1)).is_zero(0.0) || !(w - grade_project(w, 1)).is_zero(0.0))
    throw NotABlade("is_orthogonal expects grade-1 inputs");
  return std::abs(vector_dot(v, w)) < tol;
}

Coorthogonality is_coorthogonal(const Multivector& a, const Multivector& b, double tol) {
  require_same_signature(a, b);
  const double scale = std::max(1.0, a.inf_norm() * b.inf_norm());
  const Multivector ab = a * b;
  const Multivector ba = b * a;
  if ((ab - ba).inf_norm() < tol * scale) return Coorthogonality::Commute;
  if ((ab + ba).inf_norm() < tol * scale) return Coorthogonality::Anticommute;
  return Coorthogonality::Neither;
}

Coorthogonality is_coorthogonal(const FactoredBlade& a, const FactoredBlade& b, double tol) {
  return is_coorthogonal(a.expand(), b.expand(), tol);
}

int meet_dim(const FactoredBlade& a, const FactoredBlade& b) {
  if (a.expand().is_zero(0.0) || b.expand().is_zero(0.0))
    throw NullBlade("meet/join undefined for the zero blade");
  Eigen::MatrixXd stacked(a.sig.dim(), a.dim() + b.dim());
  stacked << factor_matrix(a), factor_matrix(b);
  return a.dim() + b.dim() - matrix_rank(stacked);
}

int join_dim(const FactoredBlade& a, const FactoredBlade& b) {
  return a.dim() + b.dim() - meet_dim(a, b);
}

Multivector basis_subset_product(const std::vector<Multivector>& basis, BladeIndex bits,
                                 const Signature& sig) {
  Multivector acc = Multivector::scalar(sig, 1.0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (bits & (BladeIndex{1} << i)) acc = acc * basis[i];
  return acc;
}

CoorthogonalBasisResult coorthogonal_basis(const std::vector<FactoredBlade>& blades,
                                           double tol) {
  CoorthogonalBasisResult result;
  if (blades.empty()) return result;
  if (blades.size() > 8) throw Error("blade set capped at 8 elements");
  const Signature sig = blades.front().sig;
  const int n = sig.dim();
  const int d = static_cast<int>(blades.size());

  std::vector<Multivector> original;
  std::vector<Multivector> current;
  for (const auto& b : blades) {
    if (!(b.sig == sig)) throw SignatureMismatch("mixed signatures in blade set");
    Multivector dense = b.expand();
    blade_inverse(dense, tol);  // invertibility gate, throws NullBlade / NotABlade
    original.push_back(dense);
    current.push_back(dense * (1.0 / dense.inf_norm()));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (is_coorthogonal(original[i], original[j], tol) == Coorthogonality::Neither)
        throw NotCoorthogonal(i, j);

  std::vector<Eigen::MatrixXd> spans;
  for (const auto& c : current) spans.push_back(blade_span(c));
  std::vector<BladeIndex> index_bits(d, 0);

  int l = 0;
  while (true) {
    std::vector<int> active;
    for (int k = 0; k < d; ++k)
      if (spans[k].cols() > 0) active.push_back(k);
    if (active.empty()) break;
    if (l >= n) throw Error("basis construction failed to terminate");

    // minimal-dimension element of the intersection lattice, first subset in
    // ascending mask order on ties
    Eigen::MatrixXd best(n, 0);
    int best_dim = n + 1;
    for (unsigned mask = 1; mask < (1u << active.size()); ++mask) {
      std::vector<const Eigen::MatrixXd*> members;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (mask & (1u << i)) members.push_back(&spans[active[i]]);
      const Eigen::MatrixXd inter = intersect_spans(members, n);
      if (inter.cols() > 0 && inter.cols() < best_dim) {
        best = inter;
        best_dim = static_cast<int>(inter.cols());
      }
      if (best_dim == 1) break;
    }
    if (best_dim > n) throw Error("intersection lattice is empty");

    // deterministic candidate: largest projection of a standard basis vector
    int pick = 0;
    double pick_norm = -1.0;
    for (int j = 0; j < n; ++j) {
      const double nj = (best.transpose() * Eigen::VectorXd::Unit(n, j)).norm();
      if (nj > pick_norm + 1e-12) {
        pick_norm = nj;
        pick = j;
      }
    }
    Eigen::VectorXd c = best * (best.transpose() * Eigen::VectorXd::Unit(n, pick));
    c.normalize();
    // sign canonicalization: largest-magnitude coordinate made positive
    Eigen::Index max_at = 0;
    c.cwiseAbs().maxCoeff(&max_at);
    if (c[max_at] < 0.0) c = -c;

    double metric_sq = 0.0;
    for (int j = 0; j < n; ++j) metric_sq += sig.metric(j) * c[j] * c[j];
    if (std::abs(metric_sq) < tol)
      throw NullVector("candidate basis direction has vanishing metric square");
    const Eigen::VectorXd c_metric = c / std::sqrt(std::abs(metric_sq));

    Multivector c_mv(sig);
    for (int j = 0; j < n; ++j) c_mv[BladeIndex{1} << j] = c_metric[j];
    const Multivector c_inv = blade_inverse(c_mv, tol);
    result.basis.push_back(c_mv);

    for (int k : active) {
      if (!in_span(spans[k], c)) continue;
      Multivector contracted = left_contraction(c_inv, current[k]);
      const double norm = contracted.inf_norm();
      if (norm == 0.0) throw Error("contraction annihilated a blade");
      current[k] = contracted * (1.0 / norm);
      spans[k] = blade_span(current[k]);
      index_bits[k] |= BladeIndex{1} << l;
    }
    ++l;
  }

  // recover the signed scales against the original blades
  for (int k = 0; k < d; ++k) {
    const Multivector prod = basis_subset_product(result.basis, index_bits[k], sig);
    const double s = (original[k] * blade_inverse(prod, tol)).scalar_part();
    const double resid = (original[k] - prod * s).inf_norm();
    if (resid > tol * std::max(1.0, original[k].inf_norm()))
      throw NotRepresentable("constructed basis does not reproduce input blade " +
                             std::to_string(k));
    result.blades.push_back({s, index_bits[k]});
  }
  return result;
}

BladeInBasis express_in_basis(const FactoredBlade& a, const std::vector<Multivector>& basis,
                              double tol) {
  const Signature& sig = a.sig;
  const Multivector dense = a.expand();
  if (dense.is_zero(0.0)) throw NullBlade("cannot express the zero blade");
  const Eigen::MatrixXd span = blade_span(dense * (1.0 / dense.inf_norm()));

  BladeIndex bits = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Eigen::VectorXd v = to_eigen(basis[i].vector_coords());
    if (in_span(span, v)) bits |= BladeIndex{1} << i;
  }
  if (grade_of(bits) != a.dim())
    throw NotRepresentable("blade span is not a coordinate subspace of the basis");
  const Multivector prod = basis_subset_product(basis, bits, sig);
  const double s = (dense * blade_inverse(prod, tol)).scalar_part();
  if ((dense - prod * s).inf_norm() > tol * std::max(1.0, dense.inf_norm()))
    throw NotRepresentable("reconstruction residual above tolerance");
  return {s, bits};
}

}  // namespace gaft
