#pragma once

#include <vector>

#include "gaft/core.hpp"

namespace gaft {

// Blade in outer-product form: scale * (v_1 ^ ... ^ v_d). An empty factor
// list is the scalar blade.
struct FactoredBlade {
  Signature sig;
  std::vector<Multivector> vectors;
  double scale = 1.0;

  FactoredBlade(const Signature& s, std::vector<Multivector> vecs, double sc = 1.0);

  int dim() const { return static_cast<int>(vectors.size()); }
  Multivector expand() const;  // dense wedge of the factors times scale
};

enum class Coorthogonality { Commute, Anticommute, Neither };

// |v . w| < tol on grade-1 inputs
bool is_orthogonal(const Multivector& v, const Multivector& w, double tol = kStructTol);

// AB = +-BA test on dense blades; the zero blade reports Commute
Coorthogonality is_coorthogonal(const Multivector& a, const Multivector& b,
                                double tol = kStructTol);
Coorthogonality is_coorthogonal(const FactoredBlade& a, const FactoredBlade& b,
                                double tol = kStructTol);

// dim(A meet B) and dim(A join B) from the rank of the stacked generating vectors
int meet_dim(const FactoredBlade& a, const FactoredBlade& b);
int join_dim(const FactoredBlade& a, const FactoredBlade& b);

struct BladeInBasis {
  double scale = 0.0;  // signed
  BladeIndex index = 0;  // bit i set means basis vector i participates
};

struct CoorthogonalBasisResult {
  std::vector<Multivector> basis;     // orthonormal grade-1, metric squares +-1
  std::vector<BladeInBasis> blades;   // one entry per input blade
};

// Algorithm "construction of the basis": repeatedly pick a minimal-dimension
// element of the span-intersection lattice, extract a vector, contract every
// blade containing it. Inputs must be pairwise coorthogonal (NotCoorthogonal
// names the first offending pair) and invertible; NullVector if a candidate
// direction has a vanishing metric square.
CoorthogonalBasisResult coorthogonal_basis(const std::vector<FactoredBlade>& blades,
                                           double tol = kStructTol);

// Writes the blade as scale * product of basis vectors; NotRepresentable if
// span(A) is not a coordinate subspace of the given basis.
BladeInBasis express_in_basis(const FactoredBlade& a, const std::vector<Multivector>& basis,
                              double tol = kStructTol);

// dense blade from a subset of basis vectors, ascending order
Multivector basis_subset_product(const std::vector<Multivector>& basis, BladeIndex bits,
                                 const Signature& sig);

}  // namespace gaft
