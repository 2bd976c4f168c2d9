#pragma once

#include <utility>
#include <vector>

#include "gaft/core.hpp"
#include "gaft/phase.hpp"

namespace gaft {

// Multi-index j in {0,1}^d over an ordered list of reference blades.
struct SplitIndex {
  unsigned bits = 0;
  int size = 0;

  static SplitIndex zeros(int d) { return {0u, d}; }
  static SplitIndex of(unsigned bits, int d) { return {bits & mask_for(d), d}; }

  bool bit(int i) const { return (bits >> i) & 1u; }
  int weight() const { return std::popcount(bits & mask_for(size)); }
  bool any() const { return (bits & mask_for(size)) != 0; }
  bool operator==(const SplitIndex&) const = default;

  static unsigned mask_for(int d) { return d >= 32 ? ~0u : ((1u << d) - 1u); }
};

// A_{c^0(B)} = (A + B^-1 A B)/2 and A_{c^1(B)} = (A - B^-1 A B)/2.
// A scaled basis blade reference takes the exact coefficient-masking path.
std::pair<Multivector, Multivector> c_split(const Multivector& a, const Multivector& ref,
                                            double tol = kStructTol);
Multivector c_part(const Multivector& a, const Multivector& ref, int parity,
                   double tol = kStructTol);
// mask-level part against a basis blade reference, exact
Multivector c_part_basis(const Multivector& a, BladeIndex ref, int parity);

enum class ChainDir { LeftToRight, RightToLeft };

Multivector c_chain(const Multivector& a, const std::vector<Multivector>& refs, SplitIndex j,
                    ChainDir dir = ChainDir::LeftToRight, double tol = kStructTol);

// (grade(j) grade(k) - |j & k|) mod 2: 0 commute, 1 anticommute
int commutation_parity(BladeIndex j, BladeIndex k);

// all blade indices whose commutation parity against ref nu equals l_nu for
// every nu
std::vector<BladeIndex> c_index_set(const std::vector<BladeIndex>& refs, SplitIndex l,
                                    const Signature& sig);

enum class ShapeKind { Full, Cosine, SineBlade, Zero };

// One of the four shapes an exponential can take under decomposition, bound
// to the phase value it came from.
struct ExpShape {
  ShapeKind kind = ShapeKind::Zero;
  ScaledBasisBlade f;

  Multivector expand(const Signature& sig) const;  // standard-frame expansion
};

// e^{-f}_{c^l(refs)}: full exponential, cosine, signed sine blade or zero,
// decided by the commutation parities of f's blade against the references.
ExpShape exp_decompose(const ScaledBasisBlade& f, const std::vector<BladeIndex>& refs,
                       SplitIndex l, const Signature& sig);

// A kernel factor g(-f) bound to its phase value; `flipped` evaluates the
// same shape at -f.
struct BoundFactor {
  ScaledBasisBlade f;
  ShapeKind kind = ShapeKind::Full;
  bool flipped = false;

  Multivector value(const Signature& sig) const;
};

// prod_l g_l(-f_l) A = sum_j A_{c^j(<-F)} prod_l g_l(-(-1)^{j_l} f_l); returns
// the 2^d terms as (part, flipped factor list) with exactly-zero parts pruned.
std::vector<std::pair<Multivector, std::vector<BoundFactor>>> move_through_product(
    const Multivector& a, const std::vector<BoundFactor>& factors, const Signature& sig,
    double tol = kStructTol);

// Strictly triangular binary matrix whose rows select decompositions and
// whose column-sum parities form the associated multi-index.
struct TriangularSelector {
  int d = 0;
  bool lower = true;
  std::vector<unsigned> rows;  // rows[l] bitmask over columns 0..d-1

  SplitIndex column_parity() const;
};

std::vector<TriangularSelector> enumerate_triangular(int d, SplitIndex parity, bool lower);
std::vector<TriangularSelector> enumerate_all_triangular(int d, bool lower);

// One term of the shifted-product expansion: the x-bound factors multiplied
// first, then the y-bound ones.
struct KernelTerm {
  std::vector<ExpShape> x_factors;
  std::vector<ExpShape> y_factors;
};

// prod_l e^{-f_l(x+y,u)} expanded per the strictly-triangular decomposition;
// orientation `lower` puts the decomposed factors on x, `upper` on y.
// Phases must be flagged separable and linear in x (FlagViolation otherwise).
std::vector<KernelTerm> split_shifted_product(const std::vector<PhaseFunction>& phases,
                                              const Vec& x, const Vec& y, const Vec& u,
                                              bool lower, const Signature& sig);

// F(j): phase nu negated when j_nu is set
std::vector<PhaseFunction> sign_flip(const std::vector<PhaseFunction>& phases, SplitIndex j);

}  // namespace gaft
