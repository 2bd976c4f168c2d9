#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaft/core.hpp"

namespace gaft {

using Vec = std::vector<double>;

// Orthonormal frame in which phase values are basis blades. An empty vector
// list stands for the standard basis e_1..e_n.
struct Frame {
  std::vector<Multivector> vectors;

  bool standard() const { return vectors.empty(); }
  // dense blade for a bitmask over the frame vectors, ascending order
  Multivector blade(const Signature& sig, BladeIndex bits) const;
  // +1 or -1, the metric square of that frame blade
  double square_sign(const Signature& sig, BladeIndex bits) const;
};

// Pointwise evaluator (x,u) -> sgn(f)|f| e_{j(x,u)} with the blade index taken
// in the owning family's frame, plus the declared hypothesis flags.
struct PhaseFunction {
  using Eval = std::function<ScaledBasisBlade(const Vec& x, const Vec& u)>;

  std::string name;
  Eval eval;
  bool coorthogonal = false;
  bool separable = false;  // blade index independent of x wherever |f| > 0
  bool linear_in_x = false;

  PhaseFunction negated() const;
};

// Recovers the x-independent blade index i(u) of a separable phase by probing
// deterministic sample points; nullopt when the phase vanishes identically in
// x at this u.
std::optional<BladeIndex> separable_ref_index(const PhaseFunction& f, const Vec& u, int m,
                                              double tol = 1e-12);

}  // namespace gaft
