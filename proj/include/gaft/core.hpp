#pragma once

#include <bit>
#include <cstddef>
#include <vector>

#include "gaft/errors.hpp"

namespace gaft {

// Basis blades are bitmask-indexed: bit i set means the factor e_{i+1} is
// present. The empty mask is the scalar blade e_0 = 1.
using BladeIndex = unsigned;

inline int grade_of(BladeIndex b) { return std::popcount(b); }

// structural tolerance (is-a-blade, squares-to-scalar checks on unit-scale data)
inline constexpr double kStructTol = 1e-9;
// equality tolerance for algebraic identities on unit-scale data
inline constexpr double kEqTol = 1e-12;

// Metric signature of G(p,q): e_j^2 = +1 for j <= p and -1 for j > p.
struct Signature {
  int p = 0;
  int q = 0;

  static constexpr int kMaxDim = 8;

  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0 || dim() < 1 || dim() > kMaxDim)
      throw UnsupportedSignature("G(" + std::to_string(p) + "," + std::to_string(q) +
                                 ") outside the supported range 1 <= p+q <= 8");
  }

  int dim() const { return p + q; }
  std::size_t size() const { return std::size_t{1} << dim(); }
  double metric(int j) const { return j < p ? 1.0 : -1.0; }  // j zero-based
  bool operator==(const Signature&) const = default;
};

struct BladeProduct {
  double sign;       // +1 or -1
  BladeIndex index;  // j ^ k
};

// e_j e_k brought to canonical order: (-1)^{transposition count} times the
// metric signs of the contracted factors.
BladeProduct basis_blade_product(BladeIndex j, BladeIndex k, const Signature& sig);

// e_j e_k = sign * e_k e_j, sign = (-1)^{grade(j) grade(k) - |j & k|}
double commutation_sign(BladeIndex j, BladeIndex k);

// square of the basis blade e_b, +1 or -1
double blade_square_sign(BladeIndex b, const Signature& sig);

// Dense multivector over the 2^n bitmask-indexed basis blades.
class Multivector {
 public:
  explicit Multivector(const Signature& sig) : sig_(sig), c_(sig.size(), 0.0) {}

  static Multivector scalar(const Signature& sig, double v);
  static Multivector basis_blade(const Signature& sig, BladeIndex b, double v = 1.0);
  // e_{j+1}, j zero-based
  static Multivector basis_vector(const Signature& sig, int j, double v = 1.0);
  static Multivector from_coords(const Signature& sig, const std::vector<double>& coords);

  const Signature& sig() const { return sig_; }
  std::size_t size() const { return c_.size(); }
  double operator[](BladeIndex b) const { return c_[b]; }
  double& operator[](BladeIndex b) { return c_[b]; }
  const std::vector<double>& coeffs() const { return c_; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);
  Multivector operator-() const;

  double scalar_part() const { return c_[0]; }
  double inf_norm() const;
  bool is_zero(double tol = 0.0) const;
  // largest grade carrying a coefficient above tol, -1 if none
  int top_grade(double tol = kStructTol) const;
  // coordinates of the grade-1 part
  std::vector<double> vector_coords() const;

 private:
  Signature sig_;
  std::vector<double> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
Multivector operator*(const Multivector& a, const Multivector& b);  // geometric product

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);
// grade-lowering part: for each basis pair keeps <e_j e_k>_{grade(k)-grade(j)}
Multivector left_contraction(const Multivector& a, const Multivector& b);
Multivector grade_project(const Multivector& a, int k);

// B / B^2 for blades; NotABlade if B^2 has non-scalar residue, NullBlade if
// |B^2| is below tolerance.
Multivector blade_inverse(const Multivector& b, double tol = kStructTol);

// metric inner product of two grade-1 multivectors, <v w>_0
double vector_dot(const Multivector& v, const Multivector& w);

// Value of a coorthogonal phase sample: sgn(f) |f| e_{index}. A vanishing
// magnitude canonicalizes sign and index so equality of samples stays
// well-defined.
struct ScaledBasisBlade {
  double magnitude = 0.0;
  int sign = 1;
  BladeIndex index = 0;

  ScaledBasisBlade() = default;
  ScaledBasisBlade(double mag, int sgn, BladeIndex idx);
  static ScaledBasisBlade from_value(double signed_value, BladeIndex idx);

  double signed_value() const { return sign * magnitude; }
  ScaledBasisBlade negated() const;
  bool operator==(const ScaledBasisBlade&) const = default;
};

// e^{-f} = cos(|f|) - sgn(f) sin(|f|) e_{index} for an imaginary basis blade;
// |f| = 0 gives 1, NotImaginary if e_index squares to +1.
Multivector exp_imaginary(const ScaledBasisBlade& f, const Signature& sig);

void require_same_signature(const Multivector& a, const Multivector& b);

}  // namespace gaft
