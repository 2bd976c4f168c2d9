#include "gaft/core.hpp"

#include <algorithm>
#include <cmath>

namespace gaft {

BladeProduct basis_blade_product(BladeIndex j, BladeIndex k, const Signature& sig) {
  // Count the transpositions needed to interleave the factor lists: for each
  // factor of j, the factors of k strictly below it must move past it.
  int swaps = 0;
  for (BladeIndex a = j >> 1; a != 0; a >>= 1) swaps += std::popcount(a & k);
  double sign = (swaps & 1) ? -1.0 : 1.0;
  for (BladeIndex common = j & k; common != 0; common &= common - 1)
    sign *= sig.metric(std::countr_zero(common));
  return {sign, j ^ k};
}

double commutation_sign(BladeIndex j, BladeIndex k) {
  int exponent = grade_of(j) * grade_of(k) - std::popcount(j & k);
  return (exponent & 1) ? -1.0 : 1.0;
}

double blade_square_sign(BladeIndex b, const Signature& sig) {
  return basis_blade_product(b, b, sig).sign;
}

Multivector Multivector::scalar(const Signature& sig, double v) {
  Multivector m(sig);
  m[0] = v;
  return m;
}

Multivector Multivector::basis_blade(const Signature& sig, BladeIndex b, double v) {
  if (b >= sig.size()) throw Error("blade index out of range for signature");
  Multivector m(sig);
  m[b] = v;
  return m;
}

Multivector Multivector::basis_vector(const Signature& sig, int j, double v) {
  if (j < 0 || j >= sig.dim()) throw Error("basis vector index out of range");
  return basis_blade(sig, BladeIndex{1} << j, v);
}

Multivector Multivector::from_coords(const Signature& sig, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != sig.dim())
    throw SchemaError("vector coordinate count does not match the signature dimension");
  Multivector m(sig);
  for (int j = 0; j < sig.dim(); ++j) m[BladeIndex{1} << j] = coords[j];
  return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_signature(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_signature(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector r(*this);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = -r.c_[i];
  return r;
}

double Multivector::inf_norm() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool Multivector::is_zero(double tol) const {
  for (double v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

int Multivector::top_grade(double tol) const {
  int top = -1;
  for (std::size_t b = 0; b < c_.size(); ++b)
    if (std::abs(c_[b]) > tol) top = std::max(top, grade_of(static_cast<BladeIndex>(b)));
  return top;
}

std::vector<double> Multivector::vector_coords() const {
  std::vector<double> out(sig_.dim());
  for (int j = 0; j < sig_.dim(); ++j) out[j] = c_[BladeIndex{1} << j];
  return out;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  Multivector r(a.sig());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a[static_cast<BladeIndex>(i)];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double bj = b[static_cast<BladeIndex>(j)];
      if (bj == 0.0) continue;
      const auto [sign, idx] =
          basis_blade_product(static_cast<BladeIndex>(i), static_cast<BladeIndex>(j), a.sig());
      r[idx] += sign * ai * bj;
    }
  }
  return r;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  Multivector r(a.sig());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a[static_cast<BladeIndex>(i)];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i & j) continue;  // shared factors vanish under the wedge
      const double bj = b[static_cast<BladeIndex>(j)];
      if (bj == 0.0) continue;
      const auto [sign, idx] =
          basis_blade_product(static_cast<BladeIndex>(i), static_cast<BladeIndex>(j), a.sig());
      r[idx] += sign * ai * bj;
    }
  }
  return r;
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b);
  Multivector r(a.sig());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a[static_cast<BladeIndex>(i)];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double bj = b[static_cast<BladeIndex>(j)];
      if (bj == 0.0) continue;
      const BladeIndex bi = static_cast<BladeIndex>(i);
      const BladeIndex bjx = static_cast<BladeIndex>(j);
      // keep only <e_i e_j>_{grade(j) - grade(i)}: the factors of i must all
      // contract into j
      if ((bi & bjx) != bi) continue;
      const auto [sign, idx] = basis_blade_product(bi, bjx, a.sig());
      r[idx] += sign * ai * bj;
    }
  }
  return r;
}

Multivector grade_project(const Multivector& a, int k) {
  Multivector r(a.sig());
  for (std::size_t b = 0; b < a.size(); ++b)
    if (grade_of(static_cast<BladeIndex>(b)) == k)
      r[static_cast<BladeIndex>(b)] = a[static_cast<BladeIndex>(b)];
  return r;
}

Multivector blade_inverse(const Multivector& b, double tol) {
  const Multivector sq = b * b;
  const double scale = std::max(1.0, b.inf_norm() * b.inf_norm());
  double off = 0.0;
  for (std::size_t i = 1; i < sq.size(); ++i)
    off = std::max(off, std::abs(sq[static_cast<BladeIndex>(i)]));
  if (off > tol * scale)
    throw NotABlade("square has non-scalar residue " + std::to_string(off));
  const double s0 = sq.scalar_part();
  if (std::abs(s0) <= tol * scale) throw NullBlade("blade square is numerically zero");
  return b * (1.0 / s0);
}

double vector_dot(const Multivector& v, const Multivector& w) {
  return geometric_product(v, w).scalar_part();
}

ScaledBasisBlade::ScaledBasisBlade(double mag, int sgn, BladeIndex idx)
    : magnitude(mag), sign(sgn), index(idx) {
  if (magnitude == 0.0) {
    sign = 1;
    index = 0;
  }
}

ScaledBasisBlade ScaledBasisBlade::from_value(double signed_value, BladeIndex idx) {
  if (signed_value < 0.0) return ScaledBasisBlade(-signed_value, -1, idx);
  return ScaledBasisBlade(signed_value, 1, idx);
}

ScaledBasisBlade ScaledBasisBlade::negated() const {
  if (magnitude == 0.0) return *this;
  return ScaledBasisBlade(magnitude, -sign, index);
}

Multivector exp_imaginary(const ScaledBasisBlade& f, const Signature& sig) {
  if (f.magnitude == 0.0) return Multivector::scalar(sig, 1.0);
  if (blade_square_sign(f.index, sig) > 0.0)
    throw NotImaginary("basis blade squares to +1");
  Multivector r(sig);
  r[0] = std::cos(f.magnitude);
  r[f.index] = -f.sign * std::sin(f.magnitude);
  return r;
}

void require_same_signature(const Multivector& a, const Multivector& b) {
  if (!(a.sig() == b.sig())) throw SignatureMismatch("operands live in different algebras");
}

}  // namespace gaft
