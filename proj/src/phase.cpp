#include "gaft/phase.hpp"

#include <cmath>

namespace gaft {

Multivector Frame::blade(const Signature& sig, BladeIndex bits) const {
  if (standard()) return Multivector::basis_blade(sig, bits);
  Multivector acc = Multivector::scalar(sig, 1.0);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (bits & (BladeIndex{1} << i)) acc = acc * vectors[i];
  return acc;
}

double Frame::square_sign(const Signature& sig, BladeIndex bits) const {
  if (standard()) return blade_square_sign(bits, sig);
  const Multivector b = blade(sig, bits);
  return (b * b).scalar_part() >= 0.0 ? 1.0 : -1.0;
}

PhaseFunction PhaseFunction::negated() const {
  PhaseFunction out = *this;
  out.name = "-" + name;
  out.eval = [inner = eval](const Vec& x, const Vec& u) { return inner(x, u).negated(); };
  return out;
}

std::optional<BladeIndex> separable_ref_index(const PhaseFunction& f, const Vec& u, int m,
                                              double tol) {
  // unit vectors, then two fixed dense directions
  std::vector<Vec> probes;
  for (int i = 0; i < m; ++i) {
    Vec e(static_cast<std::size_t>(m), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    probes.push_back(std::move(e));
  }
  Vec ones(static_cast<std::size_t>(m), 1.0);
  probes.push_back(ones);
  Vec mixed(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) mixed[static_cast<std::size_t>(i)] = 1.0 / (2.0 + i);
  probes.push_back(mixed);

  for (const auto& x : probes) {
    const ScaledBasisBlade v = f.eval(x, u);
    if (v.magnitude > tol) return v.index;
  }
  return std::nullopt;
}

}  // namespace gaft
