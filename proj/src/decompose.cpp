#include "gaft/decompose.hpp"

#include <cmath>

namespace gaft {
namespace {

// a scaled basis blade has exactly one nonzero coefficient
int single_coeff_index(const Multivector& m) {
  int at = -1;
  for (std::size_t b = 0; b < m.size(); ++b) {
    if (m[static_cast<BladeIndex>(b)] == 0.0) continue;
    if (at >= 0) return -1;
    at = static_cast<int>(b);
  }
  return at;
}

}  // namespace

Multivector c_part_basis(const Multivector& a, BladeIndex ref, int parity) {
  Multivector r(a.sig());
  for (std::size_t b = 0; b < a.size(); ++b)
    if (commutation_parity(static_cast<BladeIndex>(b), ref) == parity)
      r[static_cast<BladeIndex>(b)] = a[static_cast<BladeIndex>(b)];
  return r;
}

Multivector c_part(const Multivector& a, const Multivector& ref, int parity, double tol) {
  require_same_signature(a, ref);
  // the split is invariant under nonzero rescaling of the reference, so a
  // scaled basis blade reduces to exact coefficient masking; a scalar
  // reference commutes with everything
  const int single = single_coeff_index(ref);
  if (single >= 0) return c_part_basis(a, static_cast<BladeIndex>(single), parity);
  const Multivector inv = blade_inverse(ref, tol);
  const Multivector conj = inv * a * ref;
  return parity == 0 ? (a + conj) * 0.5 : (a - conj) * 0.5;
}

std::pair<Multivector, Multivector> c_split(const Multivector& a, const Multivector& ref,
                                            double tol) {
  Multivector c0 = c_part(a, ref, 0, tol);
  return {c0, a - c0};
}

Multivector c_chain(const Multivector& a, const std::vector<Multivector>& refs, SplitIndex j,
                    ChainDir dir, double tol) {
  const int d = static_cast<int>(refs.size());
  Multivector acc = a;
  if (dir == ChainDir::LeftToRight) {
    for (int i = 0; i < d; ++i) acc = c_part(acc, refs[i], j.bit(i) ? 1 : 0, tol);
  } else {
    for (int i = d - 1; i >= 0; --i) acc = c_part(acc, refs[i], j.bit(i) ? 1 : 0, tol);
  }
  return acc;
}

int commutation_parity(BladeIndex j, BladeIndex k) {
  return (grade_of(j) * grade_of(k) - std::popcount(j & k)) & 1;
}

std::vector<BladeIndex> c_index_set(const std::vector<BladeIndex>& refs, SplitIndex l,
                                    const Signature& sig) {
  std::vector<BladeIndex> out;
  for (BladeIndex b = 0; b < sig.size(); ++b) {
    bool match = true;
    for (std::size_t nu = 0; nu < refs.size(); ++nu)
      if (commutation_parity(b, refs[nu]) != (l.bit(static_cast<int>(nu)) ? 1 : 0)) {
        match = false;
        break;
      }
    if (match) out.push_back(b);
  }
  return out;
}

Multivector ExpShape::expand(const Signature& sig) const {
  switch (kind) {
    case ShapeKind::Full:
      return exp_imaginary(f, sig);
    case ShapeKind::Cosine:
      return Multivector::scalar(sig, std::cos(f.magnitude));
    case ShapeKind::SineBlade:
      return Multivector::basis_blade(sig, f.index, -f.sign * std::sin(f.magnitude));
    case ShapeKind::Zero:
      return Multivector(sig);
  }
  return Multivector(sig);
}

ExpShape exp_decompose(const ScaledBasisBlade& f, const std::vector<BladeIndex>& refs,
                       SplitIndex l, const Signature& sig) {
  if (f.magnitude > 0.0 && blade_square_sign(f.index, sig) > 0.0)
    throw NotImaginary("phase blade squares to +1");
  if (static_cast<int>(refs.size()) != l.size)
    throw Error("split index length does not match the reference count");
  bool match = true;
  for (std::size_t nu = 0; nu < refs.size(); ++nu)
    if (commutation_parity(f.index, refs[nu]) != (l.bit(static_cast<int>(nu)) ? 1 : 0)) {
      match = false;
      break;
    }
  ExpShape shape;
  shape.f = f;
  if (!l.any())
    shape.kind = match ? ShapeKind::Full : ShapeKind::Cosine;
  else
    shape.kind = match ? ShapeKind::SineBlade : ShapeKind::Zero;
  return shape;
}

Multivector BoundFactor::value(const Signature& sig) const {
  const ScaledBasisBlade g = flipped ? f.negated() : f;
  ExpShape shape{kind, g};
  return shape.expand(sig);
}

std::vector<std::pair<Multivector, std::vector<BoundFactor>>> move_through_product(
    const Multivector& a, const std::vector<BoundFactor>& factors, const Signature& sig,
    double tol) {
  const int d = static_cast<int>(factors.size());
  std::vector<Multivector> refs;
  for (const auto& fac : factors) {
    if (fac.f.magnitude <= tol)
      throw NullBlade("factor phase is not invertible at this point");
    refs.push_back(Multivector::basis_blade(sig, fac.f.index, fac.f.signed_value()));
  }
  std::vector<std::pair<Multivector, std::vector<BoundFactor>>> terms;
  for (unsigned j = 0; j < (1u << d); ++j) {
    Multivector part = c_chain(a, refs, SplitIndex::of(j, d), ChainDir::RightToLeft, tol);
    if (part.is_zero(0.0)) continue;
    std::vector<BoundFactor> flipped = factors;
    for (int i = 0; i < d; ++i)
      if ((j >> i) & 1u) flipped[i].flipped = !flipped[i].flipped;
    terms.emplace_back(std::move(part), std::move(flipped));
  }
  return terms;
}

SplitIndex TriangularSelector::column_parity() const {
  unsigned bits = 0;
  for (int c = 0; c < d; ++c) {
    int sum = 0;
    for (int l = 0; l < d; ++l) sum += (rows[l] >> c) & 1u;
    if (sum & 1) bits |= 1u << c;
  }
  return SplitIndex::of(bits, d);
}

std::vector<TriangularSelector> enumerate_all_triangular(int d, bool lower) {
  if (d > 6) throw Error("triangular enumeration capped at d = 6");
  std::vector<std::pair<int, int>> free_cells;  // (row, col)
  for (int l = 0; l < d; ++l)
    for (int c = 0; c < d; ++c)
      if (lower ? c < l : c > l) free_cells.emplace_back(l, c);
  std::vector<TriangularSelector> out;
  for (unsigned pattern = 0; pattern < (1u << free_cells.size()); ++pattern) {
    TriangularSelector t{d, lower, std::vector<unsigned>(static_cast<std::size_t>(d), 0u)};
    for (std::size_t i = 0; i < free_cells.size(); ++i)
      if ((pattern >> i) & 1u) t.rows[free_cells[i].first] |= 1u << free_cells[i].second;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TriangularSelector> enumerate_triangular(int d, SplitIndex parity, bool lower) {
  std::vector<TriangularSelector> out;
  for (auto& t : enumerate_all_triangular(d, lower))
    if (t.column_parity() == parity) out.push_back(std::move(t));
  return out;
}

std::vector<KernelTerm> split_shifted_product(const std::vector<PhaseFunction>& phases,
                                              const Vec& x, const Vec& y, const Vec& u,
                                              bool lower, const Signature& sig) {
  const int d = static_cast<int>(phases.size());
  const int m = static_cast<int>(x.size());
  for (const auto& p : phases)
    if (!p.separable || !p.linear_in_x)
      throw FlagViolation("shifted-product split needs separable phases linear in x");

  std::vector<std::optional<BladeIndex>> ref(static_cast<std::size_t>(d));
  for (int l = 0; l < d; ++l) ref[l] = separable_ref_index(phases[l], u, m);

  // `lower` decomposes the x-factors against the set prefix, `upper` the
  // y-factors against the suffix; zero-padded reference slots are identity.
  std::vector<KernelTerm> terms;
  for (const auto& t : enumerate_all_triangular(d, lower)) {
    const SplitIndex j = t.column_parity();
    KernelTerm term;
    bool dead = false;
    for (int l = 0; l < d && !dead; ++l) {
      const ScaledBasisBlade decomposed_value =
          lower ? phases[l].eval(x, u) : phases[l].eval(y, u);
      std::vector<BladeIndex> refs;
      unsigned bits = 0;
      int nref = 0;
      for (int c = 0; c < d; ++c) {
        if (lower ? c >= l : c <= l) continue;
        const bool bit = (t.rows[l] >> c) & 1u;
        if (!ref[c]) {
          if (bit) {
            dead = true;
            break;
          }
          continue;  // vanished reference, no split
        }
        refs.push_back(*ref[c]);
        if (bit) bits |= 1u << nref;
        ++nref;
      }
      if (dead) break;
      const ExpShape shape =
          exp_decompose(decomposed_value, refs, SplitIndex::of(bits, nref), sig);
      if (shape.kind == ShapeKind::Zero) {
        dead = true;
        break;
      }
      ScaledBasisBlade plain_value = lower ? phases[l].eval(y, u) : phases[l].eval(x, u);
      if (j.bit(l)) plain_value = plain_value.negated();
      const ExpShape plain{ShapeKind::Full, plain_value};
      if (lower) {
        term.x_factors.push_back(shape);
        term.y_factors.push_back(plain);
      } else {
        term.x_factors.push_back(plain);
        term.y_factors.push_back(shape);
      }
    }
    if (!dead) terms.push_back(std::move(term));
  }
  return terms;
}

std::vector<PhaseFunction> sign_flip(const std::vector<PhaseFunction>& phases, SplitIndex j) {
  if (static_cast<int>(phases.size()) != j.size)
    throw Error("flip index length does not match the phase count");
  std::vector<PhaseFunction> out;
  out.reserve(phases.size());
  for (std::size_t l = 0; l < phases.size(); ++l)
    out.push_back(j.bit(static_cast<int>(l)) ? phases[l].negated() : phases[l]);
  return out;
}

}  // namespace gaft
