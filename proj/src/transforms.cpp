#include "gaft/transforms.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gaft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SampledField::SampledField(const Signature& s, int m_, int extent_, std::vector<int> offset_)
    : sig(s), m(m_), extent(extent_), offset(std::move(offset_)) {
  if (m < 1) throw SchemaError("field dimension must be positive");
  if (extent < 1) throw SchemaError("field extent must be positive");
  if (offset.empty()) offset.assign(static_cast<std::size_t>(m), 0);
  if (static_cast<int>(offset.size()) != m)
    throw SchemaError("offset length does not match the field dimension");
}

void SampledField::set(const std::vector<int>& x, const Multivector& v) {
  if (static_cast<int>(x.size()) != m)
    throw SchemaError("sample point length does not match the field dimension");
  for (int i = 0; i < m; ++i)
    if (x[i] < offset[i] || x[i] >= offset[i] + extent)
      throw SchemaError("sample point outside the declared box");
  samples.insert_or_assign(x, v);
}

void SampledField::add(const std::vector<int>& x, const Multivector& v) {
  auto it = samples.find(x);
  if (it == samples.end())
    set(x, v);
  else
    it->second += v;
}

bool SampledField::empty_values(double tol) const {
  for (const auto& [x, v] : samples)
    if (!v.is_zero(tol)) return false;
  return true;
}

SampledField random_field(const Signature& sig, int m, int extent, std::vector<int> offset,
                          SplitMix64& rng) {
  SampledField f(sig, m, extent, std::move(offset));
  std::vector<int> x(static_cast<std::size_t>(m));
  const long total = static_cast<long>(std::pow(extent, m) + 0.5);
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int i = m - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = f.offset[static_cast<std::size_t>(i)] +
                                       static_cast<int>(rem % extent);
      rem /= extent;
    }
    Multivector v(sig);
    for (std::size_t b = 0; b < sig.size(); ++b)
      v[static_cast<BladeIndex>(b)] = rng.symmetric();
    f.set(x, v);
  }
  return f;
}

FrequencySet default_freqs(int m, int count, std::uint64_t seed, int lattice_extent) {
  FrequencySet out;
  SplitMix64 rng(seed);
  for (int i = 0; i < count; ++i) {
    Vec u(static_cast<std::size_t>(m));
    for (auto& c : u) c = rng.uniform();
    out.freqs.push_back(std::move(u));
  }
  if (lattice_extent > 0) {
    const long total = static_cast<long>(std::pow(lattice_extent, m) + 0.5);
    for (long flat = 0; flat < total; ++flat) {
      Vec u(static_cast<std::size_t>(m));
      long rem = flat;
      for (int i = m - 1; i >= 0; --i) {
        u[static_cast<std::size_t>(i)] =
            kTwoPi * static_cast<double>(rem % lattice_extent) / lattice_extent;
        rem /= lattice_extent;
      }
      out.freqs.push_back(std::move(u));
    }
  }
  return out;
}

const PhaseFunction& GFTSpec::phase(int l) const {
  if (l < mu()) return left[static_cast<std::size_t>(l)];
  return right[static_cast<std::size_t>(l - mu())];
}

bool GFTSpec::all_flagged(bool PhaseFunction::*flag) const {
  for (const auto& p : left)
    if (!(p.*flag)) return false;
  for (const auto& p : right)
    if (!(p.*flag)) return false;
  return true;
}

TransformContext::TransformContext(const GFTSpec& spec, const Vec& u) : spec_(&spec), u_(u) {
  if (static_cast<int>(u.size()) != spec.m)
    throw SchemaError("frequency dimension does not match the spec");
  refs_.resize(static_cast<std::size_t>(spec.nu()));
  for (int l = 0; l < spec.nu(); ++l)
    refs_[static_cast<std::size_t>(l)] = separable_ref_index(spec.phase(l), u, spec.m);
}

const Multivector& TransformContext::frame_blade(BladeIndex bits) {
  auto it = frame_blades_.find(bits);
  if (it == frame_blades_.end())
    it = frame_blades_.emplace(bits, spec_->frame.blade(spec_->sig, bits)).first;
  return it->second;
}

ShapeKind TransformContext::classify(const FactorSpec& f) const {
  if (f.kind == FactorSpec::Kind::Plain) return ShapeKind::Full;
  if (f.kind == FactorSpec::Kind::FixedShape) return f.fixed;

  // SplitBy*: parity of the factor's own blade against every reference; a
  // phase that vanishes identically at this u contributes the scalar blade
  const BladeIndex own = refs_[static_cast<std::size_t>(f.phase)].value_or(0);
  bool match = true;
  bool zero_bits = true;
  auto apply = [&](std::optional<BladeIndex> ref, bool bit) {
    if (bit) zero_bits = false;
    if (!ref) {
      if (bit) match = false;  // c^1 against a vanished reference is empty
      return;
    }
    if (commutation_parity(own, *ref) != (bit ? 1 : 0)) match = false;
  };
  if (f.kind == FactorSpec::Kind::SplitByIndices) {
    for (std::size_t nu = 0; nu < f.ref_indices.size(); ++nu)
      apply(f.ref_indices[nu], (f.bits >> nu) & 1u);
  } else {
    for (std::size_t nu = 0; nu < f.ref_phases.size(); ++nu)
      apply(refs_[static_cast<std::size_t>(f.ref_phases[nu])], (f.bits >> nu) & 1u);
  }
  if (zero_bits) return match ? ShapeKind::Full : ShapeKind::Cosine;
  return match ? ShapeKind::SineBlade : ShapeKind::Zero;
}

Multivector TransformContext::factor_value(const FactorSpec& f, ShapeKind kind, const Vec& x) {
  ScaledBasisBlade v = spec_->phase(f.phase).eval(x, u_);
  if (f.flip) v = v.negated();
  const Signature& sig = spec_->sig;
  switch (kind) {
    case ShapeKind::Cosine:
      return Multivector::scalar(sig, std::cos(v.magnitude));
    case ShapeKind::Zero:
      return Multivector(sig);
    case ShapeKind::SineBlade: {
      if (v.magnitude == 0.0) return Multivector(sig);
      return frame_blade(v.index) * (-v.sign * std::sin(v.magnitude));
    }
    case ShapeKind::Full:
      break;
  }
  if (v.magnitude == 0.0) return Multivector::scalar(sig, 1.0);
  if (spec_->frame.square_sign(sig, v.index) > 0.0)
    throw NotImaginary("phase value does not square to a negative real");
  Multivector r = frame_blade(v.index) * (-v.sign * std::sin(v.magnitude));
  r[0] += std::cos(v.magnitude);
  return r;
}

Multivector TransformContext::eval(const SampledField& a, const std::vector<FactorSpec>& left,
                                   const std::vector<FactorSpec>& right) {
  const Signature& sig = spec_->sig;
  if (!(a.sig == sig)) throw SignatureMismatch("field and spec use different algebras");
  if (a.m != spec_->m) throw SchemaError("field dimension does not match the spec");

  std::vector<ShapeKind> lkind, rkind;
  for (const auto& f : left) {
    lkind.push_back(classify(f));
    if (lkind.back() == ShapeKind::Zero) return Multivector(sig);
  }
  for (const auto& f : right) {
    rkind.push_back(classify(f));
    if (rkind.back() == ShapeKind::Zero) return Multivector(sig);
  }

  Multivector acc(sig);
  Vec x(static_cast<std::size_t>(a.m));
  for (const auto& [xi, value] : a.samples) {
    for (int i = 0; i < a.m; ++i) x[static_cast<std::size_t>(i)] = xi[static_cast<std::size_t>(i)];
    Multivector term = value;
    for (std::size_t i = left.size(); i-- > 0;)
      term = factor_value(left[i], lkind[i], x) * term;
    for (std::size_t i = 0; i < right.size(); ++i)
      term = term * factor_value(right[i], rkind[i], x);
    acc += term;
  }
  return acc;
}

const Multivector& TransformContext::eval_cached(const std::string& field_tag,
                                                 const SampledField& a,
                                                 const std::vector<FactorSpec>& left,
                                                 const std::vector<FactorSpec>& right) {
  const std::string key = field_tag + "|" + factor_key(left) + "|" + factor_key(right);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, eval(a, left, right)).first;
  return it->second;
}

Multivector TransformContext::ref_part(const Multivector& v, int phase, int parity) {
  const auto ref = refs_[static_cast<std::size_t>(phase)];
  if (!ref) return parity == 0 ? v : Multivector(spec_->sig);
  if (spec_->frame.standard()) return c_part_basis(v, *ref, parity);
  return c_part(v, frame_blade(*ref), parity);
}

Multivector TransformContext::side_chain(const Multivector& v, bool left_side, unsigned bits) {
  const int base = left_side ? 0 : spec_->mu();
  const int count = left_side ? spec_->mu() : spec_->nu() - spec_->mu();
  Multivector acc = v;
  for (int i = 0; i < count; ++i) {
    acc = ref_part(acc, base + i, (bits >> i) & 1u);
    if (acc.is_zero(0.0)) break;
  }
  return acc;
}

bool TransformContext::side_chain_is_zero(bool left_side, unsigned bits) const {
  const int base = left_side ? 0 : spec_->mu();
  const int count = left_side ? spec_->mu() : spec_->nu() - spec_->mu();
  for (int i = 0; i < count; ++i)
    if (((bits >> i) & 1u) && !refs_[static_cast<std::size_t>(base + i)]) return true;
  return false;
}

std::vector<FactorSpec> plain_factors(const GFTSpec& spec, bool left_side, unsigned flips) {
  std::vector<FactorSpec> out;
  const int base = left_side ? 0 : spec.mu();
  const int count = left_side ? spec.mu() : spec.nu() - spec.mu();
  for (int i = 0; i < count; ++i) {
    FactorSpec f;
    f.phase = base + i;
    f.flip = (flips >> i) & 1u;
    out.push_back(std::move(f));
  }
  return out;
}

std::string factor_key(const std::vector<FactorSpec>& fs) {
  std::ostringstream os;
  for (const auto& f : fs) {
    os << 'p' << f.phase << (f.flip ? '-' : '+');
    switch (f.kind) {
      case FactorSpec::Kind::Plain:
        break;
      case FactorSpec::Kind::FixedShape:
        os << 'F' << static_cast<int>(f.fixed);
        break;
      case FactorSpec::Kind::SplitByIndices:
        os << 'I' << f.bits << ':';
        for (auto r : f.ref_indices) os << r << ',';
        break;
      case FactorSpec::Kind::SplitByPhases:
        os << 'P' << f.bits << ':';
        for (auto r : f.ref_phases) os << r << ',';
        break;
    }
    os << ';';
  }
  return os.str();
}

std::vector<Multivector> gft_forward(const SampledField& a, const GFTSpec& spec,
                                     const FrequencySet& freqs) {
  std::vector<Multivector> out;
  for (const auto& u : freqs.freqs) {
    TransformContext ctx(spec, u);
    out.push_back(ctx.eval(a, plain_factors(spec, true, 0), plain_factors(spec, false, 0)));
  }
  return out;
}

namespace {

std::vector<FactorSpec> rule_factors(const GFTSpec& spec, bool left_side,
                                     const std::vector<ShapeRule>& rules) {
  const int base = left_side ? 0 : spec.mu();
  const int count = left_side ? spec.mu() : spec.nu() - spec.mu();
  if (static_cast<int>(rules.size()) != count)
    throw SchemaError("shape rule count does not match the factor count");
  std::vector<FactorSpec> out;
  for (int i = 0; i < count; ++i) {
    const ShapeRule& r = rules[static_cast<std::size_t>(i)];
    FactorSpec f;
    f.phase = base + i;
    if (r.mode == ShapeRule::Mode::Fixed) {
      f.kind = FactorSpec::Kind::FixedShape;
      f.fixed = r.fixed;
    } else {
      f.kind = FactorSpec::Kind::SplitByIndices;
      f.ref_indices = r.refs;
      f.bits = r.bits;
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<Multivector> gtt_forward(const SampledField& a, const GTTSpec& spec,
                                     const FrequencySet& freqs) {
  std::vector<Multivector> out;
  const auto left = rule_factors(spec.base, true, spec.left);
  const auto right = rule_factors(spec.base, false, spec.right);
  for (const auto& u : freqs.freqs) {
    TransformContext ctx(spec.base, u);
    out.push_back(ctx.eval(a, left, right));
  }
  return out;
}

GTTSpec gtt_from_decomposition(const GFTSpec& spec, const std::vector<BladeIndex>& b1,
                               const std::vector<BladeIndex>& b2,
                               const std::vector<unsigned>& j_rows,
                               const std::vector<unsigned>& k_rows) {
  if (static_cast<int>(j_rows.size()) != spec.mu() ||
      static_cast<int>(k_rows.size()) != spec.nu() - spec.mu())
    throw SchemaError("row counts do not match the factor counts");
  GTTSpec out{spec, {}, {}};
  for (unsigned row : j_rows) {
    ShapeRule r;
    r.mode = ShapeRule::Mode::Decomposed;
    r.refs = b1;
    r.bits = row;
    out.left.push_back(std::move(r));
  }
  for (unsigned row : k_rows) {
    ShapeRule r;
    r.mode = ShapeRule::Mode::Decomposed;
    r.refs = b2;
    r.bits = row;
    out.right.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------------------
// catalogue
// ------------------------------------------------------------------------
namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

PhaseFunction make_phase(std::string name, PhaseFunction::Eval eval) {
  PhaseFunction p;
  p.name = std::move(name);
  p.eval = std::move(eval);
  p.coorthogonal = true;
  p.separable = true;
  p.linear_in_x = true;
  return p;
}

}  // namespace

GFTSpec clifford_ft(int n) {
  if (n < 2 || n > Signature::kMaxDim || (n % 4 != 2 && n % 4 != 3))
    throw UnsupportedSignature("Clifford FT needs n = 2 or 3 mod 4");
  GFTSpec spec;
  spec.name = "clifford";
  spec.sig = Signature(n, 0);
  spec.m = n;
  const BladeIndex pseudo = static_cast<BladeIndex>(spec.sig.size() - 1);
  spec.right.push_back(make_phase("2pi i_n x.u", [pseudo](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(kTwoPi * dot(x, u), pseudo);
  }));
  return spec;
}

GFTSpec sommen_bulow(int n) {
  if (n < 1 || n > Signature::kMaxDim)
    throw UnsupportedSignature("Sommen-Buelow FT needs 1 <= n <= 8");
  GFTSpec spec;
  spec.name = "sommen_bulow";
  spec.sig = Signature(0, n);
  spec.m = n;
  for (int l = 0; l < n; ++l) {
    const std::size_t axis = static_cast<std::size_t>(l);
    spec.right.push_back(
        make_phase("2pi e_" + std::to_string(l + 1) + " x_l u_l",
                   [axis, l](const Vec& x, const Vec& u) {
                     return ScaledBasisBlade::from_value(kTwoPi * x[axis] * u[axis],
                                                         BladeIndex{1} << l);
                   }));
  }
  return spec;
}

GFTSpec quaternionic() {
  GFTSpec spec;
  spec.name = "quaternionic";
  spec.sig = Signature(0, 2);
  spec.m = 2;
  spec.left.push_back(make_phase("2pi i x1 u1", [](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(kTwoPi * x[0] * u[0], 0b01u);
  }));
  spec.right.push_back(make_phase("2pi j x2 u2", [](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(kTwoPi * x[1] * u[1], 0b10u);
  }));
  return spec;
}

GFTSpec spacetime_ft() {
  GFTSpec spec;
  spec.name = "spacetime";
  spec.sig = Signature(3, 1);
  spec.m = 4;
  spec.left.push_back(make_phase("e4 x4 u4", [](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(x[3] * u[3], 0b1000u);
  }));
  // eps4 e4 i4 = -e_123
  spec.right.push_back(make_phase("eps4 e4 i4 (x1u1+x2u2+x3u3)", [](const Vec& x, const Vec& u) {
    const double s = x[0] * u[0] + x[1] * u[1] + x[2] * u[2];
    return ScaledBasisBlade::from_value(-s, 0b0111u);
  }));
  return spec;
}

GFTSpec color_image_ft(const FactoredBlade& b) {
  const Signature sig(4, 0);
  if (!(b.sig == sig) || b.dim() != 2)
    throw UnsupportedSignature("color-image FT needs a bivector blade in G(4,0)");
  const Multivector dense = b.expand();
  const Multivector sq = dense * dense;
  if (std::abs(sq.scalar_part() + 1.0) > 1e-9)
    throw NotABlade("color-image bivector must be unit, B^2 = -1");

  GFTSpec spec;
  spec.name = "color_image";
  spec.sig = sig;
  spec.m = 2;

  // scaled standard basis bivectors keep the exact standard frame; anything
  // else gets an orthonormal frame built from the blade and its complement
  BladeIndex b_idx = 0, ib_idx = 0;
  double b_scale = 1.0, ib_scale = 1.0;
  int nonzero = 0;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[static_cast<BladeIndex>(i)] != 0.0) {
      ++nonzero;
      b_idx = static_cast<BladeIndex>(i);
    }
  const Multivector pseudo = Multivector::basis_blade(sig, static_cast<BladeIndex>(sig.size() - 1));
  if (nonzero == 1) {
    b_scale = dense[b_idx];
    const Multivector ib = pseudo * dense;
    for (std::size_t i = 0; i < ib.size(); ++i)
      if (ib[static_cast<BladeIndex>(i)] != 0.0) {
        ib_idx = static_cast<BladeIndex>(i);
        ib_scale = ib[static_cast<BladeIndex>(i)];
      }
  } else {
    auto basis = coorthogonal_basis({b});
    // complete the two blade directions to an orthonormal frame of R^4
    Eigen::MatrixXd v(4, 2);
    for (int j = 0; j < 2; ++j) {
      const auto coords = basis.basis[static_cast<std::size_t>(j)].vector_coords();
      for (int r = 0; r < 4; ++r) v(r, j) = coords[static_cast<std::size_t>(r)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeFullU);
    Frame frame;
    frame.vectors = basis.basis;
    for (int j = 2; j < 4; ++j) {
      Eigen::VectorXd col = svd.matrixU().col(j);
      Eigen::Index max_at = 0;
      col.cwiseAbs().maxCoeff(&max_at);
      if (col[max_at] < 0.0) col = -col;
      Multivector vmv(sig);
      for (int r = 0; r < 4; ++r) vmv[BladeIndex{1} << r] = col[r];
      frame.vectors.push_back(vmv);
    }
    spec.frame = frame;
    const auto b_in = express_in_basis(b, frame.vectors);
    b_idx = b_in.index;
    b_scale = b_in.scale;
    const Multivector ib = pseudo * dense;
    // iB is a basis blade of the same frame (the complement pair)
    FactoredBlade ib_factored(sig, {frame.vectors[2], frame.vectors[3]});
    const double s = (ib * blade_inverse(ib_factored.expand())).scalar_part();
    if ((ib - ib_factored.expand() * s).inf_norm() > 1e-9)
      throw NotRepresentable("iB is not a blade of the constructed frame");
    ib_idx = 0b1100u;
    ib_scale = s;
  }

  auto half_sum = [](const Vec& x, const Vec& u) { return 0.5 * (x[0] * u[0] + x[1] * u[1]); };
  auto f1 = make_phase("(x1u1+x2u2)/2 B", [=](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(half_sum(x, u) * b_scale, b_idx);
  });
  auto f2 = make_phase("(x1u1+x2u2)/2 iB", [=](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(half_sum(x, u) * ib_scale, ib_idx);
  });
  spec.left = {f1, f2};
  spec.right = {f1.negated(), f2.negated()};
  return spec;
}

GFTSpec cylindrical_ft(int n) {
  // for n > 2 the blade direction of -x^u varies with (x,u); no fixed frame
  // carries it, and no convolution formula exists there either
  if (n != 2) throw UnsupportedSignature("cylindrical FT supported for n = 2 only");
  GFTSpec spec;
  spec.name = "cylindrical";
  spec.sig = Signature(2, 0);
  spec.m = 2;
  spec.left.push_back(make_phase("-x^u", [](const Vec& x, const Vec& u) {
    return ScaledBasisBlade::from_value(x[1] * u[0] - x[0] * u[1], 0b11u);
  }));
  return spec;
}

GFTSpec catalogue(const std::string& name, int n, const std::optional<FactoredBlade>& b) {
  if (name == "clifford") return clifford_ft(n);
  if (name == "sommen_bulow") return sommen_bulow(n);
  if (name == "quaternionic") return quaternionic();
  if (name == "spacetime") return spacetime_ft();
  if (name == "cylindrical") return cylindrical_ft(n);
  if (name == "color_image") {
    if (b) return color_image_ft(*b);
    const Signature sig(4, 0);
    FactoredBlade e12(sig, {Multivector::basis_vector(sig, 0), Multivector::basis_vector(sig, 1)});
    return color_image_ft(e12);
  }
  throw SchemaError("unknown transform '" + name + "'");
}

bool phases_central(const GFTSpec& spec) {
  // a frame blade is central iff it commutes with every frame blade, and the
  // commutation parities only depend on the index combinatorics
  std::vector<BladeIndex> indices;
  Vec probe_u(static_cast<std::size_t>(spec.m), 0.37);
  for (int l = 0; l < spec.nu(); ++l) {
    const auto r = separable_ref_index(spec.phase(l), probe_u, spec.m);
    if (r) indices.push_back(*r);
  }
  for (BladeIndex idx : indices)
    for (BladeIndex other = 0; other < spec.sig.size(); ++other)
      if (commutation_parity(idx, other) != 0) return false;
  return true;
}

}  // namespace gaft
