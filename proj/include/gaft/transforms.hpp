#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaft/decompose.hpp"
#include "gaft/geometry.hpp"
#include "gaft/phase.hpp"
#include "gaft/rng.hpp"

namespace gaft {

// Finitely supported lattice of multivector values over Z^m. extent/offset
// declare the bounding box; samples stay inside it.
struct SampledField {
  Signature sig;
  int m = 1;
  int extent = 1;
  std::vector<int> offset;
  std::map<std::vector<int>, Multivector> samples;

  SampledField(const Signature& s, int m_, int extent_, std::vector<int> offset_ = {});

  void set(const std::vector<int>& x, const Multivector& v);
  void add(const std::vector<int>& x, const Multivector& v);
  bool empty_values(double tol = 0.0) const;

  template <typename Fn>
  SampledField map_values(Fn&& fn) const {
    SampledField out(sig, m, extent, offset);
    for (const auto& [x, v] : samples) out.set(x, fn(v));
    return out;
  }
};

// field with every lattice point of the box set to coefficients uniform in [-1,1]
SampledField random_field(const Signature& sig, int m, int extent, std::vector<int> offset,
                          SplitMix64& rng);

struct FrequencySet {
  std::vector<Vec> freqs;
};

// `count` seeded frequencies in [0,1)^m, optionally followed by the lattice
// points 2 pi k / extent
FrequencySet default_freqs(int m, int count, std::uint64_t seed, int lattice_extent = 0);

// The general geometric Fourier transform specification: ordered left and
// right phase sets over a shared frame.
struct GFTSpec {
  std::string name;
  Signature sig{1, 0};
  int m = 1;
  std::vector<PhaseFunction> left;   // F1
  std::vector<PhaseFunction> right;  // F2
  Frame frame;

  int mu() const { return static_cast<int>(left.size()); }
  int nu() const { return static_cast<int>(left.size() + right.size()); }
  // global phase index: 0..mu-1 left, mu..nu-1 right
  const PhaseFunction& phase(int l) const;
  bool all_flagged(bool PhaseFunction::*flag) const;
};

// One kernel factor bound into a transform evaluation.
struct FactorSpec {
  enum class Kind { Plain, FixedShape, SplitByIndices, SplitByPhases };

  int phase = 0;
  bool flip = false;
  Kind kind = Kind::Plain;
  ShapeKind fixed = ShapeKind::Full;       // FixedShape
  std::vector<BladeIndex> ref_indices;     // SplitByIndices (frame indices)
  std::vector<int> ref_phases;             // SplitByPhases (global phase ids)
  unsigned bits = 0;
};

// Per-(spec, u) evaluation state: resolved separable reference blades, frame
// blade cache and memoized transform values.
class TransformContext {
 public:
  TransformContext(const GFTSpec& spec, const Vec& u);

  const GFTSpec& spec() const { return *spec_; }
  const Vec& u() const { return u_; }

  std::optional<BladeIndex> ref_index(int phase) const { return refs_[phase]; }
  const Multivector& frame_blade(BladeIndex bits);
  // x-independent shape classification of a factor at this u
  ShapeKind classify(const FactorSpec& f) const;
  Multivector factor_value(const FactorSpec& f, ShapeKind kind, const Vec& x);

  // sum over the field support of (prod left) value (prod right)
  Multivector eval(const SampledField& a, const std::vector<FactorSpec>& left,
                   const std::vector<FactorSpec>& right);
  // memoized variant keyed by a caller-supplied field tag
  const Multivector& eval_cached(const std::string& field_tag, const SampledField& a,
                                 const std::vector<FactorSpec>& left,
                                 const std::vector<FactorSpec>& right);

  // c-part of a multivector against phase l's reference blade; a vanished
  // reference leaves parity 0 untouched and kills parity 1
  Multivector ref_part(const Multivector& v, int phase, int parity);
  // chain over one side's references
  Multivector side_chain(const Multivector& v, bool left_side, unsigned bits);
  bool side_chain_is_zero(bool left_side, unsigned bits) const;  // vanished-ref shortcut

 private:
  const GFTSpec* spec_;
  Vec u_;
  std::vector<std::optional<BladeIndex>> refs_;
  std::map<BladeIndex, Multivector> frame_blades_;
  std::map<std::string, Multivector> memo_;
};

std::vector<FactorSpec> plain_factors(const GFTSpec& spec, bool left_side, unsigned flips);
std::string factor_key(const std::vector<FactorSpec>& fs);

std::vector<Multivector> gft_forward(const SampledField& a, const GFTSpec& spec,
                                     const FrequencySet& freqs);

// Trigonometric generalization: each factor carries a fixed shape selector or
// a decomposition rule that resolves to a shape pointwise.
struct ShapeRule {
  enum class Mode { Fixed, Decomposed };
  Mode mode = Mode::Fixed;
  ShapeKind fixed = ShapeKind::Full;
  std::vector<BladeIndex> refs;  // frame indices, Decomposed
  unsigned bits = 0;
};

struct GTTSpec {
  GFTSpec base;
  std::vector<ShapeRule> left;
  std::vector<ShapeRule> right;
};

std::vector<Multivector> gtt_forward(const SampledField& a, const GTTSpec& spec,
                                     const FrequencySet& freqs);

// GTT whose factor shapes are the c^{(J)_l} decompositions of the exponentials
// against the given basis-blade reference lists
GTTSpec gtt_from_decomposition(const GFTSpec& spec, const std::vector<BladeIndex>& b1,
                               const std::vector<BladeIndex>& b2,
                               const std::vector<unsigned>& j_rows,
                               const std::vector<unsigned>& k_rows);

// ------------------------------------------------------------------------
// transform catalogue
// ------------------------------------------------------------------------
GFTSpec clifford_ft(int n);                       // F2 = {2 pi i_n x.u}, n = 2,3 mod 4
GFTSpec sommen_bulow(int n);                      // F2 = {2 pi e_l x_l u_l} in G(0,n)
GFTSpec quaternionic();                           // F1 = {2 pi i x1 u1}, F2 = {2 pi j x2 u2}
GFTSpec spacetime_ft();                           // G(3,1), F1 = {e4 x4 u4}, F2 = {eps4 e4 i4 (...)}
GFTSpec color_image_ft(const FactoredBlade& b);   // G(4,0), unit bivector blade B
GFTSpec cylindrical_ft(int n);                    // F1 = {-x ^ u}, n = 2 only

// named lookup for the CLI; b2_bivector feeds color_image
GFTSpec catalogue(const std::string& name, int n, const std::optional<FactoredBlade>& b = {});

// true when every phase blade lies in the center of G(p,q) (frame-level check)
bool phases_central(const GFTSpec& spec);

}  // namespace gaft
