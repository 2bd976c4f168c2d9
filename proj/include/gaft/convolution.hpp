#pragma once

#include <string>
#include <vector>

#include "gaft/transforms.hpp"

namespace gaft {

// linear convolution, C's value multiplies from the left
SampledField convolve(const SampledField& c, const SampledField& b);

// V1 is the theorem's displayed form; V2-V4 the three alternates built around
// C, V5-V8 the counterparts restructured around B.
enum class VariantId { V1, V2, V3, V4, V5, V6, V7, V8 };

std::vector<VariantId> all_variants();
std::string to_string(VariantId v);
VariantId variant_from_string(const std::string& s);

struct TheoremOptions {
  // negative control: flip the sign of this term of the sum (-1 = none)
  long negate_term = -1;
};

struct TheoremStats {
  long terms_total = 0;
  long terms_pruned = 0;
};

// Right-hand side of the convolution theorem in the requested variant,
// evaluated per frequency. Phases must be flagged coorthogonal, separable
// and linear in x.
std::vector<Multivector> theorem_rhs(const SampledField& c, const SampledField& b,
                                     const GFTSpec& spec, VariantId variant,
                                     const FrequencySet& freqs,
                                     const TheoremOptions& opts = {},
                                     TheoremStats* stats = nullptr);

enum class CorollarySide { AroundC, AroundB };

// Two-index reduced sum for specs whose F1 and F2 are each internally
// commutative (cross commutativity not needed).
std::vector<Multivector> corollary_rhs(const SampledField& c, const SampledField& b,
                                       const GFTSpec& spec, CorollarySide side,
                                       const FrequencySet& freqs);

// F(C) F(B), valid when every phase blade is central
std::vector<Multivector> simple_product_rhs(const SampledField& c, const SampledField& b,
                                            const GFTSpec& spec, const FrequencySet& freqs);

struct VariantRow {
  Vec u;
  double max_dev = 0.0;
};

struct VariantReport {
  VariantId variant = VariantId::V1;
  std::vector<VariantRow> per_u;
  long terms_total = 0;
  long terms_pruned = 0;
  double runtime_ms = 0.0;  // not serialized: reports must be byte-stable
  double max_dev = 0.0;
  bool pass = true;
};

struct ConvolutionReport {
  std::string spec_name;
  double tol = 1e-9;
  std::vector<VariantReport> variants;
  bool pass = true;
};

// LHS = gft(convolve(C,B)) against every requested variant RHS
ConvolutionReport verify(const SampledField& c, const SampledField& b, const GFTSpec& spec,
                         const std::vector<VariantId>& variants, const FrequencySet& freqs,
                         double tol);

}  // namespace gaft
