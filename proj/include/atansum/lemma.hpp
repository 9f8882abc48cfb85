// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "atansum/error.hpp"
#include "atansum/exact_scalar.hpp"
#include "atansum/sequences.hpp"

namespace atansum {

/// L1: products of arctangents, differences.
/// LP: products of squared arctangents.
/// L2_EVEN / L2_ODD: alternating products, q even / q odd.
/// LPALT: alternating squared products with index step 2q.
enum class LemmaVariant { L1, LP, L2_EVEN, L2_ODD, LPALT };

inline std::string_view to_string(LemmaVariant v) {
  switch (v) {
    case LemmaVariant::L1: return "L1";
    case LemmaVariant::LP: return "LP";
    case LemmaVariant::L2_EVEN: return "L2_EVEN";
    case LemmaVariant::L2_ODD: return "L2_ODD";
    case LemmaVariant::LPALT: return "LPALT";
  }
  return "?";
}

inline std::optional<LemmaVariant> parse_variant(std::string_view s) {
  if (s == "L1") return LemmaVariant::L1;
  if (s == "LP") return LemmaVariant::LP;
  if (s == "L2_EVEN") return LemmaVariant::L2_EVEN;
  if (s == "L2_ODD") return LemmaVariant::L2_ODD;
  if (s == "LPALT") return LemmaVariant::LPALT;
  return std::nullopt;
}

struct LemmaConfig {
  LemmaVariant variant = LemmaVariant::L1;
  SequenceSpec f;
  ExactScalar alpha = 1;
  unsigned m = 1;
  unsigned q = 1;

  LemmaConfig() = default;
  LemmaConfig(LemmaVariant v, SequenceSpec seq, ExactScalar a, unsigned m_, unsigned q_)
      : variant(v), f(std::move(seq)), alpha(std::move(a)), m(m_), q(q_) {
    validate();
  }

  void validate() const {
    if (m < 1) throw Error(ErrorCode::ConstraintViolation, "m must be >= 1");
    if (q < 1) throw Error(ErrorCode::ConstraintViolation, "q must be >= 1");
    if (variant == LemmaVariant::L2_EVEN && q % 2 != 0)
      throw Error(ErrorCode::ConstraintViolation, "L2_EVEN requires q even");
    if (variant == LemmaVariant::L2_ODD && q % 2 != 1)
      throw Error(ErrorCode::ConstraintViolation, "L2_ODD requires q odd");
  }

  friend bool operator==(const LemmaConfig&, const LemmaConfig&) = default;

  bool alternating() const {
    return variant == LemmaVariant::L2_EVEN || variant == LemmaVariant::L2_ODD || variant == LemmaVariant::LPALT;
  }
  bool squared() const { return variant == LemmaVariant::LP || variant == LemmaVariant::LPALT; }
  /// True when some slot combines two arctangents with the sum formula.
  bool uses_add() const { return squared() || variant == LemmaVariant::L2_ODD; }

  /// Distance between consecutive factors of one boundary product.
  long jstep() const { return variant == LemmaVariant::LPALT ? 2L * q : q; }
  /// term_k = S(k) - S(k + stride)
  long stride() const { return jstep(); }
  /// Offset between the two sequence values in the main argument.
  long span() const { return static_cast<long>(m) * jstep(); }
  /// Number of arctangent factors in one term.
  unsigned factor_count() const { return squared() ? 2 * m : m; }

  std::string str() const {
    return std::string(to_string(variant)) + "(f=" + f.str() + ", alpha=" + alpha.str() + ", m=" + std::to_string(m) +
           ", q=" + std::to_string(q) + ")";
  }
};

}  // namespace atansum
