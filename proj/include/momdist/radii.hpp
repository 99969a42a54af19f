#pragma once

#include <string>
#include <vector>

#include "momdist/common.hpp"

namespace momdist {

/// Principal branch W0 on [0, inf): w * exp(w) = z. Halley iteration from
/// log(1 + z).
double lambert_w0(double z);

/// W0(exp(log_z)) without forming exp(log_z), for arguments far beyond the
/// double range.
double lambert_w0_exp(double log_z);

/// (a, b)-standard condition P(B(x, r)) >= min(1, a r^b).
struct StandardCondition {
  double a = 1.0;
  double b = 1.0;
  void validate() const;
};

/// How the confidence-level side conditions are enforced. The structural
/// conditions (2m < Q < n, 0 < delta < 1) always throw.
struct ConstraintPolicy {
  bool strict = false;                     // throw instead of warning
  std::vector<std::string>* warnings = nullptr;  // receives warnings when not strict
};

/// Sublevel confidence radius
///   g = (Q log(n/Q) / (a n) + 4 Q log(1/delta) / (a (Q - 2m) n))^(1/b).
/// Side condition: delta < exp(-(1 + b) Q).
double radius_g(double n, double num_blocks, double m, double delta, const StandardCondition& ab,
                ConstraintPolicy policy = {});

/// Weighted-filtration radius
///   f = (Q log(n/Q) / (a n/Q) + 4 Q log(1/d1) / (a (Q - 2m) n))^(1/b)
///     + (log(n - m) / (a (n - m)) + 4 log(1/d2) / (a (n - m)))^(1/b).
/// The first denominator is a * (n / Q), unlike radius_g's a * n.
/// Side condition: d1 <= exp(-(1 + b) Q).
double radius_f(double n, double m, double num_blocks, double delta1, double delta2,
                const StandardCondition& ab, ConstraintPolicy policy = {});

/// Lepski radius for the weighted pipeline
///   h = 2 ((2m+1)/(a n) W(n e^{4(1+b)(2 m_max + 1)} / (2m+1)))^(1/b)
///     + (1/(a (n - m)) W((n - m) e^{4 log(1/delta_max)}))^(1/b),
/// with delta_max = delta - exp(-(1+b)(2 m_max + 1)) which must be positive.
double radius_h(double n, double m, double delta, double m_max, const StandardCondition& ab);

/// Lepski radius for the sublevel pipeline
///   p = ((2m+1)/(a n) W(n e^{(1+b) log(1/delta)} / (2m+1)))^(1/b).
double radius_p(double n, double m, double delta, const StandardCondition& ab);

}  // namespace momdist
