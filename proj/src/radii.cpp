#include "momdist/radii.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace momdist {

double lambert_w0(double z) {
  if (std::isnan(z) || z < 0.0) throw Error("lambert_w0: argument out of domain");
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return z;
  if (z > 1e300) return lambert_w0_exp(std::log(z));
  double w = std::log1p(z);
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double lambert_w0_exp(double log_z) {
  if (std::isnan(log_z)) throw Error("lambert_w0: argument out of domain");
  if (log_z < 600.0) return lambert_w0(std::exp(log_z));
  // Newton on w + log(w) = log_z, where w > 1.
  double w = log_z - std::log(log_z);
  for (int it = 0; it < 100; ++it) {
    const double step = (w + std::log(w) - log_z) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  return w;
}

void StandardCondition::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("standard condition requires a > 0 and b > 0");
}

namespace {

void side_condition(const ConstraintPolicy& policy, const std::string& message) {
  if (policy.strict) throw Error(message);
  if (policy.warnings) policy.warnings->push_back(message);
}

void check_blocks(double n, double q, double m) {
  if (!(q > 2.0 * m)) throw Error("pigeonhole violated: need Q > 2m");
  if (!(q < n)) throw Error("constraint violated: need Q < n");
  if (!(m >= 0.0)) throw Error("constraint violated: need m >= 0");
}

void check_delta(double delta, const char* name) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(std::string("constraint violated: need 0 < ") + name + " < 1");
}

}  // namespace

double radius_g(double n, double q, double m, double delta, const StandardCondition& ab, ConstraintPolicy policy) {
  ab.validate();
  check_blocks(n, q, m);
  check_delta(delta, "delta");
  if (!(std::log(delta) < -(1.0 + ab.b) * q)) {
    std::ostringstream os;
    os << "radius_g: delta = " << delta << " does not satisfy delta < exp(-(1+b)Q)";
    side_condition(policy, os.str());
  }
  const double inside = q * std::log(n / q) / (ab.a * n) + 4.0 * q * std::log(1.0 / delta) / (ab.a * (q - 2.0 * m) * n);
  return std::pow(inside, 1.0 / ab.b);
}

double radius_f(double n, double m, double q, double delta1, double delta2, const StandardCondition& ab,
                ConstraintPolicy policy) {
  ab.validate();
  check_blocks(n, q, m);
  check_delta(delta1, "delta1");
  check_delta(delta2, "delta2");
  if (!(delta1 + delta2 < 1.0)) throw Error("constraint violated: need delta1 + delta2 < 1");
  if (!(std::log(delta1) <= -(1.0 + ab.b) * q)) {
    std::ostringstream os;
    os << "radius_f: delta1 = " << delta1 << " does not satisfy delta1 <= exp(-(1+b)Q)";
    side_condition(policy, os.str());
  }
  const double first = q * std::log(n / q) / (ab.a * (n / q)) + 4.0 * q * std::log(1.0 / delta1) / (ab.a * (q - 2.0 * m) * n);
  const double inl = n - m;
  const double second = std::log(inl) / (ab.a * inl) + 4.0 * std::log(1.0 / delta2) / (ab.a * inl);
  return std::pow(first, 1.0 / ab.b) + std::pow(second, 1.0 / ab.b);
}

double radius_h(double n, double m, double delta, double m_max, const StandardCondition& ab) {
  ab.validate();
  check_delta(delta, "delta");
  if (!(m >= 0.0) || !(n - m > 0.0)) throw Error("constraint violated: need 0 <= m < n");
  const double delta_max = delta - std::exp(-(1.0 + ab.b) * (2.0 * m_max + 1.0));
  if (!(delta_max > 0.0)) throw Error("delta too small for m_max");
  const double k = 2.0 * m + 1.0;
  const double w1 = lambert_w0_exp(std::log(n / k) + 4.0 * (1.0 + ab.b) * (2.0 * m_max + 1.0));
  const double w2 = lambert_w0_exp(std::log(n - m) + 4.0 * std::log(1.0 / delta_max));
  return 2.0 * std::pow(k / (ab.a * n) * w1, 1.0 / ab.b) + std::pow(w2 / (ab.a * (n - m)), 1.0 / ab.b);
}

double radius_p(double n, double m, double delta, const StandardCondition& ab) {
  ab.validate();
  check_delta(delta, "delta");
  if (!(m >= 0.0)) throw Error("constraint violated: need m >= 0");
  const double k = 2.0 * m + 1.0;
  const double w = lambert_w0_exp(std::log(n / k) + (1.0 + ab.b) * std::log(1.0 / delta));
  return std::pow(k / (ab.a * n) * w, 1.0 / ab.b);
}

}  // namespace momdist
