#include "fragile_cpr/resource.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fragile_cpr {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireUnitInterval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": x=" << x << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// x^e with the conventions needed at x = 0 for e <= 0.
double PowOrLimit(double x, double e) {
  if (x == 0.0) {
    if (e == 0.0) return 1.0;
    if (e < 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return std::pow(x, e);
}

Derivs EvalPower(double gamma, double x) {
  Derivs d;
  d.value = PowOrLimit(x, gamma);
  d.first = gamma * PowOrLimit(x, gamma - 1.0);
  const double c2 = gamma * (gamma - 1.0);
  d.second = c2 == 0.0 ? 0.0 : c2 * PowOrLimit(x, gamma - 2.0);
  return d;
}

Derivs EvalPolynomial(const std::vector<double>& c, double x) {
  // Horner for p, p', p'' simultaneously.
  Derivs d;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d.second = d.second * x + 2.0 * d.first;
    d.first = d.first * x + d.value;
    d.value = d.value * x + *it;
  }
  return d;
}

// rbar = u^alpha with u = r(x) - 1 affine in x.
std::optional<Derivs> ComposeAlpha(double u, double du, double alpha) {
  if (!(u > 0.0)) return std::nullopt;
  Derivs d;
  d.value = std::pow(u, alpha);
  d.first = alpha * std::pow(u, alpha - 1.0) * du;
  d.second = alpha * (alpha - 1.0) * std::pow(u, alpha - 2.0) * du * du;
  return d;
}

}  // namespace

FailureProb FailureProb::Power(double gamma) {
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("power failure: gamma must be finite");
  }
  return FailureProb(PowerFailure{gamma});
}

FailureProb FailureProb::Polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("polynomial failure: coeffs must be non-empty");
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("polynomial failure: non-finite coefficient");
    }
  }
  return FailureProb(PolynomialFailure{std::move(coeffs)});
}

Derivs FailureProb::Eval(double x) const {
  RequireUnitInterval(x, "failure probability");
  return std::visit(
      Overloaded{
          [x](const PowerFailure& f) { return EvalPower(f.gamma, x); },
          [x](const PolynomialFailure& f) { return EvalPolynomial(f.coeffs, x); },
      },
      family_);
}

double FailureProb::ValueClamped(double x) const {
  if (x >= 1.0) return 1.0;
  return Eval(x < 0.0 ? 0.0 : x).value;
}

std::optional<int> FailureProb::PolynomialDegree() const {
  if (const auto* pw = std::get_if<PowerFailure>(&family_)) {
    const double r = std::round(pw->gamma);
    if (r == pw->gamma && r >= 1.0) return static_cast<int>(r);
    return std::nullopt;
  }
  const auto& c = std::get<PolynomialFailure>(family_).coeffs;
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
    if (c[j] != 0.0) return j;
  }
  return 0;
}

bool FailureProb::IsIdentity() const {
  if (const auto* pw = std::get_if<PowerFailure>(&family_)) {
    return pw->gamma == 1.0;
  }
  const auto& c = std::get<PolynomialFailure>(family_).coeffs;
  if (c.size() < 2 || c[0] != 0.0 || c[1] != 1.0) return false;
  for (std::size_t j = 2; j < c.size(); ++j) {
    if (c[j] != 0.0) return false;
  }
  return true;
}

std::optional<double> FailureProb::PowerExponent() const {
  if (const auto* pw = std::get_if<PowerFailure>(&family_)) return pw->gamma;
  return std::nullopt;
}

std::string FailureProb::Describe() const {
  return std::visit(
      Overloaded{
          [](const PowerFailure& f) {
            return "p(x)=x^" + FormatNumber(f.gamma);
          },
          [](const PolynomialFailure& f) {
            std::string s = "p(x)=";
            for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
              if (j > 0) s += "+";
              s += FormatNumber(f.coeffs[j]);
              if (j > 0) s += "x^" + std::to_string(j);
            }
            return s;
          },
      },
      family_);
}

RateOfReturn RateOfReturn::Affine(double c0, double c1) {
  if (!std::isfinite(c0) || !std::isfinite(c1)) {
    throw std::invalid_argument("affine rate: coefficients must be finite");
  }
  return RateOfReturn(AffineRate{c0, c1});
}

RateOfReturn RateOfReturn::Constant(double b) {
  if (!std::isfinite(b)) {
    throw std::invalid_argument("constant rate: b must be finite");
  }
  return RateOfReturn(ConstantRate{b});
}

RateOfReturn RateOfReturn::DirectAffine(double intercept, double slope) {
  if (!std::isfinite(intercept) || !std::isfinite(slope)) {
    throw std::invalid_argument("direct affine rbar: coefficients must be finite");
  }
  return RateOfReturn(DirectAffineRbar{intercept, slope});
}

RateOfReturn RateOfReturn::DirectPowerShift(double c, double e) {
  if (!std::isfinite(c) || !std::isfinite(e)) {
    throw std::invalid_argument("power-shift rbar: parameters must be finite");
  }
  return RateOfReturn(DirectPowerShiftRbar{c, e});
}

std::optional<Derivs> RateOfReturn::EvalRbarExtended(double alpha,
                                                     double x) const {
  return std::visit(
      Overloaded{
          [&](const AffineRate& r) {
            return ComposeAlpha(r.c0 + r.c1 * x - 1.0, r.c1, alpha);
          },
          [&](const ConstantRate& r) { return ComposeAlpha(r.b, 0.0, alpha); },
          [&](const DirectAffineRbar& r) -> std::optional<Derivs> {
            return Derivs{r.intercept + r.slope * x, r.slope, 0.0};
          },
          [&](const DirectPowerShiftRbar& r) -> std::optional<Derivs> {
            const double u = x + r.c;
            if (u < 0.0) return std::nullopt;
            return Derivs{PowOrLimit(u, r.e), r.e * PowOrLimit(u, r.e - 1.0),
                          r.e == 1.0 ? 0.0
                                     : r.e * (r.e - 1.0) *
                                           PowOrLimit(u, r.e - 2.0)};
          },
      },
      family_);
}

Derivs RateOfReturn::EvalRbar(double alpha, double x) const {
  RequireUnitInterval(x, "rate of return");
  auto d = EvalRbarExtended(alpha, x);
  if (!d) {
    std::ostringstream msg;
    msg << "rate of return: rbar undefined at x=" << x
        << " (r(x) > 1 is required)";
    throw std::domain_error(msg.str());
  }
  return *d;
}

Monotonicity RateOfReturn::monotonicity() const {
  return std::visit(
      Overloaded{
          [](const AffineRate& r) {
            return r.c1 < 0.0 ? Monotonicity::kDecreasing
                              : Monotonicity::kIncreasing;
          },
          [](const ConstantRate&) { return Monotonicity::kIncreasing; },
          [](const DirectAffineRbar& r) {
            return r.slope < 0.0 ? Monotonicity::kDecreasing
                                 : Monotonicity::kIncreasing;
          },
          [](const DirectPowerShiftRbar& r) {
            return r.e < 0.0 ? Monotonicity::kDecreasing
                             : Monotonicity::kIncreasing;
          },
      },
      family_);
}

bool RateOfReturn::strictly_decreasing() const {
  return monotonicity() == Monotonicity::kDecreasing;
}

std::string RateOfReturn::Describe() const {
  return std::visit(
      Overloaded{
          [](const AffineRate& r) {
            return "r(x)=" + FormatNumber(r.c0) + (r.c1 < 0 ? "" : "+") +
                   FormatNumber(r.c1) + "x";
          },
          [](const ConstantRate& r) {
            return "r(x)=1+" + FormatNumber(r.b);
          },
          [](const DirectAffineRbar& r) {
            return "rbar(x)=" + FormatNumber(r.intercept) +
                   (r.slope < 0 ? "" : "+") + FormatNumber(r.slope) + "x";
          },
          [](const DirectPowerShiftRbar& r) {
            return "rbar(x)=(x+" + FormatNumber(r.c) + ")^" + FormatNumber(r.e);
          },
      },
      family_);
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ValidationReport::FailureSummary() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    out += c.name + ": " + c.message + "\n";
  }
  return out;
}

namespace {

// r(x) itself for the r-mode families, defined even where r - 1 <= 0.
double PlainRate(const RateOfReturn& rate, double x) {
  if (const auto* a = std::get_if<AffineRate>(&rate.family())) return a->c0 + a->c1 * x;
  if (const auto* c = std::get_if<ConstantRate>(&rate.family())) return 1.0 + c->b;
  return std::numeric_limits<double>::quiet_NaN();
}

void Fail(ValidationCheck& check, double x, const std::string& message) {
  if (!check.passed) return;
  check.passed = false;
  check.first_violation = x;
  check.message = message;
}

}  // namespace

ValidationReport ValidateAssumptions(const RateOfReturn& rate,
                                     const FailureProb& failure, int grid_n) {
  if (grid_n < 1) grid_n = kDefaultValidationGrid;
  ValidationReport report;

  ValidationCheck family{"p_family", true, std::nullopt, ""};
  if (auto gamma = failure.PowerExponent()) {
    if (*gamma < 1.0) {
      family.passed = false;
      family.message = "power exponent gamma=" + FormatNumber(*gamma) +
                       " must be >= 1 for convexity";
    }
  } else {
    const auto& c = std::get<PolynomialFailure>(failure.family()).coeffs;
    bool any_positive_degree = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] < 0.0) {
        family.passed = false;
        family.message = "coefficient of x^" + std::to_string(j) + " is " +
                         FormatNumber(c[j]) + "; all must be >= 0";
        break;
      }
      if (j > 0 && c[j] > 0.0) any_positive_degree = true;
    }
    if (family.passed && !any_positive_degree) {
      family.passed = false;
      family.message = "needs a positive coefficient of positive degree";
    }
  }
  report.checks.push_back(family);

  ValidationCheck one{"p_one", true, std::nullopt, ""};
  const double p1 = failure.Eval(1.0).value;
  if (std::abs(p1 - 1.0) > kValidationTol) {
    Fail(one, 1.0,
         "p(1)=" + FormatNumber(p1) + " but p(1)=1 is required");
  }
  report.checks.push_back(one);

  ValidationCheck increasing{"p_strictly_increasing", true, std::nullopt, ""};
  ValidationCheck convex{"p_convex", true, std::nullopt, ""};
  for (int i = 1; i < grid_n; ++i) {
    const double x = static_cast<double>(i) / grid_n;
    const Derivs d = failure.Eval(x);
    if (!(d.first > 0.0)) {
      Fail(increasing, x, "p'(" + FormatNumber(x) + ")=" +
                              FormatNumber(d.first) + " is not positive");
    }
    if (d.second < -kValidationTol) {
      Fail(convex, x, "p''(" + FormatNumber(x) + ")=" +
                          FormatNumber(d.second) + " is negative");
    }
  }
  report.checks.push_back(increasing);
  report.checks.push_back(convex);

  // In r-mode the conditions on r - 1 carry over to (r - 1)^alpha for every
  // alpha in (0, 1], so checking alpha = 1 suffices.
  const bool direct = rate.direct_mode();
  ValidationCheck positive{"rbar_positive", true, std::nullopt, ""};
  ValidationCheck monotone{"rbar_monotone", true, std::nullopt, ""};
  ValidationCheck concave{"rbar_concave", true, std::nullopt, ""};
  bool seen_up = false;
  bool seen_down = false;
  for (int i = 0; i <= grid_n; ++i) {
    const double x = static_cast<double>(i) / grid_n;
    const auto d = rate.EvalRbarExtended(1.0, x);
    if (!d || !(d->value > 0.0)) {
      const double shown = direct ? (d ? d->value : std::numeric_limits<double>::quiet_NaN())
                                  : PlainRate(rate, x);
      Fail(positive, x,
           direct ? "rbar(" + FormatNumber(x) + ")=" + FormatNumber(shown) +
                        " but rbar > 0 is required on [0,1]"
                  : "r(" + FormatNumber(x) + ")=" + FormatNumber(shown) +
                        " but r(x) > 1 is required on [0,1]");
      continue;
    }
    if (d->first > kValidationTol) seen_up = true;
    if (d->first < -kValidationTol) seen_down = true;
    if (seen_up && seen_down) {
      Fail(monotone, x, "slope changes sign at x=" + FormatNumber(x));
    }
    if (d->second > kValidationTol) {
      Fail(concave, x, "second derivative " + FormatNumber(d->second) +
                           " > 0 at x=" + FormatNumber(x));
    }
  }
  report.checks.push_back(positive);
  report.checks.push_back(monotone);
  report.checks.push_back(concave);
  return report;
}

}  // namespace fragile_cpr
