#ifndef FRAGILE_CPR_RESOURCE_H_
#define FRAGILE_CPR_RESOURCE_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fragile_cpr {

// Value of a function together with its first two derivatives at a point.
struct Derivs {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

// Tolerance for the structural equality checks of the resource validator.
inline constexpr double kValidationTol = 1e-9;
inline constexpr int kDefaultValidationGrid = 1000;

// p(x) = x^gamma.
struct PowerFailure {
  double gamma = 1.0;
};

// p(x) = sum_j coeffs[j] * x^j.
struct PolynomialFailure {
  std::vector<double> coeffs;
};

// Failure probability of the resource as a function of total investment.
// Defined on [0, 1]; CPR failure is certain for x >= 1.
class FailureProb {
 public:
  static FailureProb Power(double gamma);
  static FailureProb Polynomial(std::vector<double> coeffs);

  // Analytic value and derivatives. Throws std::domain_error outside [0, 1].
  Derivs Eval(double x) const;
  // p(x) with p = 1 for x >= 1 and p = p(0) for x < 0.
  double ValueClamped(double x) const;

  bool is_power() const {
    return std::holds_alternative<PowerFailure>(family_);
  }
  bool is_polynomial() const {
    return std::holds_alternative<PolynomialFailure>(family_);
  }
  // Degree of a polynomial p, or gamma when p = x^gamma with integral gamma.
  std::optional<int> PolynomialDegree() const;
  // True when p(x) = x (either family).
  bool IsIdentity() const;
  // Exponent gamma for Power, nullopt otherwise.
  std::optional<double> PowerExponent() const;

  const std::variant<PowerFailure, PolynomialFailure>& family() const {
    return family_;
  }
  std::string Describe() const;

 private:
  explicit FailureProb(std::variant<PowerFailure, PolynomialFailure> family)
      : family_(std::move(family)) {}

  std::variant<PowerFailure, PolynomialFailure> family_;
};

// r(x) = c0 + c1 * x.
struct AffineRate {
  double c0 = 2.0;
  double c1 = 0.0;
};

// r(x) = 1 + b.
struct ConstantRate {
  double b = 1.0;
};

// rbar(x) = intercept + slope * x given directly.
struct DirectAffineRbar {
  double intercept = 1.0;
  double slope = 0.0;
};

// rbar(x) = (x + c)^e given directly.
struct DirectPowerShiftRbar {
  double c = 0.0;
  double e = 1.0;
};

enum class Monotonicity { kDecreasing, kIncreasing };

// Rate of return of the CPR. In r-mode (AffineRate, ConstantRate) the
// player-specific return is rbar(x) = (r(x) - 1)^alpha; in direct mode the
// rbar family is stored as is and alpha does not enter its value.
class RateOfReturn {
 public:
  using Family = std::variant<AffineRate, ConstantRate, DirectAffineRbar,
                              DirectPowerShiftRbar>;

  static RateOfReturn Affine(double c0, double c1);
  static RateOfReturn Constant(double b);
  static RateOfReturn DirectAffine(double intercept, double slope);
  static RateOfReturn DirectPowerShift(double c, double e);

  bool direct_mode() const {
    return std::holds_alternative<DirectAffineRbar>(family_) ||
           std::holds_alternative<DirectPowerShiftRbar>(family_);
  }

  // rbar and its derivatives on [0, 1]. Throws std::domain_error outside the
  // interval or where r(x) <= 1 in r-mode.
  Derivs EvalRbar(double alpha, double x) const;
  // rbar on [0, inf); nullopt where the family is undefined (r(x) <= 1, or
  // x + c < 0 for the power-shift family).
  std::optional<Derivs> EvalRbarExtended(double alpha, double x) const;

  // Sign of the slope. Constant returns count as increasing.
  Monotonicity monotonicity() const;
  bool strictly_decreasing() const;

  const Family& family() const { return family_; }
  std::string Describe() const;

 private:
  explicit RateOfReturn(Family family) : family_(family) {}

  Family family_;
};

struct Resource {
  RateOfReturn rate;
  FailureProb failure;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::optional<double> first_violation;  // grid point, if any
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  // Human-readable list of failed checks, one per line.
  std::string FailureSummary() const;
};

// Checks the structural assumptions on (r, p) on a uniform grid of grid_n
// points in [0, 1). Never throws for well-formed input; failures are
// reported.
ValidationReport ValidateAssumptions(const RateOfReturn& rate,
                                     const FailureProb& failure,
                                     int grid_n = kDefaultValidationGrid);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_RESOURCE_H_
