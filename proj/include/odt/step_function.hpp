#ifndef ODT_STEP_FUNCTION_HPP
#define ODT_STEP_FUNCTION_HPP

#include <utility>
#include <vector>

namespace odt {

/// Right-tail step function of a finite weighted sample: value(t) is the
/// total mass with sample value >= t. Nonincreasing, left-continuous at the
/// breakpoints (the ">=" convention), value(0) is the whole mass and the
/// function is 0 past the largest sample.
class StepFunction {
 public:
  StepFunction() = default;

  /// Builds from (value, mass) pairs; values must be >= 0.
  static StepFunction from_samples(std::vector<std::pair<double, double>> samples);

  double value(double t) const;

  /// Integral over (0, infinity), summed segment by segment:
  /// sum_i (b_i - b_(i-1)) * level on that segment. This is geometry, not
  /// the weighted mean, so it can cross-check expected values.
  double integral() const;

  /// Distinct sample values, ascending.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  /// Mass at or above breakpoint i; equals value(t) on (b_(i-1), b_i].
  double level(int i) const { return suffix_mass_[i]; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> suffix_mass_;
};

}  // namespace odt

#endif  // ODT_STEP_FUNCTION_HPP
