#include "odt/step_function.hpp"

#include <algorithm>

#include "odt/error.hpp"

namespace odt {

StepFunction StepFunction::from_samples(std::vector<std::pair<double, double>> samples) {
  std::sort(samples.begin(), samples.end());
  StepFunction f;
  for (const auto& [value, mass] : samples) {
    if (value < 0.0) throw Error("STATE-ERROR", "step function samples must be nonnegative");
    if (!f.breakpoints_.empty() && f.breakpoints_.back() == value) {
      f.suffix_mass_.back() += mass;
    } else {
      f.breakpoints_.push_back(value);
      f.suffix_mass_.push_back(mass);
    }
  }
  // Turn per-breakpoint masses into suffix sums.
  for (int i = static_cast<int>(f.suffix_mass_.size()) - 2; i >= 0; --i)
    f.suffix_mass_[i] += f.suffix_mass_[i + 1];
  return f;
}

double StepFunction::value(double t) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return suffix_mass_[it - breakpoints_.begin()];
}

double StepFunction::integral() const {
  double area = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    area += (breakpoints_[i] - previous) * suffix_mass_[i];
    previous = breakpoints_[i];
  }
  return area;
}

}  // namespace odt
