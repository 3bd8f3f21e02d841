#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "risfox/contour.hpp"

namespace risfox::cascade {

using specfun::cplx;
using specfun::Strip;

// Leading singularity of E[X^{-u}] on the positive u axis:
// E[X^{-u}] ~ coefficient / (location - u)^order as u -> location from below.
struct DominantPole {
  double location = std::numeric_limits<double>::infinity();
  int order = 0;
  double coefficient = 0.0;

  bool finite() const noexcept { return order > 0 && location < std::numeric_limits<double>::infinity(); }
};

// A positive random variable described by its Mellin transform s -> E[X^s].
class MellinVariable {
 public:
  using LogMoment = std::function<cplx(cplx)>;

  MellinVariable();
  MellinVariable(LogMoment log_moment, Strip strip, DominantPole pole, std::string name = {});

  cplx log_moment(cplx s) const;  // log E[X^s]
  double moment(double s) const;  // E[X^s]; throws StripError outside the strip
  const Strip& strip() const noexcept { return strip_; }
  const DominantPole& pole() const noexcept { return pole_; }
  const std::string& name() const noexcept { return name_; }

  MellinVariable scaled(double c) const;    // c X
  MellinVariable power(double rho) const;   // X^rho, rho > 0

  static MellinVariable constant(double c);
  static MellinVariable product(const std::vector<MellinVariable>& factors, std::string name = {});

 private:
  std::shared_ptr<const LogMoment> f_;
  Strip strip_;
  DominantPole pole_;
  std::string name_;
};

}  // namespace risfox::cascade
