#include "risfox/mellin_variable.hpp"

#include <cmath>

#include "risfox/error.hpp"

namespace risfox::cascade {

MellinVariable::MellinVariable() : MellinVariable([](cplx) { return cplx(0.0); }, Strip{}, DominantPole{}, "one") {}

MellinVariable::MellinVariable(LogMoment log_moment, Strip strip, DominantPole pole, std::string name)
    : f_(std::make_shared<const LogMoment>(std::move(log_moment))), strip_(strip), pole_(pole), name_(std::move(name)) {}

cplx MellinVariable::log_moment(cplx s) const { return (*f_)(s); }

double MellinVariable::moment(double s) const {
  if (!strip_.contains(s))
    throw StripError("moment of order " + std::to_string(s) + " outside the convergence strip (" +
                     std::to_string(strip_.lo) + ", " + std::to_string(strip_.hi) + ")" +
                     (name_.empty() ? "" : " of " + name_));
  return std::exp(log_moment(cplx(s, 0.0)).real());
}

MellinVariable MellinVariable::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("MellinVariable::scaled needs a positive factor");
  const double lc = std::log(c);
  auto f = f_;
  DominantPole p = pole_;
  if (p.finite()) p.coefficient *= std::exp(-p.location * lc);
  return {[f, lc](cplx s) { return (*f)(s) + s * lc; }, strip_, p, name_};
}

MellinVariable MellinVariable::power(double rho) const {
  if (!(rho > 0.0)) throw DomainError("MellinVariable::power needs a positive exponent");
  auto f = f_;
  DominantPole p = pole_;
  if (p.finite()) {
    p.location /= rho;
    p.coefficient *= std::pow(rho, -p.order);
  }
  return {[f, rho](cplx s) { return (*f)(rho * s); }, Strip{strip_.lo / rho, strip_.hi / rho}, p, name_};
}

MellinVariable MellinVariable::constant(double c) { return MellinVariable().scaled(c); }

MellinVariable MellinVariable::product(const std::vector<MellinVariable>& factors, std::string name) {
  Strip strip;
  double loc = std::numeric_limits<double>::infinity();
  for (const auto& v : factors) {
    strip = specfun::intersect(strip, v.strip());
    if (v.pole().finite()) loc = std::min(loc, v.pole().location);
  }
  DominantPole pole;
  if (loc < std::numeric_limits<double>::infinity()) {
    pole.location = loc;
    pole.coefficient = 1.0;
    for (const auto& v : factors) {
      const auto& p = v.pole();
      if (p.finite() && std::abs(p.location - loc) <= 1e-12 * std::max(1.0, loc)) {
        pole.order += p.order;
        pole.coefficient *= p.coefficient;
      } else {
        pole.coefficient *= std::exp(v.log_moment(cplx(-loc, 0.0)).real());
      }
    }
  }
  std::vector<std::shared_ptr<const LogMoment>> fs;
  for (const auto& v : factors) fs.push_back(v.f_);
  return {[fs](cplx s) {
            cplx acc = 0.0;
            for (const auto& f : fs) acc += (*f)(s);
            return acc;
          },
          strip, pole, std::move(name)};
}

}  // namespace risfox::cascade
