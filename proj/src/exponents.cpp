#include "entroweight/exponents.hpp"

#include <sstream>

namespace ew {

std::string EpsilonSpec::str() const {
  std::ostringstream os;
  if (family == Family::Power)
    os << c << "*t^" << s;
  else
    os << c << "*(1+log t)^" << s;
  return os.str();
}

bool epsilon_check(const EpsilonSpec& eps, double r) {
  if (r <= 0) throw std::invalid_argument("epsilon_check: r must be positive");
  if (eps.c <= 0 || eps.s < 0) throw std::invalid_argument("epsilon_check: invalid parameters");
  if (eps.family == EpsilonSpec::Family::Power) return eps.s > 0;
  return eps.s * r > 1.0;
}

}  // namespace ew
