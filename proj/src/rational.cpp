#include "latspec/rational.hpp"

#include <ostream>

namespace latspec {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace latspec
