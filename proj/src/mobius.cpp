#include "ptorus/mobius.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

namespace ptorus {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

UnitDetMatrix sub(const UnitDetMatrix& m, const UnitDetMatrix& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}

UnitDetMatrix add(const UnitDetMatrix& m, const UnitDetMatrix& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}

}  // namespace

bool UnitDetMatrix::is_finite() const { return finite(a) && finite(b) && finite(c) && finite(d); }

UnitDetMatrix compose(const UnitDetMatrix& m, const UnitDetMatrix& n) {
  return {
      m.a * n.a + m.b * n.c,
      m.a * n.b + m.b * n.d,
      m.c * n.a + m.d * n.c,
      m.c * n.b + m.d * n.d,
  };
}

UnitDetMatrix inverse(const UnitDetMatrix& m) { return {m.d, -m.b, -m.c, m.a}; }

UnitDetMatrix power(const UnitDetMatrix& m, std::int64_t k) {
  assert(k <= (std::int64_t{1} << 31) && k >= -(std::int64_t{1} << 31));
  UnitDetMatrix base = k < 0 ? inverse(m) : m;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  UnitDetMatrix result = UnitDetMatrix::identity();
  while (e != 0) {
    if (e & 1U) result = compose(result, base);
    e >>= 1U;
    if (e != 0) base = compose(base, base);
  }
  return result;
}

UnitDetMatrix commutator(const UnitDetMatrix& m, const UnitDetMatrix& n) {
  return compose(compose(m, n), compose(inverse(m), inverse(n)));
}

double max_norm(const UnitDetMatrix& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

double psl_distance(const UnitDetMatrix& m, const UnitDetMatrix& n) {
  return std::min(max_norm(sub(m, n)), max_norm(add(m, n)));
}

std::ostream& operator<<(std::ostream& os, const UnitDetMatrix& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

}  // namespace ptorus
