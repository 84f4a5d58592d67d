#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>

namespace ptorus {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// A point of the Riemann sphere: a finite complex number or ∞.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(Complex z) : value_(z) {}  // NOLINT: implicit by design of the sphere

  static ExtComplex infinity() {
    ExtComplex e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  /// Finite value; meaningless when is_infinite().
  Complex value() const { return value_; }

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

/// SL(2,C) lift of a PSL(2,C) element, entries row-major:
///
///     [ a  b ]
///     [ c  d ]
///
/// The determinant is expected to be 1 up to round-off; it is never
/// silently renormalized. PSL comparison goes through psl_distance().
struct UnitDetMatrix {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static UnitDetMatrix identity() { return {}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }
  bool is_finite() const;

  UnitDetMatrix operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const UnitDetMatrix&, const UnitDetMatrix&) = default;
};

UnitDetMatrix compose(const UnitDetMatrix& m, const UnitDetMatrix& n);
UnitDetMatrix inverse(const UnitDetMatrix& m);

/// m^k by binary exponentiation; negative k goes through inverse(m).
UnitDetMatrix power(const UnitDetMatrix& m, std::int64_t k);

/// m n m⁻¹ n⁻¹.
UnitDetMatrix commutator(const UnitDetMatrix& m, const UnitDetMatrix& n);

/// Entrywise max-modulus norm.
double max_norm(const UnitDetMatrix& m);

/// min(‖m − n‖_max, ‖m + n‖_max): distance in PSL(2,C) between the classes of m and n.
double psl_distance(const UnitDetMatrix& m, const UnitDetMatrix& n);

inline UnitDetMatrix operator*(const UnitDetMatrix& m, const UnitDetMatrix& n) { return compose(m, n); }

std::ostream& operator<<(std::ostream& os, const UnitDetMatrix& m);

}  // namespace ptorus
