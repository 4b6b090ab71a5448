#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "rohull/error.hpp"

namespace rohull {

enum class Mode { exact, floating };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// A real number held either as a reduced GMP rational or as a binary64
/// float. Arithmetic between the two representations throws ModeError.
class Scalar {
 public:
  Scalar() : rep_(mpq_class(0)) {}
  Scalar(int n) : rep_(mpq_class(n)) {}   // NOLINT: exact integer literal
  Scalar(long n) : rep_(mpq_class(n)) {}  // NOLINT
  explicit Scalar(mpq_class q);

  static Scalar from_double(double v) { return Scalar(FloatTag{}, v); }
  static Scalar ratio(long num, long den);
  /// Integer `n` in the given mode.
  static Scalar of(Mode mode, long n);
  /// Converts `v` to `mode`; doubles become their exact binary value.
  static Scalar convert(const Scalar& v, Mode mode);

  /// Parses "p/q", integers and decimal literals ("0.001", "1e-3").
  /// Exact mode keeps decimals exact (0.001 -> 1/1000).
  static Scalar parse(std::string_view text, Mode mode);

  Mode mode() const { return rep_.index() == 0 ? Mode::exact : Mode::floating; }
  bool is_exact() const { return rep_.index() == 0; }

  const mpq_class& rational() const;
  double to_double() const;
  /// "p/q" (or "p" when integral) in exact mode, shortest round-trip
  /// decimal in float mode.
  std::string to_string() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

 private:
  struct FloatTag {};
  Scalar(FloatTag, double v) : rep_(v) {}
  void require_same_mode(const Scalar& o, const char* op) const;

  std::variant<mpq_class, double> rep_;
};

/// Exact square root when the value is the square of a rational.
std::optional<Scalar> exact_sqrt(const Scalar& v);
/// Float mode: std::sqrt. Exact mode: perfect squares only, throws otherwise.
Scalar sqrt(const Scalar& v);

inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Scalar `n` in the mode of `ref`.
inline Scalar like(const Scalar& ref, long n) { return Scalar::of(ref.mode(), n); }

/// Shortest decimal that round-trips to `v`.
std::string format_double(double v);

}  // namespace rohull
