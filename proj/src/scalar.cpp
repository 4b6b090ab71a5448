#include "rohull/scalar.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace rohull {

std::string_view to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float") return Mode::floating;
  throw Error("unknown arithmetic mode '" + std::string(text) + "'");
}

Scalar::Scalar(mpq_class q) : rep_(std::move(q)) {
  auto& r = std::get<mpq_class>(rep_);
  if (r.get_den() == 0) throw Error("zero denominator");
  r.canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::of(Mode mode, long n) {
  return mode == Mode::exact ? Scalar(n) : from_double(static_cast<double>(n));
}

Scalar Scalar::convert(const Scalar& v, Mode mode) {
  if (v.mode() == mode) return v;
  if (mode == Mode::floating) return from_double(v.to_double());
  double d = std::get<double>(v.rep_);
  if (!std::isfinite(d)) throw Error("cannot convert non-finite float to exact");
  return Scalar(mpq_class(d));
}

namespace {

mpz_class parse_integer(std::string_view digits) {
  if (digits.empty()) return 0;
  return mpz_class(std::string(digits), 10);
}

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Exact value of a decimal literal: [sign] digits [. digits] [e [sign] digits].
std::optional<mpq_class> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (exp_part.empty() || !all_digits(exp_part) || exp_part.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s, frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part))
    return std::nullopt;
  mpz_class mantissa = parse_integer(std::string(int_part) + std::string(frac_part));
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class value = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Scalar Scalar::parse(std::string_view text, Mode mode) {
  auto fail = [&]() -> Scalar { throw Error("cannot parse number '" + std::string(text) + "'"); };
  if (text.empty()) return fail();
  auto slash = text.find('/');
  if (mode == Mode::exact) {
    if (slash == std::string_view::npos) {
      auto q = parse_decimal(text);
      return q ? Scalar(*q) : fail();
    }
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den) return fail();
    if (*den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Scalar(mpq_class(*num / *den));
  }
  if (slash == std::string_view::npos) {
    auto d = parse_double(text);
    return d ? from_double(*d) : fail();
  }
  auto num = parse_double(text.substr(0, slash));
  auto den = parse_double(text.substr(slash + 1));
  if (!num || !den) return fail();
  if (*den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return from_double(*num / *den);
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw ModeError("rational() called on a float scalar");
  return std::get<mpq_class>(rep_);
}

double Scalar::to_double() const {
  return is_exact() ? std::get<mpq_class>(rep_).get_d() : std::get<double>(rep_);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string Scalar::to_string() const {
  if (!is_exact()) return format_double(std::get<double>(rep_));
  const auto& q = std::get<mpq_class>(rep_);
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(rep_));
  double d = std::get<double>(rep_);
  return (d > 0) - (d < 0);
}

void Scalar::require_same_mode(const Scalar& o, const char* op) const {
  if (rep_.index() != o.rep_.index()) throw ModeError(std::string("mixed exact/float operands in ") + op);
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(rep_)));
  return from_double(-std::get<double>(rep_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(o, "+");
  if (is_exact())
    std::get<mpq_class>(rep_) += std::get<mpq_class>(o.rep_);
  else
    std::get<double>(rep_) += std::get<double>(o.rep_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(o, "-");
  if (is_exact())
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(o.rep_);
  else
    std::get<double>(rep_) -= std::get<double>(o.rep_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(o, "*");
  if (is_exact())
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(o.rep_);
  else
    std::get<double>(rep_) *= std::get<double>(o.rep_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(o, "/");
  if (is_exact()) {
    if (sgn(std::get<mpq_class>(o.rep_)) == 0) throw Error("division by zero");
    std::get<mpq_class>(rep_) /= std::get<mpq_class>(o.rep_);
  } else {
    std::get<double>(rep_) /= std::get<double>(o.rep_);
  }
  return *this;
}

int compare(const Scalar& a, const Scalar& b) {
  a.require_same_mode(b, "comparison");
  if (a.is_exact()) return cmp(std::get<mpq_class>(a.rep_), std::get<mpq_class>(b.rep_));
  double x = std::get<double>(a.rep_), y = std::get<double>(b.rep_);
  return (x > y) - (x < y);
}

std::optional<Scalar> exact_sqrt(const Scalar& v) {
  if (!v.is_exact() || v.sign() < 0) return std::nullopt;
  const mpq_class& q = v.rational();
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class num = sqrt(q.get_num());
  mpz_class den = sqrt(q.get_den());
  return Scalar(mpq_class(num, den));
}

Scalar sqrt(const Scalar& v) {
  if (!v.is_exact()) {
    if (v.sign() < 0) throw Error("square root of a negative number");
    return Scalar::from_double(std::sqrt(v.to_double()));
  }
  if (auto r = exact_sqrt(v)) return *r;
  throw Error("square root of " + v.to_string() + " is not rational; use float mode");
}

}  // namespace rohull
