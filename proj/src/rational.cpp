#include "wamen/rational.hpp"

#include <cctype>
#include <cmath>

#include "wamen/error.hpp"

namespace wamen {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("invalid fraction '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty fraction");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("invalid fraction '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw ParseError("invalid decimal '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }

  return Rational(parse_integer(text, text));
}

Rational parse_positive_rational(std::string_view text) {
  Rational q = parse_rational(text);
  if (sgn(q) <= 0) throw InvariantError("expected a positive value, got '" + std::string(text) + "'");
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational exp_neg_upper_bound(unsigned n) {
  // sum_{j<=N} n^j/j! < e^n; N = 2n + 20 makes the bound tight well past
  // the precision anyone reads off a report.
  Rational partial = 0;
  Rational term = 1;
  const unsigned terms = 2 * n + 20;
  for (unsigned j = 0; j <= terms; ++j) {
    partial += term;
    term *= n;
    term /= (j + 1);
  }
  return Rational(1) / partial;
}

Integer folner_probability_numerator(unsigned n, unsigned boundary_size) {
  if (n == 0) throw PreconditionError("stage index must be positive");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 64);
  if (n == 1 || boundary_size == 0) return n == 1 ? scale : Integer(0);

  // P/2^64 >= p  <=>  (1 - P/2^64)^b <= 1 - 1/n
  //              <=>  n * (2^64 - P)^b <= (n - 1) * 2^(64 b)
  Integer rhs;
  mpz_pow_ui(rhs.get_mpz_t(), scale.get_mpz_t(), boundary_size);
  rhs *= (n - 1);
  auto is_upper = [&](const Integer& numer) {
    Integer rest = scale - numer;
    Integer lhs;
    mpz_pow_ui(lhs.get_mpz_t(), rest.get_mpz_t(), boundary_size);
    lhs *= n;
    return lhs <= rhs;
  };

  long double estimate = -std::expm1(std::log1p(-1.0L / n) / boundary_size);
  long double scaled = std::ldexp(estimate, 64);
  Integer guess;
  mpz_set_d(guess.get_mpz_t(), static_cast<double>(scaled));
  // Refine from the floating estimate to the exact smallest upper bound.
  Integer lo = guess - 4096;
  if (lo < 0) lo = 0;
  Integer hi = guess + 4096;
  if (hi > scale) hi = scale;
  while (lo > 0 && is_upper(lo)) lo = lo > 65536 ? Integer(lo - 65536) : Integer(0);
  while (!is_upper(hi)) hi = (hi + 65536 < scale) ? Integer(hi + 65536) : scale;
  // invariant: !is_upper(lo) unless lo == 0, is_upper(hi)
  if (is_upper(lo)) return lo;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (is_upper(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace wamen
