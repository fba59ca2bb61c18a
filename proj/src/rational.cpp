#include "treeapprox/rational.hpp"

#include <cctype>
#include <limits>

#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::MalformedInput,
              "not a rational number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) bad_number(text);

  const std::string_view original = text;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(original);
    mpz_class p{std::string(num)}, q{std::string(den)};
    if (q == 0) bad_number(original);
    result = Rational(p, q);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(original);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text, frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(original);
    if (!int_part.empty() && !all_digits(int_part)) bad_number(original);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_number(original);

    mpz_class mantissa(std::string(int_part) + std::string(frac_part));
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      result = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
      result = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
      result.canonicalize();
    }
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

Rational pow2(int exponent) {
  mpz_class p = 1;
  if (exponent >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    return Rational(p);
  }
  mpz_class q = 1;
  mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  return Rational(p, q);
}

int floor_log2_strict(const Rational& value) {
  // Start from the bit-length estimate and correct by at most a few steps.
  long estimate = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  int i = static_cast<int>(estimate);
  while (pow2(i) >= value) --i;
  while (pow2(i + 1) < value) ++i;
  return i;
}

int ceil_log2(const Rational& value) { return floor_log2_strict(value) + 1; }

bool fits_int64(const mpz_class& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max() &&
         mpz_sizeinbase(value.get_mpz_t(), 2) <= 63;
}

std::int64_t to_int64(const mpz_class& value) {
  // mpz_get_si is exact on LP64 for anything passing fits_int64.
  return static_cast<std::int64_t>(mpz_get_si(value.get_mpz_t()));
}

}  // namespace treeapprox
