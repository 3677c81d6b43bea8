#include "bsfe/rational.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

Rational makeRational(long numerator, long denominator) {
  if (denominator == 0) throw InvalidArgument("zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Rational parseRational(std::string_view text) {
  std::string s(text);
  auto isDigits = [](const std::string& t, std::size_t from) {
    if (from >= t.size()) return false;
    for (std::size_t i = from; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  std::size_t start = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
  if (!isDigits(num, start) || !isDigits(den, 0)) throw InvalidArgument("not a rational number: '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  Integer d(den);
  if (d == 0) throw InvalidArgument("zero denominator in '" + s + "'");
  Rational q{Integer(num), d};
  q.canonicalize();
  return q;
}

std::string toString(const Rational& q) { return q.get_str(); }

Integer floorOf(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceilOf(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace bsfe
