#include "perdecomp/numeric.hpp"

#include "perdecomp/error.hpp"

namespace perdecomp {

namespace {

struct PairBezout {
  BigInt gcd;
  BigInt s;
  BigInt t;
};

// s*a + t*b == gcd >= 0.
PairBezout xgcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    const BigInt q = floor_div(old_r, r);
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

}  // namespace

BezoutIdentity ext_gcd(std::span<const BigInt> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "ext_gcd needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == 0)
      throw Error(ErrorKind::ZeroElement, "ext_gcd argument " + std::to_string(i) + " is zero");

  BezoutIdentity out;
  out.gcd = abs(values[0]);
  out.coefficients.push_back(values[0] < 0 ? BigInt(-1) : BigInt(1));
  for (std::size_t i = 1; i < values.size(); ++i) {
    const PairBezout p = xgcd(out.gcd, values[i]);
    for (auto& c : out.coefficients) c *= p.s;
    out.coefficients.push_back(p.t);
    out.gcd = p.gcd;
  }
  return out;
}

Rational rational_lcm(const Rational& a, const Rational& b) {
  if (a.sign() <= 0 || b.sign() <= 0)
    throw Error(ErrorKind::NonPositive, "rational_lcm arguments must be positive");
  BigInt num, den;
  const BigInt an = a.numerator(), bn = b.numerator();
  const BigInt ad = a.denominator(), bd = b.denominator();
  mpz_lcm(num.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
  mpz_gcd(den.get_mpz_t(), ad.get_mpz_t(), bd.get_mpz_t());
  return Rational(num, den);
}

}  // namespace perdecomp
