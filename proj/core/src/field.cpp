#include "grassdist/field.hpp"

#include <cmath>

namespace grassdist {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 32-bit inputs.
  std::uint32_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    std::uint64_t x = fp_pow(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = fp_mul(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldTag FieldTag::prime(std::uint32_t p) {
  if (p <= (1u << 14)) throw std::invalid_argument("prime modulus must exceed 2^14");
  if (p >= (1u << 31)) throw std::invalid_argument("prime modulus must fit in 31 bits");
  if (!is_prime_u32(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  FieldTag t;
  t.kind = FieldKind::PrimeField;
  t.p = p;
  return t;
}

std::string FieldTag::to_string() const {
  return kind == FieldKind::Rationals ? "QQ" : "GF(" + std::to_string(p) + ")";
}

std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw std::domain_error("inverse of zero mod p");
  // Extended Euclid.
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(p), newr = static_cast<long long>(a);
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t fp_from_int(long long v, std::uint64_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<std::uint64_t>(m);
}

std::uint64_t fp_from_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class m = v % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

std::uint64_t fp_from_rational(const Rational& q, std::uint64_t p) {
  std::uint64_t den = fp_from_mpz(q.get_den(), p);
  if (den == 0) throw std::domain_error("rational coefficient has denominator divisible by p");
  return fp_mul(fp_from_mpz(q.get_num(), p), fp_inv(den, p), p);
}

std::uint64_t fp_sqrt_minus_one(std::uint64_t p) {
  if (p % 4 != 1) throw std::domain_error("-1 is not a square mod p (need p = 1 mod 4)");
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t i = fp_pow(g, (p - 1) / 4, p);
    if (fp_mul(i, i, p) == p - 1) return i;
  }
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational q(mpz_class(digits), den);
  q.canonicalize();
  return q;
}

bool rational_reconstruct(std::uint64_t r, std::uint64_t p, Rational& out) {
  // Half-extended Euclid on (p, r); stop when remainder < sqrt(p/2).
  mpz_class bound;
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_sqrt(bound.get_mpz_t(), mpz_class(pz / 2).get_mpz_t());
  mpz_class r0 = pz, r1 = static_cast<unsigned long>(r);
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || mpz_cmpabs(t1.get_mpz_t(), bound.get_mpz_t()) > 0) return false;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

long long Rng::int_in(long long lo, long long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

std::uint64_t Rng::nonzero_residue(std::uint64_t p) {
  std::uint64_t r;
  do {
    r = residue(p);
  } while (r == 0);
  return r;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * unit() - 1.0;
    v = 2.0 * unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

double Rng::cauchy() {
  double u;
  do {
    u = unit();
  } while (u == 0.5);
  return std::tan(3.14159265358979323846 * (u - 0.5));
}

}  // namespace grassdist
