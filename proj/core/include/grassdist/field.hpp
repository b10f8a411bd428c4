#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace grassdist {

using Rational = mpq_class;

enum class FieldKind : std::uint8_t { Rationals, PrimeField };

/// Coefficient field of a polynomial ring: QQ or a prime field F_p.
/// Moduli below 2^14 are rejected so that small integer constants appearing
/// in degree formulas can never collide with the characteristic.
struct FieldTag {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t p = 0;

  static FieldTag rationals() { return FieldTag{}; }
  static FieldTag prime(std::uint32_t p);

  bool is_prime_field() const { return kind == FieldKind::PrimeField; }
  bool operator==(const FieldTag&) const = default;
  std::string to_string() const;
};

bool is_prime_u32(std::uint32_t n);

// F_p arithmetic on least residues in [0, p). p fits in 31 bits, so products
// of two residues never overflow a 64-bit accumulator.
inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t fp_neg(std::uint64_t a, std::uint64_t p) {
  return a == 0 ? 0 : p - a;
}
inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;
}
std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);

std::uint64_t fp_from_int(long long v, std::uint64_t p);
std::uint64_t fp_from_mpz(const mpz_class& v, std::uint64_t p);
// Reduction of a rational mod p; throws if the denominator vanishes mod p.
std::uint64_t fp_from_rational(const Rational& q, std::uint64_t p);

/// A square root of -1 mod p (exists iff p = 1 mod 4); throws otherwise.
std::uint64_t fp_sqrt_minus_one(std::uint64_t p);

/// Parses "-3", "3/7" or an exact decimal string like "0.25" into a rational.
Rational rational_from_string(const std::string& s);

/// Rational reconstruction of r mod p with |num|, den <= sqrt(p/2).
/// Returns false when no admissible pair exists.
bool rational_reconstruct(std::uint64_t r, std::uint64_t p, Rational& out);

/// Deterministic RNG used for all "generic data" draws. We roll our own
/// bounded draws because std::uniform_int_distribution is not reproducible
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform in [lo, hi], inclusive.
  long long int_in(long long lo, long long hi);
  std::uint64_t residue(std::uint64_t p) { return next() % p; }
  std::uint64_t nonzero_residue(std::uint64_t p);
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double normal();
  double cauchy();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace grassdist
