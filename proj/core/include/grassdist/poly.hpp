#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "grassdist/field.hpp"

namespace grassdist {

// Exponent vectors are fixed-width: degrees stay far below 2^15 at the
// scales this library targets, and rings never exceed kMaxVars variables.
inline constexpr int kMaxVars = 24;

struct Monomial {
  std::uint32_t deg = 0;  // cached total degree
  std::array<std::uint16_t, kMaxVars> e{};

  static Monomial one() { return Monomial{}; }
  static Monomial var(int i, std::uint16_t k = 1) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = k;
    m.deg = k;
    return m;
  }

  bool is_one() const { return deg == 0; }
  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial divide(const Monomial& o) const;  // this / o, assumes divisibility
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ull;
    for (int i = 0; i < kMaxVars; ++i) {
      h ^= m.e[static_cast<std::size_t>(i)];
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct MonomialOrder {
  enum class Kind : std::uint8_t { GrevLex, Lex, Block };
  Kind kind = Kind::GrevLex;
  // For Block orders: variables whose bit is set form the leading block,
  // compared grevlex first. This is the elimination order for that block.
  std::uint32_t block_mask = 0;

  static MonomialOrder grevlex() { return MonomialOrder{}; }
  static MonomialOrder lex() { return MonomialOrder{Kind::Lex, 0}; }
  static MonomialOrder eliminate(std::uint32_t mask) { return MonomialOrder{Kind::Block, mask}; }

  // Degree-compatible orders admit the combinatorial dimension argument.
  bool graded() const { return kind == Kind::GrevLex; }

  /// <0, 0, >0 as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b, int nvars) const;
  bool less(const Monomial& a, const Monomial& b, int nvars) const { return compare(a, b, nvars) < 0; }
};

/// Shared, immutable description of a polynomial ring: an ordered list of
/// variable names plus the coefficient field.
class RingData {
 public:
  RingData(std::vector<std::string> names, FieldTag field);

  int nvars() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent
  const FieldTag& field() const { return field_; }

 private:
  std::vector<std::string> names_;
  FieldTag field_;
};

using Ring = std::shared_ptr<const RingData>;

Ring make_ring(std::vector<std::string> names, FieldTag field);
/// Plucker ring x_{ij}, 1 <= i < j <= n (requires n <= 9 for unambiguous names).
Ring plucker_ring(int n, FieldTag field);
std::vector<std::string> plucker_names(int n);
int plucker_index(int n, int i, int j);
/// Symmetric-matrix ring p_{ij}, 1 <= i <= j <= n.
Ring sym_ring(int n, FieldTag field);
std::vector<std::string> sym_names(int n);
int sym_index(int n, int i, int j);
std::vector<std::string> param_names(int s);  // t1..ts
/// Same variables over a different coefficient field.
Ring with_field(const Ring& r, FieldTag field);
/// r's variables followed by `extra` ones.
Ring extend_ring(const Ring& r, const std::vector<std::string>& extra);

namespace detail {
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<std::uint64_t> {
  static bool is_zero(std::uint64_t c) { return c == 0; }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b, const FieldTag& f) { return fp_add(a, b, f.p); }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b, const FieldTag& f) { return fp_sub(a, b, f.p); }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b, const FieldTag& f) { return fp_mul(a, b, f.p); }
  static std::uint64_t neg(std::uint64_t a, const FieldTag& f) { return fp_neg(a, f.p); }
  static std::uint64_t inv(std::uint64_t a, const FieldTag& f) { return fp_inv(a, f.p); }
  static std::uint64_t one(const FieldTag&) { return 1; }
  static std::uint64_t from_int(long long v, const FieldTag& f) { return fp_from_int(v, f.p); }
  static std::uint64_t from_mpz(const mpz_class& v, const FieldTag& f) { return fp_from_mpz(v, f.p); }
};

template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational add(const Rational& a, const Rational& b, const FieldTag&) { return a + b; }
  static Rational sub(const Rational& a, const Rational& b, const FieldTag&) { return a - b; }
  static Rational mul(const Rational& a, const Rational& b, const FieldTag&) { return a * b; }
  static Rational neg(const Rational& a, const FieldTag&) { return -a; }
  static Rational inv(const Rational& a, const FieldTag&) { return 1 / a; }
  static Rational one(const FieldTag&) { return 1; }
  static Rational from_int(long long v, const FieldTag&) { return Rational(static_cast<long>(v)); }
  static Rational from_mpz(const mpz_class& v, const FieldTag&) { return Rational(v); }
};
}  // namespace detail

/// Sparse multivariate polynomial with exact coefficients. Terms are kept
/// sorted in descending grevlex order; no zero coefficient is ever stored.
/// Values are immutable in spirit: every operation returns a new polynomial.
template <class C>
class Poly {
 public:
  struct Term {
    Monomial m;
    C c;
  };

  Poly() = default;
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}

  static Poly zero(const Ring& r) { return Poly(r); }
  static Poly constant(const Ring& r, C c);
  static Poly from_int(const Ring& r, long long v);
  static Poly variable(const Ring& r, int i, std::uint16_t power = 1);
  /// Builds from unsorted (monomial, coeff) pairs, combining duplicates.
  static Poly from_terms(const Ring& r, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  const FieldTag& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_[0].m.is_one(); }
  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const;  // -1 for the zero polynomial
  /// Leading term under the canonical grevlex order.
  const Term& lt() const { return terms_.front(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly mul_term(const Monomial& m, const C& c) const;
  Poly mul_scalar(const C& c) const;
  bool operator==(const Poly& o) const;

  Poly derivative(int var) const;
  /// Substitutes polynomials (in a possibly different ring) for variables.
  Poly<C> compose(const Ring& target, const std::vector<Poly<C>>& images) const;
  C eval(const std::vector<C>& point) const;
  double eval_double(const std::vector<double>& point) const;

  bool is_homogeneous() const;
  bool depends_on(int var) const;
  std::uint32_t support_mask() const;
  /// Divides by var^k where k is the lowest power present (returns k).
  int strip_variable_power(int var, Poly* out) const;

  std::string to_string() const;

 private:
  friend class PolyBuilder;
  Ring ring_;
  std::vector<Term> terms_;  // descending grevlex
  void check_compatible(const Poly& o) const;
};

using PolyQ = Poly<Rational>;
using PolyP = Poly<std::uint64_t>;

/// Parses the grammar used throughout: integer (or a/b) coefficients,
/// declared variable names, and the operators + - * ^ with parentheses.
template <class C>
Poly<C> parse_poly(const std::string& text, const Ring& ring);

PolyQ parse_q(const std::string& text, const Ring& ring);
PolyP parse_p(const std::string& text, const Ring& ring);

/// Reduction of an exact rational polynomial mod p (throws when a
/// denominator is divisible by p).
PolyP reduce_mod(const PolyQ& f, const Ring& target);
PolyQ lift_to_q(const PolyP& f, const Ring& target);

/// num / content for integer-content of a rational polynomial: scales so all
/// coefficients are coprime integers with positive leading coefficient.
PolyQ primitive_part(const PolyQ& f);

/// Moves f into a ring that contains all of f's variables; `var_map[i]` is
/// the index in `target` of variable i of f's ring.
template <class C>
Poly<C> rename_vars(const Poly<C>& f, const Ring& target, const std::vector<int>& var_map);

/// Convenience: identity-name embedding (every variable of f's ring must
/// exist in target, matched by name).
template <class C>
Poly<C> embed(const Poly<C>& f, const Ring& target);

template <class C>
std::vector<int> name_map(const Ring& from, const Ring& to);

}  // namespace grassdist
