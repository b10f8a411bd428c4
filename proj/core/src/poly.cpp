#include "grassdist/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace grassdist {

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.deg = deg + o.deg;
  for (int i = 0; i < kMaxVars; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(e[i]) + o.e[i];
    if (s >= (1u << 15)) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::divide(const Monomial& o) const {
  Monomial r;
  r.deg = deg - o.deg;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::uint32_t d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    d += r.e[i];
  }
  r.deg = d;
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

namespace {

int cmp_grevlex(const Monomial& a, const Monomial& b, int nvars) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (int i = nvars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

int cmp_lex(const Monomial& a, const Monomial& b, int nvars) {
  for (int i = 0; i < nvars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

int cmp_grevlex_masked(const Monomial& a, const Monomial& b, int nvars, std::uint32_t mask) {
  std::uint32_t da = 0, db = 0;
  for (int i = 0; i < nvars; ++i) {
    if (mask & (1u << i)) {
      da += a.e[i];
      db += b.e[i];
    }
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = nvars - 1; i >= 0; --i) {
    if ((mask & (1u << i)) && a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, int nvars) const {
  switch (kind) {
    case Kind::GrevLex:
      return cmp_grevlex(a, b, nvars);
    case Kind::Lex:
      return cmp_lex(a, b, nvars);
    case Kind::Block: {
      int c = cmp_grevlex_masked(a, b, nvars, block_mask);
      if (c) return c;
      return cmp_grevlex_masked(a, b, nvars, ~block_mask);
    }
  }
  return 0;
}

RingData::RingData(std::vector<std::string> names, FieldTag field)
    : names_(std::move(names)), field_(field) {
  if (static_cast<int>(names_.size()) > kMaxVars)
    throw std::invalid_argument("ring exceeds the supported number of variables");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
}

int RingData::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

Ring make_ring(std::vector<std::string> names, FieldTag field) {
  return std::make_shared<RingData>(std::move(names), field);
}

std::vector<std::string> plucker_names(int n) {
  if (n > 9) throw std::invalid_argument("plucker_ring supports n <= 9");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) names.push_back("x" + std::to_string(i) + std::to_string(j));
  return names;
}

Ring plucker_ring(int n, FieldTag field) { return make_ring(plucker_names(n), field); }

int plucker_index(int n, int i, int j) {
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("bad plucker index");
  // Position of x_ij in the row-major strict upper triangle.
  return (i - 1) * n - (i * (i - 1)) / 2 + (j - i - 1);
}

std::vector<std::string> sym_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) names.push_back("p" + std::to_string(i) + std::to_string(j));
  return names;
}

Ring sym_ring(int n, FieldTag field) { return make_ring(sym_names(n), field); }

int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (!(1 <= i && j <= n)) throw std::invalid_argument("bad symmetric index");
  return (i - 1) * (n + 1) - (i * (i - 1)) / 2 + (j - i);
}

std::vector<std::string> param_names(int s) {
  std::vector<std::string> names;
  for (int k = 1; k <= s; ++k) names.push_back("t" + std::to_string(k));
  return names;
}

Ring with_field(const Ring& r, FieldTag field) { return make_ring(r->names(), field); }

Ring extend_ring(const Ring& r, const std::vector<std::string>& extra) {
  std::vector<std::string> names = r->names();
  names.insert(names.end(), extra.begin(), extra.end());
  return make_ring(std::move(names), r->field());
}

template <class C>
void Poly<C>::check_compatible(const Poly& o) const {
  if (ring_ != o.ring_ && (!ring_ || !o.ring_ || ring_->names() != o.ring_->names() ||
                           !(ring_->field() == o.ring_->field())))
    throw std::invalid_argument("polynomials live in different rings");
}

template <class C>
Poly<C> Poly<C>::constant(const Ring& r, C c) {
  Poly f(r);
  if (!detail::CoeffOps<C>::is_zero(c)) f.terms_.push_back({Monomial::one(), std::move(c)});
  return f;
}

template <class C>
Poly<C> Poly<C>::from_int(const Ring& r, long long v) {
  return constant(r, detail::CoeffOps<C>::from_int(v, r->field()));
}

template <class C>
Poly<C> Poly<C>::variable(const Ring& r, int i, std::uint16_t power) {
  if (i < 0 || i >= r->nvars()) throw std::invalid_argument("variable index out of range");
  Poly f(r);
  if (power == 0) return from_int(r, 1);
  f.terms_.push_back({Monomial::var(i, power), detail::CoeffOps<C>::one(r->field())});
  return f;
}

template <class C>
Poly<C> Poly<C>::from_terms(const Ring& r, std::vector<Term> in) {
  const MonomialOrder ord = MonomialOrder::grevlex();
  std::sort(in.begin(), in.end(), [&](const Term& a, const Term& b) {
    return ord.compare(a.m, b.m, r->nvars()) > 0;
  });
  Poly f(r);
  for (auto& t : in) {
    if (!f.terms_.empty() && f.terms_.back().m == t.m) {
      f.terms_.back().c = detail::CoeffOps<C>::add(f.terms_.back().c, t.c, r->field());
      if (detail::CoeffOps<C>::is_zero(f.terms_.back().c)) f.terms_.pop_back();
    } else if (!detail::CoeffOps<C>::is_zero(t.c)) {
      f.terms_.push_back(std::move(t));
    }
  }
  return f;
}

template <class C>
int Poly<C>::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg));
  return d;
}

template <class C>
Poly<C> Poly<C>::operator+(const Poly& o) const {
  check_compatible(o);
  const MonomialOrder ord = MonomialOrder::grevlex();
  const int n = ring_->nvars();
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ord.compare(terms_[i].m, o.terms_[j].m, n);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      C s = detail::CoeffOps<C>::add(terms_[i].c, o.terms_[j].c, ring_->field());
      if (!detail::CoeffOps<C>::is_zero(s)) r.terms_.push_back({terms_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

template <class C>
Poly<C> Poly<C>::operator-() const {
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, detail::CoeffOps<C>::neg(t.c, ring_->field())});
  return r;
}

template <class C>
Poly<C> Poly<C>::operator-(const Poly& o) const {
  return *this + (-o);
}

template <class C>
Poly<C> Poly<C>::mul_term(const Monomial& m, const C& c) const {
  Poly r(ring_);
  if (detail::CoeffOps<C>::is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    C p = detail::CoeffOps<C>::mul(t.c, c, ring_->field());
    if (!detail::CoeffOps<C>::is_zero(p)) r.terms_.push_back({t.m * m, std::move(p)});
  }
  return r;
}

template <class C>
Poly<C> Poly<C>::mul_scalar(const C& c) const {
  return mul_term(Monomial::one(), c);
}

template <class C>
Poly<C> Poly<C>::operator*(const Poly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return Poly(ring_);
  std::unordered_map<Monomial, C, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 8);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.m * b.m;
      C p = detail::CoeffOps<C>::mul(a.c, b.c, ring_->field());
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, std::move(p));
      } else {
        it->second = detail::CoeffOps<C>::add(it->second, p, ring_->field());
        if (detail::CoeffOps<C>::is_zero(it->second)) acc.erase(it);
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back({m, std::move(c)});
  return from_terms(ring_, std::move(out));
}

template <class C>
bool Poly<C>::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) ||
        !detail::CoeffOps<C>::is_zero(
            detail::CoeffOps<C>::sub(terms_[i].c, o.terms_[i].c, ring_->field())))
      return false;
  return true;
}

template <class C>
Poly<C> Poly<C>::derivative(int var) const {
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint16_t k = t.m.e[var];
    if (k == 0) continue;
    Monomial m = t.m;
    m.e[var] = static_cast<std::uint16_t>(k - 1);
    m.deg -= 1;
    C c = detail::CoeffOps<C>::mul(t.c, detail::CoeffOps<C>::from_int(k, ring_->field()), ring_->field());
    if (!detail::CoeffOps<C>::is_zero(c)) r.terms_.push_back({m, std::move(c)});
  }
  return from_terms(ring_, std::move(r.terms_));
}

template <class C>
Poly<C> Poly<C>::compose(const Ring& target, const std::vector<Poly<C>>& images) const {
  if (static_cast<int>(images.size()) != ring_->nvars())
    throw std::invalid_argument("compose: wrong number of images");
  Poly<C> result = Poly<C>::zero(target);
  // Power cache per variable.
  std::vector<std::vector<Poly<C>>> powers(images.size());
  auto power = [&](int v, int k) -> const Poly<C>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly<C>::from_int(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[v]);
    return cache[k];
  };
  for (const auto& t : terms_) {
    Poly<C> prod = Poly<C>::constant(target, t.c);
    for (int v = 0; v < ring_->nvars(); ++v)
      if (t.m.e[v]) prod = prod * power(v, t.m.e[v]);
    result = result + prod;
  }
  return result;
}

template <class C>
C Poly<C>::eval(const std::vector<C>& point) const {
  const FieldTag& f = ring_->field();
  C acc = detail::CoeffOps<C>::from_int(0, f);
  for (const auto& t : terms_) {
    C v = t.c;
    for (int i = 0; i < ring_->nvars(); ++i) {
      for (int k = 0; k < t.m.e[i]; ++k) v = detail::CoeffOps<C>::mul(v, point[i], f);
    }
    acc = detail::CoeffOps<C>::add(acc, v, f);
  }
  return acc;
}

template <class C>
double Poly<C>::eval_double(const std::vector<double>& point) const {
  double acc = 0;
  for (const auto& t : terms_) {
    double v;
    if constexpr (std::is_same_v<C, Rational>) {
      v = t.c.get_d();
    } else {
      v = static_cast<double>(t.c);
    }
    for (int i = 0; i < ring_->nvars(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v *= point[i];
    acc += v;
  }
  return acc;
}

template <class C>
bool Poly<C>::is_homogeneous() const {
  if (terms_.empty()) return true;
  for (const auto& t : terms_)
    if (t.m.deg != terms_[0].m.deg) return false;
  return true;
}

template <class C>
bool Poly<C>::depends_on(int var) const {
  for (const auto& t : terms_)
    if (t.m.e[var]) return true;
  return false;
}

template <class C>
std::uint32_t Poly<C>::support_mask() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < ring_->nvars(); ++i)
      if (t.m.e[i]) m |= 1u << i;
  return m;
}

template <class C>
int Poly<C>::strip_variable_power(int var, Poly* out) const {
  if (is_zero()) {
    *out = *this;
    return 0;
  }
  int k = 1 << 14;
  for (const auto& t : terms_) k = std::min(k, static_cast<int>(t.m.e[var]));
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.m;
    m.e[var] = static_cast<std::uint16_t>(m.e[var] - k);
    m.deg -= static_cast<std::uint32_t>(k);
    r.terms_.push_back({m, t.c});
  }
  *out = from_terms(ring_, std::move(r.terms_));
  return k;
}

namespace {

template <class C>
std::string coeff_str(const C& c) {
  if constexpr (std::is_same_v<C, Rational>) {
    return c.get_str();
  } else {
    return std::to_string(c);
  }
}

}  // namespace

template <class C>
std::string Poly<C>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = coeff_str(t.c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string mono;
    for (int i = 0; i < ring_->nvars(); ++i) {
      if (!t.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    if (mono.empty()) {
      os << cs;
    } else if (cs == "1") {
      os << mono;
    } else {
      os << cs << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  const Ring& ring;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return mpz_class(s.substr(start, pos - start));
  }

  int exponent() {
    mpz_class e = integer();
    if (e < 0 || e >= (1 << 15)) fail("exponent out of range");
    return static_cast<int>(e.get_si());
  }

  template <class C>
  Poly<C> atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly<C> e = expr<C>();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      if (eat('/')) {
        mpz_class den = integer();
        if (den == 0) fail("zero denominator");
        if constexpr (std::is_same_v<C, Rational>) {
          Rational q(num, den);
          q.canonicalize();
          return Poly<C>::constant(ring, q);
        } else {
          std::uint64_t d = fp_from_mpz(den, ring->field().p);
          if (d == 0) fail("coefficient not reducible mod p");
          return Poly<C>::constant(
              ring, fp_mul(fp_from_mpz(num, ring->field().p), fp_inv(d, ring->field().p), ring->field().p));
        }
      }
      return Poly<C>::constant(ring, detail::CoeffOps<C>::from_mpz(num, ring->field()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      int idx = ring->index_of(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Poly<C>::variable(ring, idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  template <class C>
  Poly<C> factor() {
    Poly<C> base = atom<C>();
    while (eat('^')) {
      int e = exponent();
      Poly<C> r = Poly<C>::from_int(ring, 1);
      for (int k = 0; k < e; ++k) r = r * base;
      base = r;
    }
    return base;
  }

  template <class C>
  Poly<C> product() {
    Poly<C> r = factor<C>();
    while (eat('*')) r = r * factor<C>();
    return r;
  }

  template <class C>
  Poly<C> expr() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly<C> r = product<C>();
    if (neg) r = -r;
    while (true) {
      skip();
      if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
      bool minus = s[pos] == '-';
      ++pos;
      Poly<C> t = product<C>();
      r = minus ? r - t : r + t;
    }
    return r;
  }
};

}  // namespace

template <class C>
Poly<C> parse_poly(const std::string& text, const Ring& ring) {
  Parser p{text, 0, ring};
  Poly<C> r = p.expr<C>();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

PolyQ parse_q(const std::string& text, const Ring& ring) { return parse_poly<Rational>(text, ring); }
PolyP parse_p(const std::string& text, const Ring& ring) { return parse_poly<std::uint64_t>(text, ring); }

PolyP reduce_mod(const PolyQ& f, const Ring& target) {
  if (!target->field().is_prime_field()) throw std::invalid_argument("target must be a prime field ring");
  std::vector<PolyP::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    std::uint64_t c = fp_from_rational(t.c, target->field().p);
    if (c) terms.push_back({t.m, c});
  }
  return PolyP::from_terms(target, std::move(terms));
}

PolyQ lift_to_q(const PolyP& f, const Ring& target) {
  std::vector<PolyQ::Term> terms;
  std::uint64_t p = f.field().p;
  for (const auto& t : f.terms()) {
    long long v = static_cast<long long>(t.c);
    if (v > static_cast<long long>(p / 2)) v -= static_cast<long long>(p);
    terms.push_back({t.m, Rational(static_cast<long>(v))});
  }
  return PolyQ::from_terms(target, std::move(terms));
}

PolyQ primitive_part(const PolyQ& f) {
  if (f.is_zero()) return f;
  mpz_class den_lcm = 1;
  for (const auto& t : f.terms()) {
    mpz_class d = t.c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class content = 0;
  for (const auto& t : f.terms()) {
    mpz_class num = t.c.get_num() * (den_lcm / t.c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  if (content == 0) content = 1;
  Rational scale(den_lcm, content);
  scale.canonicalize();
  PolyQ g = f.mul_scalar(scale);
  if (g.lt().c < 0) g = -g;
  return g;
}

template <class C>
Poly<C> rename_vars(const Poly<C>& f, const Ring& target, const std::vector<int>& var_map) {
  std::vector<typename Poly<C>::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Monomial m;
    m.deg = t.m.deg;
    for (int i = 0; i < static_cast<int>(var_map.size()); ++i) {
      if (t.m.e[i]) {
        if (var_map[i] < 0) throw std::invalid_argument("rename_vars: unmapped variable in use");
        m.e[var_map[i]] = t.m.e[i];
      }
    }
    terms.push_back({m, t.c});
  }
  return Poly<C>::from_terms(target, std::move(terms));
}

template <class C>
std::vector<int> name_map(const Ring& from, const Ring& to) {
  std::vector<int> map(from->nvars());
  for (int i = 0; i < from->nvars(); ++i) map[i] = to->index_of(from->name(i));
  return map;
}

template <class C>
Poly<C> embed(const Poly<C>& f, const Ring& target) {
  return rename_vars(f, target, name_map<C>(f.ring(), target));
}

template class Poly<Rational>;
template class Poly<std::uint64_t>;
template PolyQ parse_poly<Rational>(const std::string&, const Ring&);
template PolyP parse_poly<std::uint64_t>(const std::string&, const Ring&);
template PolyQ rename_vars<Rational>(const PolyQ&, const Ring&, const std::vector<int>&);
template PolyP rename_vars<std::uint64_t>(const PolyP&, const Ring&, const std::vector<int>&);
template PolyQ embed<Rational>(const PolyQ&, const Ring&);
template PolyP embed<std::uint64_t>(const PolyP&, const Ring&);
template std::vector<int> name_map<Rational>(const Ring&, const Ring&);
template std::vector<int> name_map<std::uint64_t>(const Ring&, const Ring&);

}  // namespace grassdist
