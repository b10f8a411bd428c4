#include "grassdist/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace grassdist {

template <class C>
Ideal<C>::Ideal(Ring r, std::vector<Poly<C>> g) : ring(std::move(r)) {
  gens.reserve(g.size());
  for (auto& f : g)
    if (!f.is_zero()) gens.push_back(std::move(f));
  homogeneous = true;
  for (const auto& f : gens)
    if (!f.is_homogeneous()) {
      homogeneous = false;
      break;
    }
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetCtx {
  GroebnerBudget b;
  Clock::time_point start = Clock::now();
  std::uint64_t pair_reductions = 0;
  std::uint64_t steps = 0;

  void count_pair() {
    if (++pair_reductions > b.max_pair_reductions) throw BudgetExceeded("pair limit exceeded");
    check_time();
  }
  void count_steps(std::uint64_t k) {
    steps += k;
    if (steps > b.max_reduction_steps) throw BudgetExceeded("reduction step limit exceeded");
    if ((steps & 0xfffff) < k) check_time();
  }
  void check_time() {
    if (b.max_seconds > 0) {
      double el = std::chrono::duration<double>(Clock::now() - start).count();
      if (el > b.max_seconds) throw BudgetExceeded("time limit exceeded");
    }
  }
};

template <class C>
using Term = typename Poly<C>::Term;

template <class C>
using TermVec = std::vector<Term<C>>;

// Terms sorted descending under the active order.
template <class C>
TermVec<C> to_internal(const Poly<C>& f, const MonomialOrder& ord, int nvars) {
  TermVec<C> t(f.terms().begin(), f.terms().end());
  std::sort(t.begin(), t.end(),
            [&](const Term<C>& a, const Term<C>& b) { return ord.compare(a.m, b.m, nvars) > 0; });
  return t;
}

template <class C>
Poly<C> from_internal(const Ring& ring, TermVec<C> t) {
  return Poly<C>::from_terms(ring, std::move(t));
}

// Merge two descending term vectors, combining equal monomials.
template <class C>
TermVec<C> merge_terms(const TermVec<C>& a, const TermVec<C>& b, const MonomialOrder& ord,
                       const FieldTag& field, int nvars) {
  TermVec<C> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a[i].m, b[j].m, nvars);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      C s = detail::CoeffOps<C>::add(a[i].c, b[j].c, field);
      if (!detail::CoeffOps<C>::is_zero(s)) r.push_back({a[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

// Geobucket accumulator: keeps the working polynomial as a small collection
// of sorted vectors so long reductions stay near-linear. Consumed prefixes
// are tracked with a head index per bucket.
template <class C>
class Geobucket {
 public:
  Geobucket(const MonomialOrder& ord, const FieldTag& field, int nvars, BudgetCtx& ctx)
      : ord_(ord), field_(field), nvars_(nvars), ctx_(ctx) {}

  void add(TermVec<C>&& v) {
    if (v.empty()) return;
    ctx_.count_steps(v.size());
    std::size_t slot = slot_for(v.size());
    while (true) {
      if (slot >= buckets_.size()) buckets_.resize(slot + 1);
      Bucket& b = buckets_[slot];
      if (b.empty()) {
        b.v = std::move(v);
        b.head = 0;
        return;
      }
      TermVec<C> cur(b.v.begin() + static_cast<std::ptrdiff_t>(b.head), b.v.end());
      b.v.clear();
      b.head = 0;
      v = merge_terms<C>(cur, v, ord_, field_, nvars_);
      if (v.empty()) return;
      if (v.size() <= cap(slot)) {
        b.v = std::move(v);
        return;
      }
      ++slot;
    }
  }

  // Returns the current leading term, or nullopt when empty; removes it.
  std::optional<Term<C>> pop_lt() {
    while (true) {
      int best = -1;
      for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (buckets_[k].empty()) continue;
        if (best < 0 || ord_.compare(buckets_[k].front().m,
                                     buckets_[static_cast<std::size_t>(best)].front().m, nvars_) > 0)
          best = static_cast<int>(k);
      }
      if (best < 0) return std::nullopt;
      Monomial m = buckets_[static_cast<std::size_t>(best)].front().m;
      C coeff = buckets_[static_cast<std::size_t>(best)].front().c;
      buckets_[static_cast<std::size_t>(best)].pop();
      for (auto& b : buckets_) {
        if (b.empty() || !(b.front().m == m)) continue;
        coeff = detail::CoeffOps<C>::add(coeff, b.front().c, field_);
        b.pop();
      }
      if (!detail::CoeffOps<C>::is_zero(coeff)) return Term<C>{m, coeff};
    }
  }

 private:
  struct Bucket {
    TermVec<C> v;
    std::size_t head = 0;
    bool empty() const { return head >= v.size(); }
    const Term<C>& front() const { return v[head]; }
    void pop() { ++head; }
  };
  static std::size_t cap(std::size_t slot) { return std::size_t{1} << (2 * (slot + 1)); }
  static std::size_t slot_for(std::size_t n) {
    std::size_t s = 0;
    while (cap(s) < n) ++s;
    return s;
  }

  const MonomialOrder& ord_;
  const FieldTag& field_;
  int nvars_;
  BudgetCtx& ctx_;
  std::vector<Bucket> buckets_;
};

template <class C>
struct BasisElem {
  TermVec<C> t;  // monic (Fp) or integer-primitive (QQ), descending
  Monomial lt;
  std::uint32_t sugar = 0;
};

// Normalizes lead coefficient: monic over Fp, primitive with positive lead
// over QQ (keeps rational GB runs from drowning in digits).
template <class C>
void normalize(TermVec<C>& v, const FieldTag& field) {
  if (v.empty()) return;
  if constexpr (std::is_same_v<C, Rational>) {
    mpz_class den_lcm = 1, content = 0;
    for (const auto& t : v) {
      mpz_class d = t.c.get_den();
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (const auto& t : v) {
      mpz_class num = t.c.get_num() * (den_lcm / t.c.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
    }
    Rational scale(den_lcm, content == 0 ? 1 : content);
    scale.canonicalize();
    if (v.front().c < 0) scale = -scale;
    for (auto& t : v) t.c *= scale;
  } else {
    C inv = detail::CoeffOps<C>::inv(v.front().c, field);
    for (auto& t : v) t.c = detail::CoeffOps<C>::mul(t.c, inv, field);
  }
}

// Full normal form of `f` against the basis. Each cancellation feeds the
// shifted reducer tail back into the geobucket.
template <class C>
TermVec<C> nf_internal(TermVec<C> f, const std::vector<BasisElem<C>>& basis, const MonomialOrder& ord,
                       const FieldTag& field, int nvars, BudgetCtx& ctx,
                       std::uint32_t* sugar = nullptr) {
  TermVec<C> result;
  Geobucket<C> work(ord, field, nvars, ctx);
  work.add(std::move(f));
  while (auto lt = work.pop_lt()) {
    const BasisElem<C>* red = nullptr;
    for (const auto& g : basis) {
      if (g.lt.divides(lt->m)) {
        red = &g;
        break;
      }
    }
    if (!red) {
      result.push_back(*lt);
      continue;
    }
    Monomial shift = lt->m.divide(red->lt);
    if (sugar) *sugar = std::max(*sugar, red->sugar + shift.deg);
    C factor;
    if constexpr (std::is_same_v<C, Rational>) {
      factor = lt->c / red->t.front().c;
    } else {
      factor = detail::CoeffOps<C>::mul(lt->c, detail::CoeffOps<C>::inv(red->t.front().c, field), field);
    }
    TermVec<C> sub;
    sub.reserve(red->t.size() - 1);
    for (std::size_t i = 1; i < red->t.size(); ++i) {
      C c = detail::CoeffOps<C>::mul(red->t[i].c, factor, field);
      sub.push_back({red->t[i].m * shift, detail::CoeffOps<C>::neg(c, field)});
    }
    work.add(std::move(sub));
  }
  return result;
}

template <class C>
struct Pair {
  int i, j;
  Monomial lcm;
  std::uint32_t sugar = 0;
  bool alive = true;
  bool coprime = false;
};

// Buchberger with the Gebauer-Moller update.
template <class C>
class GB {
 public:
  GB(const Ideal<C>& I, const MonomialOrder& ord, const GroebnerBudget& budget)
      : ring_(I.ring), ord_(ord), field_(I.ring->field()), nvars_(I.ring->nvars()), ctx_{budget} {
    for (const auto& g : I.gens) {
      if (g.is_zero()) continue;
      TermVec<C> t = to_internal<C>(g, ord_, nvars_);
      input_.push_back(std::move(t));
    }
  }

  std::vector<Poly<C>> run() {
    for (auto& f : input_) {
      std::uint32_t sugar = f.empty() ? 0 : f.front().m.deg;
      for (const auto& t : f) sugar = std::max(sugar, t.m.deg);
      TermVec<C> r = nf_internal<C>(std::move(f), basis_, ord_, field_, nvars_, ctx_, &sugar);
      if (!r.empty()) add_elem(std::move(r), sugar);
      if (unit_) break;
    }
    while (!unit_) {
      int pi = select_pair();
      if (pi < 0) break;
      Pair<C>& pr = pairs_[static_cast<std::size_t>(pi)];
      pr.alive = false;
      ctx_.count_pair();
      std::uint32_t sugar = pr.sugar;
      TermVec<C> s = spoly(pr.i, pr.j, pr.lcm);
      TermVec<C> r = nf_internal<C>(std::move(s), basis_, ord_, field_, nvars_, ctx_, &sugar);
      if (!r.empty()) add_elem(std::move(r), sugar);
    }
    return reduced();
  }

 private:
  void add_elem(TermVec<C> f, std::uint32_t sugar) {
    normalize<C>(f, field_);
    if (f.front().m.is_one()) {
      unit_ = true;
      return;
    }
    int t = static_cast<int>(basis_.size());
    Monomial lt = f.front().m;
    pending_sugar_ = sugar;
    update_pairs(t, lt);
    basis_.push_back({std::move(f), lt, sugar});
  }

  // Gebauer-Moller criteria B, M, F plus Buchberger's coprime criterion.
  void update_pairs(int t, const Monomial& lt_t) {
    std::vector<Pair<C>> fresh;
    fresh.reserve(basis_.size());
    for (int i = 0; i < t; ++i) {
      Pair<C> p;
      p.i = i;
      p.j = t;
      p.lcm = Monomial::lcm(basis_[static_cast<std::size_t>(i)].lt, lt_t);
      p.coprime = Monomial::coprime(basis_[static_cast<std::size_t>(i)].lt, lt_t);
      const BasisElem<C>& bi = basis_[static_cast<std::size_t>(i)];
      p.sugar = std::max(bi.sugar + p.lcm.deg - bi.lt.deg, pending_sugar_ + p.lcm.deg - lt_t.deg);
      fresh.push_back(std::move(p));
    }
    // M: discard (i,t) when another new pair's lcm properly divides its lcm.
    for (auto& p : fresh) {
      for (const auto& q : fresh) {
        if (&p == &q || !p.alive) continue;
        if (!(q.lcm == p.lcm) && q.lcm.divides(p.lcm)) {
          p.alive = false;
          break;
        }
      }
    }
    // F: among equal lcms keep a single representative (a coprime one kills
    // the class outright).
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (!fresh[a].alive) continue;
      bool class_coprime = fresh[a].coprime;
      for (std::size_t b = a + 1; b < fresh.size(); ++b) {
        if (!fresh[b].alive || !(fresh[b].lcm == fresh[a].lcm)) continue;
        fresh[b].alive = false;
        class_coprime = class_coprime || fresh[b].coprime;
      }
      if (class_coprime) fresh[a].alive = false;
    }
    for (auto& p : fresh)
      if (p.alive && p.coprime) p.alive = false;
    // B: prune old pairs whose lcm is strictly reducible by the newcomer.
    for (auto& p : pairs_) {
      if (!p.alive) continue;
      if (lt_t.divides(p.lcm) &&
          !(Monomial::lcm(basis_[static_cast<std::size_t>(p.i)].lt, lt_t) == p.lcm) &&
          !(Monomial::lcm(basis_[static_cast<std::size_t>(p.j)].lt, lt_t) == p.lcm))
        p.alive = false;
    }
    for (auto& p : fresh)
      if (p.alive) pairs_.push_back(std::move(p));
  }

  // Sugar strategy: lowest sugar degree first, ties by the order on lcms.
  int select_pair() {
    int best = -1;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      if (!pairs_[k].alive) continue;
      if (best < 0) {
        best = static_cast<int>(k);
        continue;
      }
      const Pair<C>& a = pairs_[k];
      const Pair<C>& b = pairs_[static_cast<std::size_t>(best)];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = static_cast<int>(k);
      } else if (ord_.compare(a.lcm, b.lcm, nvars_) < 0) {
        best = static_cast<int>(k);
      }
    }
    return best;
  }

  TermVec<C> spoly(int i, int j, const Monomial& lcm) {
    const BasisElem<C>& f = basis_[static_cast<std::size_t>(i)];
    const BasisElem<C>& g = basis_[static_cast<std::size_t>(j)];
    Monomial mf = lcm.divide(f.lt);
    Monomial mg = lcm.divide(g.lt);
    // lead coefficients: scale to cancel heads exactly
    C cf = g.t.front().c;
    C cg = detail::CoeffOps<C>::neg(f.t.front().c, field_);
    TermVec<C> a;
    a.reserve(f.t.size());
    for (const auto& t : f.t) a.push_back({t.m * mf, detail::CoeffOps<C>::mul(t.c, cf, field_)});
    TermVec<C> b;
    b.reserve(g.t.size());
    for (const auto& t : g.t) b.push_back({t.m * mg, detail::CoeffOps<C>::mul(t.c, cg, field_)});
    return merge_terms<C>(a, b, ord_, field_, nvars_);
  }

  std::vector<Poly<C>> reduced() {
    if (unit_) return {Poly<C>::from_int(ring_, 1)};
    // Minimalize: drop elements whose LT is divisible by another LT.
    std::vector<int> keep;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (i == j) continue;
        if (basis_[j].lt.divides(basis_[i].lt) && !(basis_[j].lt == basis_[i].lt && j > i)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) keep.push_back(static_cast<int>(i));
    }
    std::vector<BasisElem<C>> min_basis;
    min_basis.reserve(keep.size());
    for (int i : keep) min_basis.push_back(basis_[static_cast<std::size_t>(i)]);
    // Tail-reduce every element against the others.
    std::vector<BasisElem<C>> out;
    for (std::size_t i = 0; i < min_basis.size(); ++i) {
      std::vector<BasisElem<C>> others;
      others.reserve(min_basis.size() - 1);
      for (std::size_t j = 0; j < min_basis.size(); ++j)
        if (j != i) others.push_back(min_basis[j]);
      TermVec<C> r = nf_internal<C>(TermVec<C>(min_basis[i].t), others, ord_, field_, nvars_, ctx_);
      if (r.empty()) continue;  // fully reducible duplicate
      normalize<C>(r, field_);
      Monomial lt = r.front().m;
      out.push_back({std::move(r), lt});
    }
    std::sort(out.begin(), out.end(), [&](const BasisElem<C>& a, const BasisElem<C>& b) {
      return ord_.compare(a.lt, b.lt, nvars_) > 0;
    });
    std::vector<Poly<C>> polys;
    polys.reserve(out.size());
    for (auto& e : out) polys.push_back(from_internal<C>(ring_, std::move(e.t)));
    return polys;
  }

  Ring ring_;
  MonomialOrder ord_;
  FieldTag field_;
  int nvars_;
  BudgetCtx ctx_;
  std::vector<TermVec<C>> input_;
  std::vector<BasisElem<C>> basis_;
  std::vector<Pair<C>> pairs_;
  std::uint32_t pending_sugar_ = 0;
  bool unit_ = false;
};

template <class C>
std::vector<BasisElem<C>> as_basis(const std::vector<Poly<C>>& gb, const MonomialOrder& ord, int nvars) {
  std::vector<BasisElem<C>> b;
  b.reserve(gb.size());
  for (const auto& g : gb) {
    if (g.is_zero()) continue;
    TermVec<C> t = to_internal<C>(g, ord, nvars);
    Monomial lt = t.front().m;
    b.push_back({std::move(t), lt});
  }
  return b;
}

}  // namespace

template <class C>
std::vector<Poly<C>> groebner_basis(const Ideal<C>& I, const MonomialOrder& ord,
                                    const GroebnerBudget& budget) {
  GB<C> engine(I, ord, budget);
  return engine.run();
}

template <class C>
Poly<C> normal_form(const Poly<C>& f, const std::vector<Poly<C>>& gb, const MonomialOrder& ord,
                    const GroebnerBudget& budget) {
  BudgetCtx ctx{budget};
  int nvars = f.ring()->nvars();
  auto basis = as_basis(gb, ord, nvars);
  TermVec<C> r = nf_internal<C>(to_internal<C>(f, ord, nvars), basis, ord, f.field(), nvars, ctx);
  return from_internal<C>(f.ring(), std::move(r));
}

template <class C>
bool in_ideal(const Poly<C>& f, const std::vector<Poly<C>>& gb, const MonomialOrder& ord) {
  return normal_form(f, gb, ord).is_zero();
}

namespace {

std::uint32_t mask_of(const std::vector<int>& vars) {
  std::uint32_t m = 0;
  for (int v : vars) m |= 1u << v;
  return m;
}

}  // namespace

template <class C>
Ideal<C> eliminate_keep_ring(const Ideal<C>& I, const std::vector<int>& drop,
                             const GroebnerBudget& budget) {
  std::uint32_t mask = mask_of(drop);
  auto gb = groebner_basis(I, MonomialOrder::eliminate(mask), budget);
  std::vector<Poly<C>> kept;
  for (auto& g : gb)
    if ((g.support_mask() & mask) == 0) kept.push_back(std::move(g));
  return Ideal<C>(I.ring, std::move(kept));
}

template <class C>
Ideal<C> eliminate(const Ideal<C>& I, const std::vector<int>& drop, const GroebnerBudget& budget) {
  Ideal<C> big = eliminate_keep_ring(I, drop, budget);
  std::uint32_t mask = mask_of(drop);
  std::vector<std::string> names;
  std::vector<int> map(static_cast<std::size_t>(I.ring->nvars()), -1);
  for (int i = 0; i < I.ring->nvars(); ++i) {
    if (mask & (1u << i)) continue;
    map[static_cast<std::size_t>(i)] = static_cast<int>(names.size());
    names.push_back(I.ring->name(i));
  }
  Ring sub = make_ring(std::move(names), I.ring->field());
  std::vector<Poly<C>> gens;
  gens.reserve(big.gens.size());
  for (const auto& g : big.gens) gens.push_back(rename_vars(g, sub, map));
  return Ideal<C>(sub, std::move(gens));
}

template <class C>
Ideal<C> saturate(const Ideal<C>& I, const Poly<C>& f, const GroebnerBudget& budget) {
  if (f.is_zero()) throw std::invalid_argument("saturation by zero");
  Ring ext = extend_ring(I.ring, {"_y"});
  int y = ext->nvars() - 1;
  std::vector<Poly<C>> gens;
  gens.reserve(I.gens.size() + 1);
  auto map = name_map<C>(I.ring, ext);
  for (const auto& g : I.gens) gens.push_back(rename_vars(g, ext, map));
  gens.push_back(Poly<C>::from_int(ext, 1) -
                 Poly<C>::variable(ext, y) * rename_vars(f, ext, map));
  Ideal<C> J(ext, std::move(gens));
  Ideal<C> elim = eliminate(J, {y}, budget);
  // eliminate() keeps remaining variable names in order, which match I.ring
  std::vector<Poly<C>> back;
  back.reserve(elim.gens.size());
  for (const auto& g : elim.gens) back.push_back(embed(g, I.ring));
  return Ideal<C>(I.ring, std::move(back));
}

template <class C>
Ideal<C> colon(const Ideal<C>& I, const Poly<C>& f, const GroebnerBudget& budget) {
  // I : f = (I cap <f>) / f, with the intersection via a tag variable.
  Ring ext = extend_ring(I.ring, {"_t"});
  int tv = ext->nvars() - 1;
  Poly<C> t = Poly<C>::variable(ext, tv);
  Poly<C> one_minus_t = Poly<C>::from_int(ext, 1) - t;
  auto map = name_map<C>(I.ring, ext);
  std::vector<Poly<C>> gens;
  for (const auto& g : I.gens) gens.push_back(t * rename_vars(g, ext, map));
  gens.push_back(one_minus_t * rename_vars(f, ext, map));
  Ideal<C> K(ext, std::move(gens));
  Ideal<C> inter = eliminate(K, {tv}, budget);
  std::vector<Poly<C>> out;
  for (const auto& g : inter.gens) out.push_back(divexact(embed(g, I.ring), f));
  return Ideal<C>(I.ring, std::move(out));
}

template <class C>
Ideal<C> saturate_by_ideal(const Ideal<C>& I, const std::vector<Poly<C>>& J, Rng& rng,
                           const GroebnerBudget& budget) {
  if (J.empty()) throw std::invalid_argument("saturation by empty ideal");
  auto combo = [&]() {
    Poly<C> g = Poly<C>::zero(I.ring);
    for (const auto& h : J) {
      long long c = rng.int_in(1, 1000);
      g = g + h.mul_scalar(detail::CoeffOps<C>::from_int(c, I.ring->field()));
    }
    return g;
  };
  Ideal<C> first = saturate(I, combo(), budget);
  if (J.size() == 1) return first;
  Ideal<C> second = saturate(I, combo(), budget);
  if (!ideal_equals(first, second, budget))
    throw std::runtime_error("saturation by ideal: random combinations disagree, instance too special");
  return first;
}

// ---------------------------------------------------------------------------
// Dimension / degree / point counting
// ---------------------------------------------------------------------------

namespace {

template <class C>
std::vector<Monomial> leading_monomials(const Ideal<C>& I, const GroebnerBudget& budget,
                                        std::vector<Poly<C>>* gb_out = nullptr) {
  auto gb = groebner_basis(I, MonomialOrder::grevlex(), budget);
  std::vector<Monomial> lts;
  lts.reserve(gb.size());
  for (const auto& g : gb) lts.push_back(g.lt().m);
  if (gb_out) *gb_out = std::move(gb);
  return lts;
}

// Keep only divisibility-minimal monomials.
std::vector<Monomial> minimalize(std::vector<Monomial> ms) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool min = true;
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (i == j) continue;
      if (ms[j].divides(ms[i]) && !(ms[i] == ms[j] && j > i)) {
        min = false;
        break;
      }
    }
    if (min) out.push_back(ms[i]);
  }
  return out;
}

// Max independent set of variables: no leading monomial supported inside it.
int max_independent_set(const std::vector<Monomial>& lts, int nvars) {
  std::vector<std::uint32_t> supports;
  for (const auto& m : lts) {
    std::uint32_t s = 0;
    for (int i = 0; i < nvars; ++i)
      if (m.e[i]) s |= 1u << i;
    if (s == 0) return -1;  // unit ideal
    supports.push_back(s);
  }
  std::uint32_t all = nvars >= 32 ? ~0u : (1u << nvars) - 1;
  int best = 0;
  // DFS over candidate sets, pruning by popcount bound.
  std::vector<std::pair<std::uint32_t, int>> stack{{all, 0}};
  std::set<std::uint32_t> seen;
  while (!stack.empty()) {
    auto [cand, depth] = stack.back();
    stack.pop_back();
    if (__builtin_popcount(cand) <= best) continue;
    std::uint32_t bad = 0;
    bool independent = true;
    for (std::uint32_t s : supports) {
      if ((s & ~cand) == 0) {
        independent = false;
        bad = s;
        break;
      }
    }
    if (independent) {
      best = std::max(best, __builtin_popcount(cand));
      continue;
    }
    // Branch: remove one variable of the violated support.
    for (int i = 0; i < nvars; ++i) {
      if (!(bad & (1u << i))) continue;
      std::uint32_t next = cand & ~(1u << i);
      if (seen.insert(next).second) stack.push_back({next, depth + 1});
    }
  }
  return best;
}

// Standard monomials of a zero-dimensional staircase.
void enum_standard(const std::vector<Monomial>& lts, int nvars, int var, Monomial& cur,
                   std::vector<Monomial>& out, std::size_t limit) {
  if (out.size() > limit) throw std::runtime_error("standard monomial enumeration exceeded limit");
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (std::uint16_t e = 0;; ++e) {
    cur.e[var] = e;
    cur.deg += e;
    bool divisible = false;
    for (const auto& m : lts) {
      bool d = true;
      for (int i = 0; i <= var; ++i)
        if (m.e[i] > cur.e[i]) {
          d = false;
          break;
        }
      for (int i = var + 1; i < nvars; ++i)
        if (m.e[i] > 0) {
          d = false;
          break;
        }
      if (d) {
        divisible = true;
        break;
      }
    }
    cur.deg -= e;
    if (divisible) {
      cur.e[var] = 0;
      return;  // larger exponents stay divisible
    }
    cur.e[var] = e;
    cur.deg += e;
    enum_standard(lts, nvars, var + 1, cur, out, limit);
    cur.deg -= e;
    cur.e[var] = 0;
    if (e > (1 << 14)) throw std::runtime_error("staircase is not zero-dimensional");
  }
}

}  // namespace

std::vector<mpz_class> hilbert_numerator(const std::vector<Monomial>& lts_in, int nvars) {
  std::vector<Monomial> gens = minimalize(lts_in);
  // polynomial in t as coefficient vector
  using PolyT = std::vector<mpz_class>;
  auto mul = [](const PolyT& a, const PolyT& b) {
    PolyT r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  auto add_shifted = [](PolyT& a, const PolyT& b, int shift) {
    if (a.size() < b.size() + static_cast<std::size_t>(shift))
      a.resize(b.size() + static_cast<std::size_t>(shift), mpz_class(0));
    for (std::size_t j = 0; j < b.size(); ++j) a[j + static_cast<std::size_t>(shift)] += b[j];
  };
  std::function<PolyT(std::vector<Monomial>)> rec = [&](std::vector<Monomial> ms) -> PolyT {
    ms = minimalize(std::move(ms));
    if (ms.empty()) return {mpz_class(1)};
    for (const auto& m : ms)
      if (m.is_one()) return {mpz_class(0)};
    // Base case: pairwise coprime generators.
    bool coprime = true;
    for (std::size_t i = 0; i < ms.size() && coprime; ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j)
        if (!Monomial::coprime(ms[i], ms[j])) {
          coprime = false;
          break;
        }
    if (coprime) {
      PolyT r{mpz_class(1)};
      for (const auto& m : ms) {
        PolyT f(static_cast<std::size_t>(m.deg) + 1, mpz_class(0));
        f[0] = 1;
        f[m.deg] -= 1;
        r = mul(r, f);
      }
      return r;
    }
    // Pivot: most frequent variable.
    std::array<int, kMaxVars> freq{};
    for (const auto& m : ms)
      for (int i = 0; i < nvars; ++i)
        if (m.e[i]) ++freq[static_cast<std::size_t>(i)];
    int pivot = 0;
    for (int i = 1; i < nvars; ++i)
      if (freq[static_cast<std::size_t>(i)] > freq[static_cast<std::size_t>(pivot)]) pivot = i;
    // HN(I) = HN(I + <x>) + t * HN(I : x)
    std::vector<Monomial> plus{Monomial::var(pivot)};
    for (const auto& m : ms)
      if (m.e[pivot] == 0) plus.push_back(m);
    std::vector<Monomial> quot;
    for (const auto& m : ms) {
      Monomial q = m;
      if (q.e[pivot]) {
        q.e[pivot] -= 1;
        q.deg -= 1;
      }
      quot.push_back(q);
    }
    PolyT a = rec(std::move(plus));
    PolyT b = rec(std::move(quot));
    add_shifted(a, b, 1);
    return a;
  };
  return rec(gens);
}

template <class C>
int ideal_dimension(const Ideal<C>& I, const GroebnerBudget& budget) {
  if (I.gens.empty()) return I.ring->nvars();
  auto lts = leading_monomials(I, budget);
  if (lts.empty()) return I.ring->nvars();
  return max_independent_set(minimalize(lts), I.ring->nvars());
}

template <class C>
long long ideal_degree(const Ideal<C>& I, const GroebnerBudget& budget) {
  if (!I.homogeneous) throw std::domain_error("ideal_degree requires a homogeneous ideal");
  auto lts = leading_monomials(I, budget);
  if (!lts.empty() && lts[0].is_one()) throw std::domain_error("unit ideal has no degree");
  auto hn = hilbert_numerator(lts, I.ring->nvars());
  // Cancel (1-t) factors: divide until HN(1) != 0.
  auto eval1 = [](const std::vector<mpz_class>& p) {
    mpz_class s = 0;
    for (const auto& c : p) s += c;
    return s;
  };
  std::vector<mpz_class> q = hn;
  while (eval1(q) == 0 && q.size() > 1) {
    // divide by (1 - t): synthetic division
    std::vector<mpz_class> d(q.size() - 1);
    mpz_class carry = 0;
    // q(t) = (1-t) * d(t); d_k = q_k + d_{k-1}
    mpz_class prev = 0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      d[k] = q[k] + prev;
      prev = d[k];
    }
    q = std::move(d);
  }
  mpz_class deg = eval1(q);
  if (deg < 0) deg = -deg;
  return static_cast<long long>(deg.get_si());
}

namespace {

// Dense univariate polynomial helpers over the coefficient field.
template <class C>
struct UniPoly {
  std::vector<C> c;  // c[0] + c[1] z + ...
  void trim(const FieldTag& f) {
    while (!c.empty() && detail::CoeffOps<C>::is_zero(c.back())) c.pop_back();
    (void)f;
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
};

template <class C>
UniPoly<C> uni_derivative(const UniPoly<C>& a, const FieldTag& f) {
  UniPoly<C> d;
  for (std::size_t k = 1; k < a.c.size(); ++k)
    d.c.push_back(detail::CoeffOps<C>::mul(a.c[k], detail::CoeffOps<C>::from_int(static_cast<long long>(k), f), f));
  d.trim(f);
  return d;
}

template <class C>
UniPoly<C> uni_mod(UniPoly<C> a, const UniPoly<C>& b, const FieldTag& f) {
  while (a.deg() >= b.deg() && a.deg() >= 0) {
    C factor = detail::CoeffOps<C>::mul(a.c.back(), detail::CoeffOps<C>::inv(b.c.back(), f), f);
    int shift = a.deg() - b.deg();
    for (int k = 0; k <= b.deg(); ++k) {
      a.c[static_cast<std::size_t>(k + shift)] = detail::CoeffOps<C>::sub(
          a.c[static_cast<std::size_t>(k + shift)], detail::CoeffOps<C>::mul(factor, b.c[static_cast<std::size_t>(k)], f), f);
    }
    a.trim(f);
  }
  return a;
}

template <class C>
UniPoly<C> uni_gcd(UniPoly<C> a, UniPoly<C> b, const FieldTag& f) {
  a.trim(f);
  b.trim(f);
  while (b.deg() >= 0) {
    UniPoly<C> r = uni_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

template <class C>
PointCount count_points(const Ideal<C>& I, Rng& rng, const GroebnerBudget& budget) {
  std::vector<Poly<C>> gb;
  auto lts = leading_monomials(I, budget, &gb);
  if (!lts.empty() && lts[0].is_one()) return {0, 0, true};
  int nv = I.ring->nvars();
  if (max_independent_set(minimalize(lts), nv) != 0)
    throw std::domain_error("count_points: ideal is not zero-dimensional");
  std::vector<Monomial> std_mons;
  Monomial cur;
  enum_standard(minimalize(lts), nv, 0, cur, std_mons, 2'000'000);
  long long vdim = static_cast<long long>(std_mons.size());

  std::unordered_map<Monomial, int, MonomialHash> index;
  for (std::size_t i = 0; i < std_mons.size(); ++i) index.emplace(std_mons[i], static_cast<int>(i));
  const FieldTag& f = I.ring->field();

  auto to_vec = [&](const Poly<C>& p) {
    std::vector<C> v(std_mons.size(), detail::CoeffOps<C>::from_int(0, f));
    for (const auto& t : p.terms()) {
      auto it = index.find(t.m);
      if (it == index.end()) throw std::logic_error("normal form outside standard monomials");
      v[static_cast<std::size_t>(it->second)] = t.c;
    }
    return v;
  };

  PointCount best{vdim, 0, false};
  for (int attempt = 0; attempt < 3; ++attempt) {
    Poly<C> ell = Poly<C>::zero(I.ring);
    for (int i = 0; i < nv; ++i) {
      long long coeff = f.is_prime_field() ? static_cast<long long>(rng.residue(f.p))
                                           : rng.int_in(-50, 50);
      ell = ell + Poly<C>::variable(I.ring, i).mul_scalar(detail::CoeffOps<C>::from_int(coeff, f));
    }
    // Minimal polynomial of multiplication by ell via incremental Gaussian
    // elimination on the Krylov sequence 1, ell, ell^2, ...
    std::vector<std::vector<C>> rows;        // reduced echelon rows
    std::vector<int> pivots;                 // pivot column per row
    std::vector<std::vector<C>> row_combos;  // expression in powers of ell
    UniPoly<C> minpoly;
    Poly<C> power = Poly<C>::from_int(I.ring, 1);
    for (int k = 0;; ++k) {
      std::vector<C> v = to_vec(power);
      std::vector<C> combo(static_cast<std::size_t>(k) + 1, detail::CoeffOps<C>::from_int(0, f));
      combo[static_cast<std::size_t>(k)] = detail::CoeffOps<C>::one(f);
      // reduce v by existing rows
      for (std::size_t r = 0; r < rows.size(); ++r) {
        C piv = v[static_cast<std::size_t>(pivots[r])];
        if (detail::CoeffOps<C>::is_zero(piv)) continue;
        for (std::size_t cidx = 0; cidx < v.size(); ++cidx)
          v[cidx] = detail::CoeffOps<C>::sub(v[cidx], detail::CoeffOps<C>::mul(piv, rows[r][cidx], f), f);
        if (row_combos[r].size() > combo.size()) combo.resize(row_combos[r].size(), detail::CoeffOps<C>::from_int(0, f));
        for (std::size_t cidx = 0; cidx < row_combos[r].size(); ++cidx)
          combo[cidx] = detail::CoeffOps<C>::sub(combo[cidx], detail::CoeffOps<C>::mul(piv, row_combos[r][cidx], f), f);
      }
      int pivot = -1;
      for (std::size_t cidx = 0; cidx < v.size(); ++cidx)
        if (!detail::CoeffOps<C>::is_zero(v[cidx])) {
          pivot = static_cast<int>(cidx);
          break;
        }
      if (pivot < 0) {
        minpoly.c = combo;
        minpoly.trim(f);
        break;
      }
      C inv = detail::CoeffOps<C>::inv(v[static_cast<std::size_t>(pivot)], f);
      for (auto& x : v) x = detail::CoeffOps<C>::mul(x, inv, f);
      for (auto& x : combo) x = detail::CoeffOps<C>::mul(x, inv, f);
      rows.push_back(std::move(v));
      pivots.push_back(pivot);
      row_combos.push_back(std::move(combo));
      power = normal_form(power * ell, gb, MonomialOrder::grevlex(), budget);
      if (k > vdim + 1) throw std::logic_error("minimal polynomial did not terminate");
    }
    int d = minpoly.deg();
    UniPoly<C> der = uni_derivative(minpoly, f);
    UniPoly<C> g = uni_gcd(minpoly, der, f);
    bool squarefree = g.deg() <= 0;
    long long distinct = d - std::max(0, g.deg());
    best.distinct = std::max(best.distinct, distinct);
    if (squarefree && d == vdim) {
      best.radical = true;
      best.distinct = vdim;
      break;
    }
  }
  return best;
}

template <class C>
bool ideal_equals(const Ideal<C>& I, const Ideal<C>& J, const GroebnerBudget& budget) {
  auto gi = groebner_basis(I, MonomialOrder::grevlex(), budget);
  auto gj = groebner_basis(J, MonomialOrder::grevlex(), budget);
  for (const auto& f : J.gens)
    if (!in_ideal(embed(f, I.ring), gi, MonomialOrder::grevlex())) return false;
  for (const auto& f : I.gens)
    if (!in_ideal(embed(f, J.ring), gj, MonomialOrder::grevlex())) return false;
  return true;
}

template <class C>
bool in_radical(const Poly<C>& f, const Ideal<C>& I, const GroebnerBudget& budget) {
  Ring ext = extend_ring(I.ring, {"_y"});
  int y = ext->nvars() - 1;
  std::vector<Poly<C>> gens;
  auto map = name_map<C>(I.ring, ext);
  for (const auto& g : I.gens) gens.push_back(rename_vars(g, ext, map));
  gens.push_back(Poly<C>::from_int(ext, 1) - Poly<C>::variable(ext, y) * rename_vars(f, ext, map));
  auto gb = groebner_basis(Ideal<C>(ext, std::move(gens)), MonomialOrder::grevlex(), budget);
  return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

template <class C>
Ideal<C> dehomogenize_random(const Ideal<C>& I, Rng& rng) {
  Poly<C> ell = Poly<C>::zero(I.ring);
  const FieldTag& f = I.ring->field();
  for (int i = 0; i < I.ring->nvars(); ++i) {
    long long c = f.is_prime_field() ? static_cast<long long>(rng.nonzero_residue(f.p)) : rng.int_in(1, 97);
    ell = ell + Poly<C>::variable(I.ring, i).mul_scalar(detail::CoeffOps<C>::from_int(c, f));
  }
  std::vector<Poly<C>> gens = I.gens;
  gens.push_back(ell - Poly<C>::from_int(I.ring, 1));
  return Ideal<C>(I.ring, std::move(gens));
}

template <class C>
PointCount count_points_off(const Ideal<C>& I, const std::vector<Poly<C>>& inverted, Rng& rng,
                            const GroebnerBudget& budget) {
  Ring ext = extend_ring(I.ring, {"_u"});
  int u = ext->nvars() - 1;
  auto map = name_map<C>(I.ring, ext);
  std::vector<Poly<C>> gens;
  gens.reserve(I.gens.size() + 1);
  for (const auto& g : I.gens) gens.push_back(rename_vars(g, ext, map));
  Poly<C> prod = Poly<C>::variable(ext, u);
  for (const auto& h : inverted) prod = prod * rename_vars(h, ext, map);
  gens.push_back(prod - Poly<C>::from_int(ext, 1));
  return count_points(Ideal<C>(ext, std::move(gens)), rng, budget);
}

template <class C>
int dimension_off(const Ideal<C>& I, const std::vector<Poly<C>>& inverted,
                  const GroebnerBudget& budget) {
  Ring ext = extend_ring(I.ring, {"_u"});
  int u = ext->nvars() - 1;
  auto map = name_map<C>(I.ring, ext);
  std::vector<Poly<C>> gens;
  for (const auto& g : I.gens) gens.push_back(rename_vars(g, ext, map));
  Poly<C> prod = Poly<C>::variable(ext, u);
  for (const auto& h : inverted) prod = prod * rename_vars(h, ext, map);
  gens.push_back(prod - Poly<C>::from_int(ext, 1));
  int d = ideal_dimension(Ideal<C>(ext, std::move(gens)), budget);
  // The chart variable _u is determined by the others: same dimension.
  return d;
}

template <class C>
Poly<C> divexact(const Poly<C>& g, const Poly<C>& f) {
  if (f.is_zero()) throw std::domain_error("division by zero polynomial");
  const MonomialOrder ord = MonomialOrder::grevlex();
  const FieldTag& field = g.field();
  int nvars = g.ring()->nvars();
  Poly<C> rem = g;
  std::vector<typename Poly<C>::Term> qterms;
  while (!rem.is_zero()) {
    const auto& lt = rem.lt();
    if (!f.lt().m.divides(lt.m)) throw std::domain_error("divexact: not divisible");
    Monomial m = lt.m.divide(f.lt().m);
    C c;
    if constexpr (std::is_same_v<C, Rational>) {
      c = lt.c / f.lt().c;
    } else {
      c = detail::CoeffOps<C>::mul(lt.c, detail::CoeffOps<C>::inv(f.lt().c, field), field);
    }
    qterms.push_back({m, c});
    rem = rem - f.mul_term(m, c);
  }
  (void)ord;
  (void)nvars;
  return Poly<C>::from_terms(g.ring(), std::move(qterms));
}

template <class C>
bool spair_criterion_holds(const std::vector<Poly<C>>& gb, const MonomialOrder& ord) {
  if (gb.empty()) return true;
  const Ring& ring = gb[0].ring();
  const FieldTag& field = ring->field();
  for (std::size_t i = 0; i < gb.size(); ++i) {
    for (std::size_t j = i + 1; j < gb.size(); ++j) {
      // S-polynomial under ord
      auto lt = [&](const Poly<C>& p) {
        Monomial best = p.terms()[0].m;
        C c = p.terms()[0].c;
        for (const auto& t : p.terms())
          if (ord.compare(t.m, best, ring->nvars()) > 0) {
            best = t.m;
            c = t.c;
          }
        return std::make_pair(best, c);
      };
      auto [mi, ci] = lt(gb[i]);
      auto [mj, cj] = lt(gb[j]);
      Monomial l = Monomial::lcm(mi, mj);
      Poly<C> s = gb[i].mul_term(l.divide(mi), cj) - gb[j].mul_term(l.divide(mj), ci);
      if (!normal_form(s, gb, ord).is_zero()) return false;
      (void)field;
    }
  }
  return true;
}

#define GRASSDIST_INSTANTIATE(C)                                                                   \
  template struct Ideal<C>;                                                                        \
  template std::vector<Poly<C>> groebner_basis(const Ideal<C>&, const MonomialOrder&,              \
                                               const GroebnerBudget&);                             \
  template Poly<C> normal_form(const Poly<C>&, const std::vector<Poly<C>>&, const MonomialOrder&,  \
                               const GroebnerBudget&);                                             \
  template bool in_ideal(const Poly<C>&, const std::vector<Poly<C>>&, const MonomialOrder&);       \
  template Ideal<C> eliminate(const Ideal<C>&, const std::vector<int>&, const GroebnerBudget&);    \
  template Ideal<C> eliminate_keep_ring(const Ideal<C>&, const std::vector<int>&,                  \
                                        const GroebnerBudget&);                                    \
  template Ideal<C> saturate(const Ideal<C>&, const Poly<C>&, const GroebnerBudget&);              \
  template Ideal<C> colon(const Ideal<C>&, const Poly<C>&, const GroebnerBudget&);                 \
  template Ideal<C> saturate_by_ideal(const Ideal<C>&, const std::vector<Poly<C>>&, Rng&,          \
                                      const GroebnerBudget&);                                      \
  template int ideal_dimension(const Ideal<C>&, const GroebnerBudget&);                            \
  template long long ideal_degree(const Ideal<C>&, const GroebnerBudget&);                         \
  template PointCount count_points(const Ideal<C>&, Rng&, const GroebnerBudget&);                  \
  template bool ideal_equals(const Ideal<C>&, const Ideal<C>&, const GroebnerBudget&);             \
  template bool in_radical(const Poly<C>&, const Ideal<C>&, const GroebnerBudget&);                \
  template Ideal<C> dehomogenize_random(const Ideal<C>&, Rng&);                                    \
  template PointCount count_points_off(const Ideal<C>&, const std::vector<Poly<C>>&, Rng&,         \
                                       const GroebnerBudget&);                                     \
  template int dimension_off(const Ideal<C>&, const std::vector<Poly<C>>&, const GroebnerBudget&); \
  template Poly<C> divexact(const Poly<C>&, const Poly<C>&);                                       \
  template bool spair_criterion_holds(const std::vector<Poly<C>>&, const MonomialOrder&);

GRASSDIST_INSTANTIATE(Rational)
GRASSDIST_INSTANTIATE(std::uint64_t)
#undef GRASSDIST_INSTANTIATE

}  // namespace grassdist
