// Normalized gamma-twisted Hochschild complex of the polynomial Weyl algebra.
//
// Chains are finite combinations of elementary tensors A0 (x) A1 (x) ... (x) Ak
// of monomials. The boundary twists the last face:
//   b(A0 (x) ... (x) Ak) = sum_{i<k} (-1)^i A0 (x) .. (x) Ai A(i+1) (x) .. (x) Ak
//                        + (-1)^k g^-1(Ak) A0 (x) A1 (x) .. (x) A(k-1),
// which is the Hochschild boundary with coefficients in the bimodule whose left
// action is precomposed with g^-1. Tensors with an identity entry in a slot
// i >= 1 are degenerate and identified with zero.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqlef/cyclotomic.hpp"
#include "eqlef/error.hpp"
#include "eqlef/gtrace.hpp"
#include "eqlef/linalg.hpp"
#include "eqlef/weyl.hpp"

namespace eqlef {

using Tensor = std::vector<Monomial>;
using Weight = std::array<int, kMaxVars>;

namespace detail {

inline Weight tensor_weight(const Tensor& t) {
  Weight w{};
  for (const auto& m : t) {
    const auto mw = m.weight();
    for (int i = 0; i < kMaxVars; ++i) w[i] += mw[i];
  }
  return w;
}

inline int tensor_degree(const Tensor& t) {
  int d = 0;
  for (const auto& m : t) d += m.total_degree();
  return d;
}

inline bool degenerate(const Tensor& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i].is_identity()) return true;
  return false;
}

}  // namespace detail

class TwistedChain {
 public:
  using Terms = std::map<Tensor, Cyclotomic>;

  TwistedChain(int n, int degree) : n_(n), degree_(degree) {
    detail::check_vars(n);
    if (degree < 0) throw Error("chain degree must be non-negative");
  }

  /// Multilinear expansion of c * A0 (x) ... (x) Ak for scalar operators.
  static TwistedChain elementary(const std::vector<FormalDiffOp>& ops, const Cyclotomic& c = Cyclotomic(1)) {
    if (ops.empty()) throw Error("elementary chain needs at least one factor");
    const int n = ops.front().n();
    TwistedChain out(n, static_cast<int>(ops.size()) - 1);
    std::vector<std::pair<Tensor, Cyclotomic>> partial{{Tensor{}, c}};
    for (const auto& op : ops) {
      if (op.n() != n || op.rank() != 1) throw Error("chains are built from scalar operators in a common dimension");
      std::vector<std::pair<Tensor, Cyclotomic>> next;
      for (const auto& [t, v] : partial)
        for (const auto& [m, coef] : op.terms()) {
          Tensor u = t;
          u.push_back(m);
          next.emplace_back(std::move(u), v * coef(0, 0));
        }
      partial = std::move(next);
    }
    for (auto& [t, v] : partial) out.add(t, v);
    return out;
  }

  static TwistedChain from_operator(const FormalDiffOp& a) { return elementary({a}); }

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Tensor& t, const Cyclotomic& c) {
    if (static_cast<int>(t.size()) != degree_ + 1) throw Error("tensor length does not match chain degree");
    if (c.is_zero() || detail::degenerate(t)) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  TwistedChain& operator+=(const TwistedChain& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  TwistedChain& operator-=(const TwistedChain& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  friend TwistedChain operator+(TwistedChain a, const TwistedChain& b) { return a += b; }
  friend TwistedChain operator-(TwistedChain a, const TwistedChain& b) { return a -= b; }
  friend TwistedChain operator*(const Cyclotomic& s, const TwistedChain& a) {
    TwistedChain r(a.n_, a.degree_);
    for (const auto& [t, c] : a.terms_) r.add(t, s * c);
    return r;
  }
  friend bool operator==(const TwistedChain& a, const TwistedChain& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// The degree-0 chain as an operator.
  FormalDiffOp to_operator() const {
    if (degree_ != 0) throw Error("to_operator: chain is not of degree 0");
    FormalDiffOp a(n_, 1);
    for (const auto& [t, c] : terms_) a.add_term(t[0], CMatrix::scalar(c));
    return a;
  }

  int max_tensor_degree() const {
    int d = 0;
    for (const auto& [t, c] : terms_) d = std::max(d, detail::tensor_degree(t));
    return d;
  }

 private:
  void check(const TwistedChain& o) const {
    if (o.n_ != n_ || o.degree_ != degree_) throw Error("chain dimension or degree mismatch");
  }

  int n_;
  int degree_;
  Terms terms_;
};

namespace detail {

/// b applied to one elementary tensor, accumulated into out with factor s.
inline void boundary_term(const Tensor& t, const Cyclotomic& s, const DiagonalAction& ginv, TwistedChain& out) {
  const int k = static_cast<int>(t.size()) - 1;
  for (int i = 0; i < k; ++i) {
    const Cyclotomic sign = (i % 2 == 0) ? s : -s;
    for (const auto& [m, c] : compose_monomials(t[i], t[i + 1])) {
      Tensor u;
      u.reserve(k);
      u.insert(u.end(), t.begin(), t.begin() + i);
      u.push_back(m);
      u.insert(u.end(), t.begin() + i + 2, t.end());
      out.add(u, sign * Cyclotomic(Rational(c)));
    }
  }
  const Cyclotomic last = ((k % 2 == 0) ? s : -s) * ginv.weight(t[k]);
  for (const auto& [m, c] : compose_monomials(t[k], t[0])) {
    Tensor u;
    u.reserve(k);
    u.push_back(m);
    u.insert(u.end(), t.begin() + 1, t.begin() + k);
    out.add(u, last * Cyclotomic(Rational(c)));
  }
}

inline void check_action(const TwistedChain& c, const DiagonalAction& g) {
  if (g.n() != c.n()) throw Error("chain and group element have different dimensions");
  if (g.rank() != 1) throw Error("twisted chains use scalar operators: fiber must be 1x1");
}

}  // namespace detail

inline TwistedChain boundary(const TwistedChain& c, const DiagonalAction& g) {
  if (c.degree() < 1) throw Error("boundary of a degree-0 chain");
  detail::check_action(c, g);
  const DiagonalAction ginv = g.inverse();
  TwistedChain out(c.n(), c.degree() - 1);
  for (const auto& [t, s] : c.terms()) detail::boundary_term(t, s, ginv, out);
  return out;
}

/// sum over permutations e of sign(e) 1 (x) u_e(1) (x) ... (x) u_e(2m) with
/// u_(2i-1) = d_i, u_(2i) = y_i running over the m fixed coordinates of g.
inline TwistedChain generator_cycle(int n, const DiagonalAction& g) {
  if (g.n() != n) throw Error("generator_cycle: dimension mismatch");
  std::vector<Monomial> u;
  for (int i = 0; i < n; ++i) {
    if (!g.fixes_direction(i)) continue;
    u.push_back(Monomial::d_power(i, 1));
    u.push_back(Monomial::y_power(i, 1));
  }
  const int deg = static_cast<int>(u.size());
  TwistedChain out(n, deg);
  std::vector<int> perm(deg);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < deg; ++i)
      for (int j = i + 1; j < deg; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    Tensor t{Monomial{}};
    for (int p : perm) t.push_back(u[p]);
    out.add(t, Cyclotomic(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace detail {

/// All monomials in n variables of total degree <= bound.
inline std::vector<Monomial> monomials_up_to(int n, int bound) {
  std::vector<Monomial> out;
  Monomial m;
  // Odometer over 2n exponents with pruning on the running degree.
  std::function<void(int, int)> rec = [&](int slot, int used) {
    if (slot == 2 * n) {
      out.push_back(m);
      return;
    }
    for (int e = 0; used + e <= bound; ++e) {
      auto& ref = slot < n ? m.y[slot] : m.d[slot - n];
      ref = static_cast<std::int16_t>(e);
      rec(slot + 1, used + e);
    }
    (slot < n ? m.y[slot] : m.d[slot - n]) = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a < b;
  });
  return out;
}

/// Elementary tensors with `slots` entries, total degree <= bound, whose weight
/// lies in `weights`; normalized ones have no identity in slots >= 1.
inline std::vector<Tensor> tensors_up_to(int n, int slots, int bound, const std::set<Weight>& weights,
                                         bool normalized = true) {
  const auto monos = monomials_up_to(n, bound);
  std::vector<Tensor> out;
  Tensor t(slots);
  std::function<void(int, int)> rec = [&](int slot, int used) {
    if (slot == slots) {
      if (weights.count(tensor_weight(t))) out.push_back(t);
      return;
    }
    const int reserve = normalized ? slots - slot - 1 : 0;  // later non-identity slots need degree >= 1
    for (const auto& m : monos) {
      const int d = m.total_degree();
      if (used + d + reserve > bound) break;
      if (normalized && slot >= 1 && d == 0) continue;
      t[slot] = m;
      rec(slot + 1, used + d);
    }
  };
  rec(0, 0);
  return out;
}

inline std::set<Weight> chain_weights(const TwistedChain& c) {
  std::set<Weight> w;
  for (const auto& [t, v] : c.terms()) w.insert(tensor_weight(t));
  return w;
}

inline SparseVector<Cyclotomic> to_sparse(const TwistedChain& c, Indexer<Tensor>& rows) {
  SparseVector<Cyclotomic> v;
  for (const auto& [t, s] : c.terms()) v[rows(t)] = s;
  return v;
}

}  // namespace detail

/// The span of twisted commutators b(X (x) Y) over monomials with
/// deg X + deg Y <= bound, organised by weight so that many operators can be
/// reduced against it.
class TwistedCommutatorSpan {
 public:
  TwistedCommutatorSpan(DiagonalAction g, int degree_bound) : g_(std::move(g)), bound_(degree_bound) {
    if (g_.rank() != 1) throw Error("twisted commutator span needs a scalar action");
  }

  int degree_bound() const { return bound_; }

  /// The unique c with A - c * 1 in the span; throws if the bound is too small.
  Cyclotomic class_of(const FormalDiffOp& a) {
    if (a.n() != g_.n()) throw Error("hh0_class: dimension mismatch");
    if (a.total_degree() > bound_) throw Error("operator exceeds the degree bound");
    std::map<Weight, FormalDiffOp> sectors;
    for (const auto& [m, c] : a.terms()) {
      auto [it, ins] = sectors.try_emplace(m.weight(), FormalDiffOp(a.n(), 1));
      it->second.add_term(m, c);
    }
    Cyclotomic lambda(0);
    for (const auto& [w, part] : sectors) {
      Sector& s = sector(w);
      auto r = s.elim.reduce(to_vector(part, s.rows));
      if (!r.residual.empty()) throw Error("hh0_class: operator not reduced at this bound, raise degree_bound");
      if (w == Weight{}) {
        auto it = r.combination.find(s.unit_column);
        if (it != r.combination.end()) lambda = it->second;
      }
    }
    return lambda;
  }

 private:
  struct Sector {
    Indexer<Monomial> rows;
    SparseEliminator<Cyclotomic> elim;
    std::size_t unit_column = static_cast<std::size_t>(-1);
  };

  static SparseVector<Cyclotomic> to_vector(const FormalDiffOp& a, Indexer<Monomial>& rows) {
    SparseVector<Cyclotomic> v;
    for (const auto& [m, c] : a.terms()) v[rows(m)] = c(0, 0);
    return v;
  }

  Sector& sector(const Weight& w) {
    auto it = sectors_.find(w);
    if (it != sectors_.end()) return it->second;
    Sector& s = sectors_[w];
    const auto pairs = detail::tensors_up_to(g_.n(), 2, bound_, {w});
    for (const auto& t : pairs) {
      TwistedChain x(g_.n(), 1);
      x.add(t, Cyclotomic(1));
      s.elim.add_column(to_vector(boundary(x, g_).to_operator(), s.rows));
    }
    if (w == Weight{}) {
      s.unit_column = s.elim.num_columns();
      if (!s.elim.add_column(to_vector(FormalDiffOp::identity(g_.n()), s.rows)))
        throw Error("hh0_class: the unit is a twisted commutator at this bound");
    }
    return s;
  }

  DiagonalAction g_;
  int bound_;
  std::map<Weight, Sector> sectors_;
};

/// Class of A in HH_0 relative to [1], by exact linear algebra.
inline Cyclotomic hh0_class(const FormalDiffOp& a, const DiagonalAction& g, int degree_bound) {
  detail::require_fully_twisted(g);
  TwistedCommutatorSpan span(g, degree_bound);
  return span.class_of(a);
}

namespace detail {

// Koszul comparison for the one-variable Weyl algebra A. The Koszul bimodule
// resolution 0 -> A (x) L2 (x) A -> A (x) V (x) A -> A (x) A has no term above
// degree 2, so the comparison map f2 from the bar resolution kills boundaries
// exactly; a 2-chain with nonzero image cannot be a boundary.

struct KeyBi {
  int slot;  // 0: e_y, 1: e_d, 2: top generator
  Monomial left, right;
  auto operator<=>(const KeyBi&) const = default;
};

using BiElem = std::map<KeyBi, Cyclotomic>;

inline void bi_add(BiElem& e, const KeyBi& k, const Cyclotomic& c) {
  auto [it, ins] = e.try_emplace(k, c);
  if (!ins) it->second += c;
  if (it->second.is_zero()) e.erase(it);
}

inline BiElem left_mul(const Monomial& x, const BiElem& e) {
  BiElem out;
  for (const auto& [k, c] : e)
    for (const auto& [m, f] : compose_monomials(x, k.left)) bi_add(out, {k.slot, m, k.right}, c * Cyclotomic(Rational(f)));
  return out;
}

inline BiElem right_mul(const BiElem& e, const Monomial& z) {
  BiElem out;
  for (const auto& [k, c] : e)
    for (const auto& [m, f] : compose_monomials(k.right, z)) bi_add(out, {k.slot, k.left, m}, c * Cyclotomic(Rational(f)));
  return out;
}

/// f1 on the monomial y^p d^q viewed as the word y..y d..d.
inline BiElem koszul_f1(const Monomial& a) {
  BiElem out;
  const int p = a.y[0], q = a.d[0];
  for (int i = 0; i < p; ++i) {
    Monomial r = Monomial::y_power(0, p - 1 - i);
    r.d[0] = static_cast<std::int16_t>(q);
    bi_add(out, {0, Monomial::y_power(0, i), r}, Cyclotomic(1));
  }
  for (int j = 0; j < q; ++j) {
    Monomial l = Monomial::y_power(0, p);
    l.d[0] = static_cast<std::int16_t>(j);
    bi_add(out, {1, l, Monomial::d_power(0, q - 1 - j)}, Cyclotomic(1));
  }
  return out;
}

/// d2(x (x) r (x) z) = (x d (x) z - x (x) d z) e_y + (x (x) y z - x y (x) z) e_d.
inline BiElem koszul_d2(const Monomial& x, const Monomial& z) {
  BiElem out;
  const Monomial y = Monomial::y_power(0, 1), d = Monomial::d_power(0, 1);
  for (const auto& [m, f] : compose_monomials(x, d)) bi_add(out, {0, m, z}, Cyclotomic(Rational(f)));
  for (const auto& [m, f] : compose_monomials(d, z)) bi_add(out, {0, x, m}, -Cyclotomic(Rational(f)));
  for (const auto& [m, f] : compose_monomials(y, z)) bi_add(out, {1, x, m}, Cyclotomic(Rational(f)));
  for (const auto& [m, f] : compose_monomials(x, y)) bi_add(out, {1, m, z}, -Cyclotomic(Rational(f)));
  return out;
}

/// f2(1 (x) a1 (x) a2 (x) 1) as a combination of x (x) r (x) z, keyed by (x, z).
inline std::map<std::pair<Monomial, Monomial>, Cyclotomic> koszul_f2(const Monomial& a1, const Monomial& a2) {
  BiElem target = left_mul(a1, koszul_f1(a2));
  for (const auto& [k, c] : right_mul(koszul_f1(a1), a2)) bi_add(target, k, c);
  for (const auto& [m, f] : compose_monomials(a1, a2))
    for (const auto& [k, c] : koszul_f1(m)) bi_add(target, k, -c * Cyclotomic(Rational(f)));
  std::map<std::pair<Monomial, Monomial>, Cyclotomic> result;
  if (target.empty()) return result;

  const int bound = a1.total_degree() + a2.total_degree() - 2;
  Weight w{};
  w[0] = a1.weight()[0] + a2.weight()[0];
  const auto cands = tensors_up_to(1, 2, std::max(bound, 0), {w}, false);
  Indexer<KeyBi> rows;
  SparseEliminator<Cyclotomic> elim;
  std::vector<std::pair<Monomial, Monomial>> cols;
  for (const auto& t : cands) {
    SparseVector<Cyclotomic> v;
    for (const auto& [k, c] : koszul_d2(t[0], t[1])) v[rows(k)] = c;
    elim.add_column(v);
    cols.emplace_back(t[0], t[1]);
  }
  SparseVector<Cyclotomic> rhs;
  for (const auto& [k, c] : target) rhs[rows(k)] = c;
  auto r = elim.reduce(rhs);
  if (!r.residual.empty()) throw Error("Koszul comparison map: no preimage found");
  for (const auto& [j, c] : r.combination) result[cols[j]] = c;
  return result;
}

}  // namespace detail

/// Image of a degree-2 chain in A (x) Lambda^2 V with coefficients in the
/// twisted bimodule, for one variable; zero on every boundary.
inline FormalDiffOp koszul_class(const TwistedChain& c, const DiagonalAction& g) {
  detail::check_action(c, g);
  if (c.n() != 1 || c.degree() != 2) throw Error("koszul_class is defined for degree-2 chains in one variable");
  const DiagonalAction ginv = g.inverse();
  std::map<std::pair<Monomial, Monomial>, std::map<std::pair<Monomial, Monomial>, Cyclotomic>> cache;
  FormalDiffOp out(1, 1);
  for (const auto& [t, s] : c.terms()) {
    auto key = std::make_pair(t[1], t[2]);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::koszul_f2(t[1], t[2])).first;
    for (const auto& [xz, coef] : it->second) {
      const auto& [x, z] = xz;
      // (x (x) r (x) z) (x) m  ->  g^-1(z) m x
      const Cyclotomic w = s * coef * ginv.weight(z);
      for (const auto& [zm, f1] : compose_monomials(z, t[0]))
        for (const auto& [m, f2] : compose_monomials(zm, x))
          out.add_term(m, CMatrix::scalar(w * Cyclotomic(Rational(f1 * f2))));
    }
  }
  return out;
}

enum class BoundaryVerdict { boundary, not_boundary, inconclusive };

inline std::string to_string(BoundaryVerdict v) {
  switch (v) {
    case BoundaryVerdict::boundary: return "boundary";
    case BoundaryVerdict::not_boundary: return "not_boundary";
    case BoundaryVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct BoundaryCheck {
  BoundaryVerdict verdict = BoundaryVerdict::inconclusive;
  int degree_bound = 0;
  std::size_t candidates = 0;            // size of the truncated search space
  std::optional<TwistedChain> witness;   // b(witness) == c when verdict is boundary
  std::string certificate;               // "gamma_trace" or "koszul" for not_boundary
  Cyclotomic certificate_value;          // nonzero pairing of the obstruction with c
};

/// Searches for x with b(x) = c among tensors of total degree <= bound. A
/// negative answer is returned only with an obstruction valid in the full
/// algebra; otherwise the result is inconclusive.
inline BoundaryCheck is_boundary(const TwistedChain& c, const DiagonalAction& g, int degree_bound) {
  detail::check_action(c, g);
  BoundaryCheck out;
  out.degree_bound = degree_bound;
  if (c.is_zero()) {
    out.verdict = BoundaryVerdict::boundary;
    out.witness = TwistedChain(c.n(), c.degree() + 1);
    return out;
  }
  const auto cands = detail::tensors_up_to(c.n(), c.degree() + 2, degree_bound, detail::chain_weights(c));
  out.candidates = cands.size();
  Indexer<Tensor> rows;
  SparseEliminator<Cyclotomic> elim;
  const DiagonalAction ginv = g.inverse();
  for (const auto& t : cands) {
    TwistedChain img(c.n(), c.degree());
    detail::boundary_term(t, Cyclotomic(1), ginv, img);
    elim.add_column(detail::to_sparse(img, rows));
  }
  auto r = elim.reduce(detail::to_sparse(c, rows));
  if (r.residual.empty()) {
    TwistedChain x(c.n(), c.degree() + 1);
    for (const auto& [j, coef] : r.combination) x.add(cands[j], coef);
    if (!(boundary(x, g) == c)) throw Error("is_boundary: witness failed verification");
    out.verdict = BoundaryVerdict::boundary;
    out.witness = std::move(x);
    return out;
  }
  bool twisted = true;
  for (int i = 0; i < g.n(); ++i) twisted = twisted && !g.fixes_direction(i);
  if (c.degree() == 0 && twisted) {
    const Cyclotomic tr = gamma_trace(c.to_operator(), g).value;
    if (!tr.is_zero()) {
      out.verdict = BoundaryVerdict::not_boundary;
      out.certificate = "gamma_trace";
      out.certificate_value = tr;
    }
    return out;
  }
  if (c.degree() == 2 && c.n() == 1) {
    const FormalDiffOp k = koszul_class(c, g);
    if (!k.is_zero()) {
      out.verdict = BoundaryVerdict::not_boundary;
      out.certificate = "koszul";
      out.certificate_value = k.terms().begin()->second(0, 0);
    }
  }
  return out;
}

}  // namespace eqlef
