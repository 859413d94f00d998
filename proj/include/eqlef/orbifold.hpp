// Finite-group averaging of Lefschetz numbers, inertia strata, and the
// geometric vs algebraic differential operators on C / Z_m.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqlef/geometry.hpp"
#include "eqlef/lefschetz.hpp"
#include "eqlef/linalg.hpp"

namespace eqlef {

/// F^f1 R^r1 F^f2 R^r2 = F^(f1+f2) R^(r2 -+ r1), using F R F = R^-1.
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.N != b.N) throw Error("group elements with different rotation orders");
  const long r = (b.flip ? -a.r : a.r) + b.r;
  return {a.N, detail::mod(r, a.N), a.flip != b.flip};
}

class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<GroupElement> elements, std::string name = "")
      : elements_(std::move(elements)), name_(std::move(name)) {
    const std::size_t n = elements_.size();
    if (n == 0) throw Error("a group needs at least one element");
    table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto p = index_of(compose(elements_[i], elements_[j]));
        if (!p) throw Error("group is not closed under composition");
        table_[i][j] = *p;
      }
    const auto e = index_of(GroupElement::rotation(elements_[0].N, 0));
    if (!e) throw Error("group lacks the identity");
    identity_ = *e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) throw Error("composition is not associative");
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool found = false;
      for (std::size_t j = 0; j < n && !found; ++j)
        if (table_[i][j] == identity_) {
          inverse_[i] = j;
          found = true;
        }
      if (!found) throw Error("element without inverse");
    }
    build_classes();
  }

  static FiniteGroup cyclic(int N) {
    std::vector<GroupElement> el;
    for (int r = 0; r < N; ++r) el.push_back(GroupElement::rotation(N, r));
    return FiniteGroup(std::move(el), "Z" + std::to_string(N));
  }

  /// Rotations by zeta_N and the flips z -> zeta/z; order 2N.
  static FiniteGroup dihedral(int N) {
    std::vector<GroupElement> el;
    for (int r = 0; r < N; ++r) el.push_back(GroupElement::rotation(N, r));
    for (int r = 0; r < N; ++r) el.push_back(GroupElement::reflection(N, r));
    return FiniteGroup(std::move(el), "D" + std::to_string(2 * N));
  }

  static FiniteGroup trivial() { return FiniteGroup({GroupElement::identity()}, "1"); }

  std::size_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(std::size_t i) const { return elements_.at(i); }
  std::size_t multiply(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
  std::size_t inverse(std::size_t i) const { return inverse_.at(i); }
  std::size_t identity_index() const { return identity_; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }

  std::size_t element_order(std::size_t i) const {
    std::size_t k = 1, x = i;
    while (x != identity_) {
      x = table_[x][i];
      ++k;
    }
    return k;
  }

  std::size_t centralizer_order(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < order(); ++j) c += table_[i][j] == table_[j][i] ? 1 : 0;
    return c;
  }

 private:
  std::optional<std::size_t> index_of(const GroupElement& g) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i] == g) return i;
    return std::nullopt;
  }

  void build_classes() {
    std::vector<bool> seen(order(), false);
    for (std::size_t i = 0; i < order(); ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> cls;
      for (std::size_t g = 0; g < order(); ++g) {
        const std::size_t c = table_[table_[g][i]][inverse_[g]];
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
      classes_.push_back(std::move(cls));
    }
  }

  std::vector<GroupElement> elements_;
  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::size_t>> classes_;
};

inline bool is_invariant(const FiniteGroup& G, const GlobalDiffOp& d, const ModelSpace& space) {
  for (const auto& g : G.elements())
    if (!(act(g, d, space) == d)) return false;
  return true;
}

namespace detail {

inline void require_invariant(const FiniteGroup& G, const GlobalDiffOp& d, const ModelSpace& space) {
  if (!is_invariant(G, d, space)) throw Error("operator is not invariant under " + G.name());
}

}  // namespace detail

/// P_G = (1/|G|) sum_g g on H^0 and H^1.
inline CohomologyMatrices averaging_projector(const FiniteGroup& G, const ModelSpace& space) {
  const auto b = cohomology_basis(space);
  CohomologyMatrices p{CMatrix(b.h0.size(), b.h0.size()), CMatrix(b.h1.size(), b.h1.size())};
  for (const auto& g : G.elements()) {
    const auto m = group_matrices(g, space);
    p.h0 += m.h0;
    p.h1 += m.h1;
  }
  const Cyclotomic s = Cyclotomic(1) / Cyclotomic(static_cast<long>(G.order()));
  p.h0 *= s;
  p.h1 *= s;
  return p;
}

/// sum_i (-1)^i tr(P_G o D | H^i): the Lefschetz number of D on invariant cohomology.
inline Cyclotomic invariant_lefschetz(const FiniteGroup& G, const GlobalDiffOp& d, const ModelSpace& space) {
  detail::require_invariant(G, d, space);
  const auto p = averaging_projector(G, space);
  const auto m = operator_matrices(d, space);
  return (p.h0 * m.h0).trace() - (p.h1 * m.h1).trace();
}

enum class AverageForm { elementwise, classwise };

namespace detail {

/// L(g, D): cohomological for the identity, fixed-point formula otherwise.
inline Cyclotomic localized_lefschetz(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space) {
  if (g.is_identity()) return lefschetz_cohomological(g, d, space);
  return lefschetz_fixed_point(g, d, space);
}

}  // namespace detail

inline Cyclotomic average_lefschetz(const FiniteGroup& G, const GlobalDiffOp& d, const ModelSpace& space,
                                    AverageForm form) {
  detail::require_invariant(G, d, space);
  Cyclotomic total(0);
  if (form == AverageForm::elementwise) {
    for (const auto& g : G.elements()) total += detail::localized_lefschetz(g, d, space);
  } else {
    for (const auto& cls : G.classes())
      total += Cyclotomic(static_cast<long>(cls.size())) * detail::localized_lefschetz(G.element(cls.front()), d, space);
  }
  return total / Cyclotomic(static_cast<long>(G.order()));
}

struct InertiaStratum {
  GroupElement representative;
  std::size_t class_size = 0;
  std::size_t centralizer_order = 0;
  std::vector<std::string> fixed_set;  // point labels, or {"M"} for the whole space
  int l = 0;                           // real codimension of the fixed set
  std::size_t m = 1;                   // order of the representative
  Cyclotomic weight;                   // |class| / |G| = 1 / |C(g)|
};

inline std::vector<InertiaStratum> inertia_strata(const FiniteGroup& G, const ModelSpace& space) {
  detail::require_cp1(space);
  std::vector<InertiaStratum> out;
  for (const auto& cls : G.classes()) {
    const std::size_t i = cls.front();
    InertiaStratum s;
    s.representative = G.element(i);
    s.class_size = cls.size();
    s.centralizer_order = G.centralizer_order(i);
    s.m = G.element_order(i);
    s.weight = Cyclotomic(Rational(static_cast<long>(cls.size()), static_cast<long>(G.order())));
    const auto pts = fixed_points(s.representative, sl2::one(space.k), space);
    if (!pts) {
      s.fixed_set = {"M"};
      s.l = 0;
    } else {
      for (const auto& p : *pts) s.fixed_set.push_back(p.label);
      s.l = 2;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---- operators on C / Z_m --------------------------------------------------

/// An operator on C given with Laurent coefficients, studied on the invariant
/// functions of z -> zeta_m z, i.e. polynomials in u = z^m.
struct InvariantOperatorProblem {
  int m = 2;
  LaurentOp op;
};

namespace detail {

/// Image of u^j as a map u-exponent -> coefficient; throws if it leaves the invariants.
inline std::map<long, Cyclotomic> on_invariant(const LaurentOp& op, int m, long j) {
  std::map<long, Cyclotomic> out;
  for (const auto& [e, c] : eqlef::apply(op, LaurentPoly{{m * j, Cyclotomic(1)}})) {
    if (mod(e, m) != 0 || e < 0) throw Error("operator does not preserve invariant polynomials");
    out[e / m] = c;
  }
  return out;
}

}  // namespace detail

/// Matrix entries P(u^j) for j <= degree, as (i, j) -> coefficient of u^i.
inline std::map<std::pair<long, long>, Cyclotomic> invariant_matrix(const InvariantOperatorProblem& p, int degree) {
  std::map<std::pair<long, long>, Cyclotomic> m;
  for (long j = 0; j <= degree; ++j)
    for (const auto& [i, c] : detail::on_invariant(p.op, p.m, j)) m[{i, j}] = c;
  return m;
}

struct AlgebraicOrderResult {
  std::optional<int> order;  // empty: exceeds n_max
  int n_max = 0;
  int degree_bound = 0;
};

/// Least N with [f_N, [..., [f_0, P]]] = 0 on u^0..u^degree for all f_i in {u, u^2}.
inline AlgebraicOrderResult algebraic_order(const InvariantOperatorProblem& p, int n_max, int degree = 12) {
  AlgebraicOrderResult r;
  r.n_max = n_max;
  r.degree_bound = degree;
  invariant_matrix(p, degree);  // validates that P preserves invariants
  const LaurentOp fs[2] = {LaurentOp::term(p.m, 0), LaurentOp::term(2L * p.m, 0)};
  auto vanishes = [&](const LaurentOp& op) {
    for (long j = 0; j <= degree; ++j)
      if (!eqlef::apply(op, LaurentPoly{{p.m * j, Cyclotomic(1)}}).empty()) return false;
    return true;
  };
  std::vector<LaurentOp> level{p.op};
  for (int N = 0; N <= n_max; ++N) {
    std::vector<LaurentOp> next;
    bool all_zero = true;
    for (const auto& q : level)
      for (const auto& f : fs) {
        LaurentOp c = f * q - q * f;
        if (!vanishes(c)) all_zero = false;
        if (!c.is_zero()) next.push_back(std::move(c));
      }
    if (all_zero) {
      r.order = N;
      return r;
    }
    level = std::move(next);
  }
  return r;
}

enum class Verdict { yes, no, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct GeometricResult {
  Verdict verdict = Verdict::inconclusive;
  int degree_bound = 0;
  int order_bound = 0;
  // P = sum c u^a (u d_u)^b when verdict is yes
  std::vector<std::tuple<int, int, Cyclotomic>> rewriting;
  // when verdict is no: the functional "coefficient of u^row in P(u^col)", which
  // vanishes on u^a (u d_u)^b for all a >= 0 because row < col, but not on P
  std::optional<std::pair<long, long>> certificate;
  Cyclotomic certificate_value;
};

/// Membership of P in the algebra generated by u and u d_u, on u^0..u^degree.
inline GeometricResult is_geometric(const InvariantOperatorProblem& p, int degree_bound = 12, int order_bound = 6) {
  GeometricResult r;
  r.degree_bound = degree_bound;
  r.order_bound = order_bound;
  const auto target = invariant_matrix(p, degree_bound);
  Indexer<std::pair<long, long>> rows;
  SparseEliminator<Cyclotomic> elim;
  std::vector<std::pair<int, int>> cols;
  for (int a = 0; a <= order_bound; ++a)
    for (int b = 0; a + b <= order_bound; ++b) {
      SparseVector<Cyclotomic> v;
      for (long j = 0; j <= degree_bound; ++j) {
        Integer jb;
        mpz_ui_pow_ui(jb.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(b));
        if (jb == 0) continue;
        v[rows({j + a, j})] = Cyclotomic(Rational(jb));
      }
      elim.add_column(v);
      cols.emplace_back(a, b);
    }
  SparseVector<Cyclotomic> rhs;
  for (const auto& [ij, c] : target) rhs[rows(ij)] = c;
  const auto red = elim.reduce(rhs);
  if (red.residual.empty()) {
    r.verdict = Verdict::yes;
    for (const auto& [j, c] : red.combination) r.rewriting.emplace_back(cols[j].first, cols[j].second, c);
    return r;
  }
  for (const auto& [ij, c] : target)
    if (ij.first < ij.second) {
      r.verdict = Verdict::no;
      r.certificate = ij;
      r.certificate_value = c;
      return r;
    }
  return r;
}

inline std::string rewriting_string(const GeometricResult& g) {
  if (g.rewriting.empty()) return "0";
  std::string s;
  for (const auto& [a, b, c] : g.rewriting) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    if (a > 0) s += " u" + (a > 1 ? "^" + std::to_string(a) : std::string());
    if (b > 0) s += " (u d_u)" + (b > 1 ? "^" + std::to_string(b) : std::string());
  }
  return s;
}

}  // namespace eqlef
