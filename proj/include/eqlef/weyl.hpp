// Polynomial differential operators (the Weyl algebra) over Q(zeta_N).
//
// Action convention, fixed here for the whole library: a diagonal element g
// with eigenvalues lambda_i acts on functions by (g.f)(y) = f(g^-1 y), where
// g^-1 y has coordinates lambda_i^-1 y_i. Conjugation g A g^-1 therefore sends
// the monomial y^a d^b to prod_i lambda_i^(b_i - a_i) y^a d^b.
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqlef/cyclotomic.hpp"
#include "eqlef/error.hpp"
#include "eqlef/matrix.hpp"

namespace eqlef {

inline constexpr int kMaxVars = 4;

using Exponent = std::array<std::int16_t, kMaxVars>;

/// y^a d^b, positions to the left of derivatives.
struct Monomial {
  Exponent y{};
  Exponent d{};

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool is_identity() const { return *this == Monomial{}; }

  int position_degree() const { return std::accumulate(y.begin(), y.end(), 0); }
  int derivative_degree() const { return std::accumulate(d.begin(), d.end(), 0); }
  int total_degree() const { return position_degree() + derivative_degree(); }

  /// Per-variable Euler weight a_i - b_i; conjugation by diagonal actions and
  /// composition both preserve the summed weight.
  std::array<int, kMaxVars> weight() const {
    std::array<int, kMaxVars> w{};
    for (int i = 0; i < kMaxVars; ++i) w[i] = y[i] - d[i];
    return w;
  }

  static Monomial y_power(int i, int p) {
    Monomial m;
    m.y[i] = static_cast<std::int16_t>(p);
    return m;
  }
  static Monomial d_power(int i, int p) {
    Monomial m;
    m.d[i] = static_cast<std::int16_t>(p);
    return m;
  }
};

namespace detail {

inline void check_vars(int n) {
  if (n < 1 || n > kMaxVars) throw Error("number of variables must be in 1.." + std::to_string(kMaxVars));
}

inline Integer falling_factorial(long c, long k) {
  Integer r = 1;
  for (long j = 0; j < k; ++j) r *= c - j;
  return r;
}

inline Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace detail

/// Normal-ordered product (y^a d^b)(y^c d^e) = sum_k prod_i C(b_i,k_i) (c_i)_{k_i} y^{a+c-k} d^{b+e-k}.
inline std::vector<std::pair<Monomial, Integer>> compose_monomials(const Monomial& left, const Monomial& right) {
  std::vector<std::pair<Monomial, Integer>> out;
  Monomial base;
  for (int i = 0; i < kMaxVars; ++i) {
    base.y[i] = static_cast<std::int16_t>(left.y[i] + right.y[i]);
    base.d[i] = static_cast<std::int16_t>(left.d[i] + right.d[i]);
  }
  out.emplace_back(base, Integer(1));
  for (int i = 0; i < kMaxVars; ++i) {
    const int kmax = std::min<int>(left.d[i], right.y[i]);
    if (kmax == 0) continue;
    std::vector<std::pair<Monomial, Integer>> next;
    next.reserve(out.size() * (kmax + 1));
    for (const auto& [m, c] : out) {
      for (int k = 0; k <= kmax; ++k) {
        Monomial mk = m;
        mk.y[i] = static_cast<std::int16_t>(mk.y[i] - k);
        mk.d[i] = static_cast<std::int16_t>(mk.d[i] - k);
        next.emplace_back(mk, c * detail::binomial(left.d[i], k) * detail::falling_factorial(right.y[i], k));
      }
    }
    out = std::move(next);
  }
  return out;
}

using CMatrix = Matrix<Cyclotomic>;

/// A normal-ordered polynomial differential operator in n variables with
/// r x r matrix coefficients (r = 1 for scalar operators).
class FormalDiffOp {
 public:
  using Terms = std::map<Monomial, CMatrix>;

  FormalDiffOp() : FormalDiffOp(1, 1) {}
  FormalDiffOp(int n, int rank) : n_(n), rank_(rank) {
    detail::check_vars(n);
    if (rank < 1) throw Error("operator rank must be positive");
  }

  static FormalDiffOp zero(int n, int rank = 1) { return FormalDiffOp(n, rank); }
  static FormalDiffOp identity(int n, int rank = 1) { return monomial(n, Monomial{}, CMatrix::identity(rank)); }
  static FormalDiffOp constant(int n, const Cyclotomic& c) { return monomial(n, Monomial{}, c); }
  static FormalDiffOp y(int n, int i) { return monomial(n, Monomial::y_power(i, 1), Cyclotomic(1)); }
  static FormalDiffOp d(int n, int i) { return monomial(n, Monomial::d_power(i, 1), Cyclotomic(1)); }

  static FormalDiffOp monomial(int n, const Monomial& m, const Cyclotomic& c) {
    return monomial(n, m, CMatrix::scalar(c));
  }
  static FormalDiffOp monomial(int n, const Monomial& m, const CMatrix& c) {
    if (!c.square()) throw Error("operator coefficients must be square matrices");
    FormalDiffOp op(n, static_cast<int>(c.rows()));
    for (int i = n; i < kMaxVars; ++i)
      if (m.y[i] != 0 || m.d[i] != 0) throw Error("monomial uses a variable beyond n");
    op.add_term(m, c);
    return op;
  }

  int n() const { return n_; }
  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest derivative degree (-1 for the zero operator).
  int order() const {
    int o = -1;
    for (const auto& [m, c] : terms_) o = std::max(o, m.derivative_degree());
    return o;
  }

  int total_degree() const {
    int o = -1;
    for (const auto& [m, c] : terms_) o = std::max(o, m.total_degree());
    return o;
  }

  CMatrix coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CMatrix(rank_, rank_) : it->second;
  }

  /// Scalar coefficient of a rank-1 operator.
  Cyclotomic scalar_coefficient(const Monomial& m) const {
    if (rank_ != 1) throw Error("scalar_coefficient on a matrix-valued operator");
    return coefficient(m)(0, 0);
  }

  void add_term(const Monomial& m, const CMatrix& c) {
    if (c.rows() != static_cast<std::size_t>(rank_) || c.cols() != static_cast<std::size_t>(rank_))
      throw Error("coefficient size does not match operator rank");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  FormalDiffOp& operator+=(const FormalDiffOp& b) {
    check_compatible(b);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  FormalDiffOp& operator-=(const FormalDiffOp& b) {
    check_compatible(b);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  FormalDiffOp& operator*=(const Cyclotomic& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend FormalDiffOp operator+(FormalDiffOp a, const FormalDiffOp& b) { return a += b; }
  friend FormalDiffOp operator-(FormalDiffOp a, const FormalDiffOp& b) { return a -= b; }
  friend FormalDiffOp operator-(FormalDiffOp a) { return a *= Cyclotomic(-1); }
  friend FormalDiffOp operator*(FormalDiffOp a, const Cyclotomic& s) { return a *= s; }
  friend FormalDiffOp operator*(const Cyclotomic& s, FormalDiffOp a) { return a *= s; }

  /// Composition (normal-ordered product).
  friend FormalDiffOp operator*(const FormalDiffOp& a, const FormalDiffOp& b) { return compose(a, b); }

  friend FormalDiffOp compose(const FormalDiffOp& a, const FormalDiffOp& b) {
    a.check_compatible(b);
    FormalDiffOp out(a.n_, a.rank_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        const CMatrix prod = ca * cb;
        if (prod.is_zero()) continue;
        for (const auto& [m, k] : compose_monomials(ma, mb)) out.add_term(m, prod * Cyclotomic(Rational(k)));
      }
    return out;
  }

  FormalDiffOp pow(unsigned e) const {
    FormalDiffOp r = identity(n_, rank_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const FormalDiffOp& a, const FormalDiffOp& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const FormalDiffOp& b) const {
    if (n_ != b.n_) throw Error("operator dimension mismatch");
    if (rank_ != b.rank_) throw Error("operator coefficient size mismatch");
  }

  int n_;
  int rank_;
  Terms terms_;
};

/// A finite-order element acting diagonally on coordinates, with eigenvalues
/// lambda_i = zeta_order^exponent_i, and by a matrix on the fiber E.
class DiagonalAction {
 public:
  DiagonalAction(int order, std::vector<long> exponents) : DiagonalAction(order, std::move(exponents), CMatrix::identity(1)) {}

  DiagonalAction(int order, std::vector<long> exponents, CMatrix fiber)
      : order_(order), exponents_(std::move(exponents)), fiber_(std::move(fiber)) {
    if (order_ < 1) throw Error("group element order must be positive");
    detail::check_vars(static_cast<int>(exponents_.size()));
    for (auto& e : exponents_) e = detail::mod(e, order_);
    if (!fiber_.square()) throw Error("fiber action must be square");
    if (!(fiber_.pow(static_cast<unsigned>(order_)) == CMatrix::identity(fiber_.rows())))
      throw Error("fiber action does not have order dividing " + std::to_string(order_));
    fiber_inverse_ = fiber_.pow(static_cast<unsigned>(order_ - 1));
  }

  static DiagonalAction identity(int n, int rank = 1) {
    return DiagonalAction(1, std::vector<long>(n, 0), CMatrix::identity(rank));
  }

  int n() const { return static_cast<int>(exponents_.size()); }
  int order() const { return order_; }
  int rank() const { return static_cast<int>(fiber_.rows()); }
  long exponent(int i) const { return exponents_.at(i); }
  const std::vector<long>& exponents() const { return exponents_; }
  Cyclotomic lambda(int i) const { return zeta(order_, exponents_.at(i)); }
  const CMatrix& fiber() const { return fiber_; }
  const CMatrix& fiber_inverse() const { return fiber_inverse_; }

  bool fixes_direction(int i) const { return exponents_.at(i) == 0; }

  /// Real codimension of the fixed subspace.
  int codim() const {
    int c = 0;
    for (auto e : exponents_) c += e != 0 ? 2 : 0;
    return c;
  }

  bool is_identity() const { return codim() == 0 && fiber_ == CMatrix::identity(fiber_.rows()); }

  DiagonalAction inverse() const {
    std::vector<long> e(exponents_);
    for (auto& x : e) x = -x;
    return DiagonalAction(order_, std::move(e), fiber_inverse_);
  }

  /// prod lambda_i^(b_i - a_i), the conjugation weight of y^a d^b.
  Cyclotomic weight(const Monomial& m) const {
    long e = 0;
    for (int i = 0; i < n(); ++i) e += exponents_[i] * (m.d[i] - m.y[i]);
    return zeta(order_, e);
  }

  /// Action on split variables: this on the first block, other on the second.
  DiagonalAction direct_sum(const DiagonalAction& other) const {
    const int L = std::lcm(order_, other.order_);
    std::vector<long> e;
    for (auto x : exponents_) e.push_back(x * (L / order_));
    for (auto x : other.exponents_) e.push_back(x * (L / other.order_));
    return DiagonalAction(L, std::move(e), kron(fiber_, other.fiber_));
  }

 private:
  int order_;
  std::vector<long> exponents_;
  CMatrix fiber_;
  CMatrix fiber_inverse_;
};

/// g A g^-1.
inline FormalDiffOp gamma_act(const DiagonalAction& g, const FormalDiffOp& a) {
  if (g.n() != a.n()) throw Error("gamma_act: dimension mismatch");
  if (g.rank() != a.rank()) throw Error("gamma_act: fiber size mismatch");
  FormalDiffOp out(a.n(), a.rank());
  const bool trivial_fiber = g.fiber() == CMatrix::identity(g.rank());
  for (const auto& [m, c] : a.terms()) {
    CMatrix conj = trivial_fiber ? c : g.fiber() * c * g.fiber_inverse();
    out.add_term(m, conj * g.weight(m));
  }
  return out;
}

/// A B - g^-1(B) A: the image of A (x) B under the twisted Hochschild boundary.
inline FormalDiffOp twisted_commutator(const FormalDiffOp& a, const FormalDiffOp& b, const DiagonalAction& g) {
  return a * b - gamma_act(g.inverse(), b) * a;
}

/// A1 (x) A2 acting on split variables (first a.n() variables, then b.n()).
inline FormalDiffOp tensor(const FormalDiffOp& a, const FormalDiffOp& b) {
  const int n = a.n() + b.n();
  detail::check_vars(n);
  FormalDiffOp out(n, a.rank() * b.rank());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma;
      for (int i = 0; i < b.n(); ++i) {
        m.y[a.n() + i] = mb.y[i];
        m.d[a.n() + i] = mb.d[i];
      }
      out.add_term(m, kron(ca, cb));
    }
  return out;
}

/// Scalar polynomial in n variables.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Cyclotomic>;

  explicit Polynomial(int n = 1) : n_(n) { detail::check_vars(n); }

  static Polynomial monomial(int n, const Exponent& e, const Cyclotomic& c = Cyclotomic(1)) {
    Polynomial p(n);
    p.add(e, c);
    return p;
  }
  static Polynomial y_power(int n, int i, int k) {
    Exponent e{};
    e[i] = static_cast<std::int16_t>(k);
    return monomial(n, e);
  }

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Cyclotomic coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclotomic(0) : it->second;
  }

  void add(const Exponent& e, const Cyclotomic& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Polynomial& operator+=(const Polynomial& b) {
    for (const auto& [e, c] : b.terms_) add(e, c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Cyclotomic& s, const Polynomial& p) {
    Polynomial r(p.n_);
    for (const auto& [e, c] : p.terms_) r.add(e, s * c);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_;
  Terms terms_;
};

using PolyVector = std::vector<Polynomial>;

/// Applies A to a vector of r polynomials (r = rank of A).
inline PolyVector apply(const FormalDiffOp& a, const PolyVector& p) {
  if (p.size() != static_cast<std::size_t>(a.rank())) throw Error("apply: vector length does not match rank");
  PolyVector out(a.rank(), Polynomial(a.n()));
  for (const auto& q : p)
    if (q.n() != a.n()) throw Error("apply: dimension mismatch");
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t col = 0; col < p.size(); ++col) {
      for (const auto& [e, v] : p[col].terms()) {
        Integer k = 1;
        Exponent r{};
        bool zero = false;
        for (int i = 0; i < a.n(); ++i) {
          if (e[i] < m.d[i]) {
            zero = true;
            break;
          }
          k *= detail::falling_factorial(e[i], m.d[i]);
          r[i] = static_cast<std::int16_t>(e[i] - m.d[i] + m.y[i]);
        }
        if (zero) continue;
        const Cyclotomic s = v * Cyclotomic(Rational(k));
        for (std::size_t row = 0; row < p.size(); ++row) {
          const Cyclotomic& cr = c(row, col);
          if (cr.is_zero()) continue;
          out[row].add(r, cr * s);
        }
      }
    }
  }
  return out;
}

inline Polynomial apply(const FormalDiffOp& a, const Polynomial& p) { return eqlef::apply(a, PolyVector{p}).front(); }

/// One-variable operator with Laurent polynomial coefficients: sum c z^a d^b, a in Z.
class LaurentOp {
 public:
  using Key = std::pair<long, long>;  // (power of z, power of d)
  using Terms = std::map<Key, Cyclotomic>;

  LaurentOp() = default;

  static LaurentOp term(long a, long b, const Cyclotomic& c = Cyclotomic(1)) {
    LaurentOp op;
    op.add(a, b, c);
    return op;
  }
  static LaurentOp constant(const Cyclotomic& c) { return term(0, 0, c); }

  static LaurentOp from(const FormalDiffOp& d) {
    if (d.n() != 1 || d.rank() != 1) throw Error("LaurentOp::from requires a scalar one-variable operator");
    LaurentOp op;
    for (const auto& [m, c] : d.terms()) op.add(m.y[0], m.d[0], c(0, 0));
    return op;
  }

  /// Converts back to a polynomial operator; throws if a negative power of z remains.
  FormalDiffOp to_formal() const {
    FormalDiffOp out(1, 1);
    for (const auto& [k, c] : terms_) {
      if (k.first < 0) throw Error("operator has a pole");
      Monomial m;
      m.y[0] = static_cast<std::int16_t>(k.first);
      m.d[0] = static_cast<std::int16_t>(k.second);
      out.add_term(m, CMatrix::scalar(c));
    }
    return out;
  }

  bool has_pole() const {
    for (const auto& [k, c] : terms_)
      if (k.first < 0) return true;
    return false;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(long a, long b, const Cyclotomic& c) {
    if (b < 0) throw Error("negative derivative power");
    auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  LaurentOp& operator+=(const LaurentOp& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  LaurentOp& operator-=(const LaurentOp& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  friend LaurentOp operator+(LaurentOp a, const LaurentOp& b) { return a += b; }
  friend LaurentOp operator-(LaurentOp a, const LaurentOp& b) { return a -= b; }
  friend LaurentOp operator*(const Cyclotomic& s, const LaurentOp& a) {
    LaurentOp r;
    for (const auto& [k, c] : a.terms_) r.add(k.first, k.second, s * c);
    return r;
  }

  /// d^b z^c = sum_k C(b,k) (c)_k z^(c-k) d^(b-k), valid for negative c.
  friend LaurentOp operator*(const LaurentOp& l, const LaurentOp& r) {
    LaurentOp out;
    for (const auto& [kl, cl] : l.terms_)
      for (const auto& [kr, cr] : r.terms_) {
        const Cyclotomic c = cl * cr;
        for (long k = 0; k <= kl.second; ++k) {
          const Integer f = detail::binomial(kl.second, k) * detail::falling_factorial(kr.first, k);
          if (f == 0) continue;
          out.add(kl.first + kr.first - k, kl.second + kr.second - k, c * Cyclotomic(Rational(f)));
        }
      }
    return out;
  }

  LaurentOp pow(unsigned e) const {
    LaurentOp r = constant(Cyclotomic(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const LaurentOp& a, const LaurentOp& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

using LaurentPoly = std::map<long, Cyclotomic>;

inline void add_to(LaurentPoly& p, long e, const Cyclotomic& c) {
  auto [it, inserted] = p.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

inline LaurentPoly apply(const LaurentOp& op, const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [k, c] : op.terms())
    for (const auto& [e, v] : p) {
      const Integer f = detail::falling_factorial(e, k.second);
      if (f == 0) continue;
      add_to(out, e - k.second + k.first, c * v * Cyclotomic(Rational(f)));
    }
  return out;
}

namespace detail {

inline std::string coefficient_prefix(const Cyclotomic& c, bool first, bool bare_one) {
  std::string s;
  if (c.is_rational()) {
    Rational q = c.as_rational();
    if (first) {
      if (sgn(q) < 0) s += "-";
    } else {
      s += sgn(q) < 0 ? " - " : " + ";
    }
    q = abs(q);
    if (q != 1 || bare_one) s += q.get_str() + (bare_one ? "" : " ");
    return s;
  }
  s += first ? "" : " + ";
  return s + "(" + c.to_string() + ")" + (bare_one ? "" : " ");
}

}  // namespace detail

/// Text rendering, e.g. "y1^2 d1 + 3 y2 d1 d2" (bare "y", "d" when n = 1).
inline std::string to_string(const FormalDiffOp& a, const std::string& var = "y") {
  if (a.is_zero()) return "0";
  std::vector<std::pair<Monomial, CMatrix>> terms(a.terms().begin(), a.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
    return l.first.total_degree() > r.first.total_degree();
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    std::string factors;
    auto sym = [&](const std::string& base, int i, int p) {
      if (p == 0) return;
      if (!factors.empty()) factors += " ";
      factors += base;
      if (a.n() > 1) factors += std::to_string(i + 1);
      if (p > 1) factors += "^" + std::to_string(p);
    };
    for (int i = 0; i < a.n(); ++i) sym(var, i, m.y[i]);
    for (int i = 0; i < a.n(); ++i) sym("d", i, m.d[i]);
    if (a.rank() == 1) {
      os << detail::coefficient_prefix(c(0, 0), first, factors.empty()) << factors;
    } else {
      os << (first ? "" : " + ") << "[";
      for (std::size_t i = 0; i < c.rows(); ++i) {
        os << (i ? ", " : "") << "[";
        for (std::size_t j = 0; j < c.cols(); ++j) os << (j ? ", " : "") << c(i, j).to_string();
        os << "]";
      }
      os << "]" << (factors.empty() ? "" : " ") << factors;
    }
    first = false;
  }
  return os.str();
}

}  // namespace eqlef
