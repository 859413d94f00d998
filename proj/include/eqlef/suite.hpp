// Verification suites: parameter grids, per-case results and spot values.
// Shared by the command-line runner and the acceptance binary.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eqlef/geometry.hpp"
#include "eqlef/gtrace.hpp"
#include "eqlef/heat.hpp"
#include "eqlef/hochschild.hpp"
#include "eqlef/lefschetz.hpp"
#include "eqlef/orbifold.hpp"
#include "eqlef/parser.hpp"
#include "eqlef/sampling.hpp"

namespace eqlef {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string lhs;  // exact
  std::string rhs;
  std::string lhs_decimal;
  std::string rhs_decimal;
  std::string method;
  std::string note;  // diff, per-point data or error message
};

struct SuiteResult {
  std::string name;
  std::string title;
  std::vector<CaseResult> cases;
  std::size_t min_cases = 0;

  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.pass; }));
  }
  bool pass() const { return cases.size() >= min_cases && passed() == cases.size(); }
};

struct SuiteConfig {
  std::vector<std::string> suites{"riemann_roch", "operators", "averaging", "hochschild",
                                  "gtrace",       "classify",  "heat",      "products"};
  std::vector<int> k{0, 1, 2, 3, 4};
  std::vector<int> w{1, 2};
  std::vector<int> group_orders{2, 3, 4, 6};
  // "{k}" stands for the bundle degree
  std::vector<std::string> operators{"d",
                                     "z d",
                                     "z^2 d - {k} z",
                                     "z^2 d^2",
                                     "d^2",
                                     "(z d)^2",
                                     "d (z^2 d - {k} z)",
                                     "(z^2 d - {k} z) d",
                                     "(z^2 d - {k} z)^2",
                                     "d + z^2 d - {k} z",
                                     "z d + z^2 d^2",
                                     "d^3",
                                     "(z d)^3",
                                     "z^2 d^2 d",
                                     "(2 z d - {k}) d (z^2 d - {k} z)",
                                     "1/2 d^2 + 3 z d - (z^2 d - {k} z)^3"};
  std::vector<std::string> invariant_operators{"1", "z d", "(z d)^2", "d (z^2 d - {k} z)", "(z^2 d - {k} z) d"};
  std::vector<std::string> dihedral_operators{"1", "(d - z^2 d + {k} z)^2", "(2 z d - {k})^2"};
  std::vector<int> dihedral_k{-4, -2, 0, 2, 4};
  std::vector<int> product_k{0, 1, 2, 3};
  std::vector<int> product_orders{3, 4};
  std::vector<std::string> product_operators{"1", "z d", "z^2 d^2"};
  int rhs_weight_shift = 0;  // negative control: linearization used on the fixed-point side
  int degree_bound = 8;
  int classify_degree = 12;
  int classify_order = 6;
  std::vector<double> t_schedule{4e-2, 1e-2, 4e-3, 1e-3};
  double heat_tolerance = 1e-6;
  double away_tolerance = 1e-8;
  unsigned seed = 20240101;
  int random_chains = 200;
  int random_pairs = 200;
  int hh0_operators = 50;
  std::string json_out;
  std::string csv_out;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"riemann_roch", "operators", "averaging", "hochschild",
                                              "gtrace",       "classify",  "heat",      "products"};
  return names;
}

namespace detail {

inline std::string instantiate(std::string src, int k) {
  const std::string key = "{k}";
  for (std::size_t p = src.find(key); p != std::string::npos; p = src.find(key, p))
    src.replace(p, key.size(), "(" + std::to_string(k) + ")");
  return src;
}

inline GlobalDiffOp global_op(const std::string& src, int k) {
  return GlobalDiffOp(parse_formal(instantiate(src, k), 1), k);
}

inline CaseResult compare(std::string name, const Cyclotomic& lhs, const Cyclotomic& rhs) {
  CaseResult c;
  c.name = std::move(name);
  c.lhs = lhs.to_string();
  c.rhs = rhs.to_string();
  c.lhs_decimal = lhs.to_decimal();
  c.rhs_decimal = rhs.to_decimal();
  c.pass = lhs == rhs;
  if (!c.pass) c.note = "lhs - rhs = " + (lhs - rhs).to_string();
  return c;
}

inline CaseResult check(std::string name, bool ok, std::string note = "") {
  CaseResult c;
  c.name = std::move(name);
  c.pass = ok;
  c.note = std::move(note);
  return c;
}

/// Runs body; an exception marks the case failed with its message.
inline CaseResult guarded(const std::string& name, const std::function<CaseResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    CaseResult c;
    c.name = name;
    c.note = std::string("error: ") + e.what();
    return c;
  }
}

inline std::string per_point_note(const LefschetzReport& r) {
  std::string s;
  for (const auto& p : r.per_point) s += (s.empty() ? "" : "; ") + p.point + ": " + p.trace.value.to_string();
  return s;
}

/// Lefschetz case: cohomological side on (k, w), fixed-point side on (k, w + shift).
inline CaseResult lefschetz_case(const std::string& name, const GroupElement& g, const std::string& op, int k, int w,
                                 int shift) {
  return guarded(name, [&] {
    const auto d = global_op(op, k);
    const auto lhs = lefschetz_cohomological(g, d, make_cp1(k, w));
    auto r = verify_theorem(g, d, make_cp1(k, w + shift));
    CaseResult c = compare(name, lhs, r.rhs);
    c.method = r.method;
    if (c.note.empty()) c.note = per_point_note(r);
    return c;
  });
}

inline std::string decimal(Complex z) {
  std::ostringstream os;
  os.precision(15);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline std::string lefschetz_name(int k, int w, int N, const std::string& op) {
  return "k=" + std::to_string(k) + " w=" + std::to_string(w) + " N=" + std::to_string(N) + " D=" + op;
}

}  // namespace detail

/// Identity operator on the full (k, w, N) grid, plus the (k=1, N=4, w=1) spot value.
inline SuiteResult run_riemann_roch(const SuiteConfig& cfg) {
  SuiteResult s{"riemann_roch", "equivariant Riemann-Roch grid", {}, 1};
  for (int k : cfg.k)
    for (int w : cfg.w)
      for (int N : cfg.group_orders)
        s.cases.push_back(detail::lefschetz_case(detail::lefschetz_name(k, w, N, "1"), GroupElement::rotation(N, 1), "1",
                                                 k, w, cfg.rhs_weight_shift));
  s.cases.push_back(detail::guarded("spot k=1 w=1 N=4: 1 + zeta4", [&] {
    const auto g = GroupElement::rotation(4, 1);
    const Cyclotomic expect = Cyclotomic(1) + zeta(4, 1);
    const Cyclotomic lhs = lefschetz_cohomological(g, sl2::one(1), make_cp1(1, 1));
    const Cyclotomic rhs = lefschetz_fixed_point(g, sl2::one(1), make_cp1(1, 1 + cfg.rhs_weight_shift));
    auto c = detail::compare("spot k=1 w=1 N=4: 1 + zeta4", lhs, rhs);
    c.pass = c.pass && lhs == expect;
    return c;
  }));
  return s;
}

/// Operator grid; a rotation acting trivially on CP^1 (rho = 1) is skipped.
inline SuiteResult run_operators(const SuiteConfig& cfg) {
  SuiteResult s{"operators", "Lefschetz operator grid", {}, 100};
  for (int k : cfg.k)
    for (int w : cfg.w)
      for (int N : cfg.group_orders) {
        const auto g = GroupElement::rotation(N, 1);
        if (effective_rotation(g, make_cp1(k, w)) == Cyclotomic(1)) continue;
        for (const auto& op : cfg.operators)
          s.cases.push_back(detail::lefschetz_case(detail::lefschetz_name(k, w, N, detail::instantiate(op, k)), g, op, k,
                                                   w, cfg.rhs_weight_shift));
      }
  const std::string spot = "spot k=2 w=1 N=2 D=z^2 d^2: 2 = 1/4 + 7/4";
  s.cases.push_back(detail::guarded(spot, [&] {
    const auto g = GroupElement::rotation(2, 1);
    const GlobalDiffOp d = detail::global_op("z^2 d^2", 2);
    const auto r = verify_theorem(g, d, make_cp1(2, 1 + cfg.rhs_weight_shift));
    auto c = detail::compare(spot, lefschetz_cohomological(g, d, make_cp1(2, 1)), r.rhs);
    std::vector<Cyclotomic> parts;
    for (const auto& p : r.per_point) parts.push_back(p.trace.value);
    const bool split = parts.size() == 2 && ((parts[0] == Cyclotomic::rational(1, 4) && parts[1] == Cyclotomic::rational(7, 4)) ||
                                             (parts[0] == Cyclotomic::rational(7, 4) && parts[1] == Cyclotomic::rational(1, 4)));
    c.pass = c.pass && r.lhs == Cyclotomic(2) && split;
    c.method = r.method;
    c.note = detail::per_point_note(r);
    return c;
  }));
  return s;
}

namespace detail {

inline CaseResult averaging_case(const std::string& name, const FiniteGroup& G, const GlobalDiffOp& d,
                                 const ModelSpace& space) {
  return guarded(name, [&] {
    const Cyclotomic inv = invariant_lefschetz(G, d, space);
    const Cyclotomic elem = average_lefschetz(G, d, space, AverageForm::elementwise);
    const Cyclotomic cls = average_lefschetz(G, d, space, AverageForm::classwise);
    auto c = compare(name, inv, elem);
    c.pass = c.pass && elem == cls;
    c.method = "invariant = elementwise = classwise";
    c.note += (c.note.empty() ? "" : "; ") + std::string("classwise = ") + cls.to_string();
    return c;
  });
}

}  // namespace detail

/// Invariant trace vs elementwise and classwise averages over Z_N and the dihedral group of order 4.
inline SuiteResult run_averaging(const SuiteConfig& cfg) {
  SuiteResult s{"averaging", "finite-group averaging", {}, 30};
  for (int N : cfg.group_orders) {
    const auto G = FiniteGroup::cyclic(N);
    for (int k : cfg.k)
      for (const auto& op : cfg.invariant_operators) {
        const std::string name = "G=Z" + std::to_string(N) + " k=" + std::to_string(k) + " D=" + detail::instantiate(op, k);
        s.cases.push_back(detail::guarded(name, [&] {
          return detail::averaging_case(name, G, detail::global_op(op, k), make_cp1(k, 1));
        }));
      }
  }
  const auto D4 = FiniteGroup::dihedral(2);
  for (int k : cfg.dihedral_k)
    for (const auto& op : cfg.dihedral_operators) {
      const std::string name = "G=D4 k=" + std::to_string(k) + " D=" + detail::instantiate(op, k);
      s.cases.push_back(detail::guarded(name, [&] {
        return detail::averaging_case(name, D4, detail::global_op(op, k), make_cp1(k, 1));
      }));
    }
  const std::string spot = "spot G=Z2 k=2 D=1: all equal 2";
  auto c = detail::averaging_case(spot, FiniteGroup::cyclic(2), sl2::one(2), make_cp1(2, 1));
  c.pass = c.pass && c.lhs == "2";
  s.cases.push_back(c);
  return s;
}

/// b o b = 0 on random chains, generator cycles, hh0 classes and the non-boundary certificate.
inline SuiteResult run_hochschild(const SuiteConfig& cfg) {
  SuiteResult s{"hochschild", "twisted Hochschild layer",
                {}, static_cast<std::size_t>(cfg.random_chains + cfg.hh0_operators + 1)};
  std::mt19937 rng(cfg.seed);
  for (int trial = 0; trial < cfg.random_chains; ++trial) {
    const int n = 1 + trial % 2;
    const int degree = 2 + trial % 3;
    const int N = 2 + trial % 4;
    std::vector<long> e(n);
    for (int i = 0; i < n; ++i) e[i] = (trial + i) % N;
    const DiagonalAction g(N, e);
    const auto c = sampling::random_chain(rng, n, degree, N);
    const std::string name = "b^2 = 0 chain " + std::to_string(trial) + " n=" + std::to_string(n) + " degree=" +
                             std::to_string(degree) + " N=" + std::to_string(N);
    s.cases.push_back(detail::guarded(name, [&] { return detail::check(name, boundary(boundary(c, g), g).is_zero()); }));
  }
  for (int N : {1, 2, 3, 4, 6})
    for (long a = 0; a < N; ++a)
      for (long b = 0; b < N; ++b) {
        const DiagonalAction g(N, {a, b});
        const auto c = generator_cycle(2, g);
        if (c.degree() < 1) continue;
        const std::string name = "b(generator) = 0 N=" + std::to_string(N) + " e=(" + std::to_string(a) + "," +
                                 std::to_string(b) + ")";
        s.cases.push_back(detail::check(name, boundary(c, g).is_zero()));
      }
  const std::vector<DiagonalAction> gs{DiagonalAction(2, {1}), DiagonalAction(3, {1}), DiagonalAction(4, {1}),
                                       DiagonalAction(2, {1, 1}), DiagonalAction(3, {1, 2})};
  std::vector<TwistedCommutatorSpan> spans;
  for (const auto& g : gs) spans.emplace_back(g, 6);
  for (int trial = 0; trial < cfg.hh0_operators; ++trial) {
    const std::size_t which = static_cast<std::size_t>(trial) % gs.size();
    const auto& g = gs[which];
    const auto a = sampling::random_op(rng, g.n(), 6, g.order());
    const std::string name = "hh0 class " + std::to_string(trial) + " N=" + std::to_string(g.order()) +
                             " n=" + std::to_string(g.n());
    s.cases.push_back(detail::guarded(name, [&] {
      const Cyclotomic lambda = spans[which].class_of(a);
      return detail::compare(name, lambda * gamma_trace(FormalDiffOp::identity(g.n()), g).value,
                             gamma_trace(a, g).value);
    }));
  }
  const std::string name = "generator not a boundary, N=2, bound " + std::to_string(cfg.degree_bound);
  s.cases.push_back(detail::guarded(name, [&] {
    const DiagonalAction g(2, {1});
    const auto r = is_boundary(generator_cycle(1, g), g, cfg.degree_bound);
    auto c = detail::check(name, r.verdict == BoundaryVerdict::not_boundary && r.certificate == "gamma_trace",
                           "verdict " + to_string(r.verdict) + ", certificate " + r.certificate + " = " +
                               r.certificate_value.to_string() + ", candidates " + std::to_string(r.candidates));
    c.method = r.certificate;
    return c;
  }));
  return s;
}

/// Twisted trace law and twisted commutators on random pairs; Tr(1) = det factor.
inline SuiteResult run_gtrace(const SuiteConfig& cfg) {
  SuiteResult s{"gtrace", "gamma-trace laws", {}, static_cast<std::size_t>(cfg.random_pairs)};
  std::mt19937 rng(cfg.seed + 1);
  for (int trial = 0; trial < cfg.random_pairs; ++trial) {
    const int n = 1 + trial % 2;
    const int N = trial % 3 == 0 ? 4 : 3 + trial % 5;
    std::vector<long> e(n);
    for (int i = 0; i < n; ++i) e[i] = 1 + (trial / 3 + i) % (N - 1);
    const DiagonalAction g(N, e);
    const auto a = sampling::random_op(rng, n, 3, 4), b = sampling::random_op(rng, n, 3, 4);
    const std::string name = "pair " + std::to_string(trial) + " N=" + std::to_string(N) + " n=" + std::to_string(n);
    s.cases.push_back(detail::guarded(name, [&] {
      auto c = detail::compare(name, gamma_trace(a * b, g).value, gamma_trace(gamma_act(g.inverse(), b) * a, g).value);
      c.pass = c.pass && gamma_trace(twisted_commutator(a, b, g), g).value.is_zero();
      return c;
    }));
  }
  for (int N = 2; N <= 12; ++N)
    for (long k = 1; k < N; ++k) {
      const DiagonalAction g(N, {k});
      s.cases.push_back(detail::compare("Tr(1) = det factor N=" + std::to_string(N) + " k=" + std::to_string(k),
                                        gamma_trace(FormalDiffOp::identity(1), g).value, det_factor(g)));
    }
  return s;
}

/// (1/z) d on C / Z_2: order 1, not geometric, and its action on even monomials.
inline SuiteResult run_classify(const SuiteConfig& cfg) {
  SuiteResult s{"classify", "geometric vs algebraic operators on C/Z2", {}, 3};
  const InvariantOperatorProblem p{2, parse_laurent("(1/z) d")};
  const auto ord = algebraic_order(p, cfg.classify_order, cfg.classify_degree);
  s.cases.push_back(detail::check("algebraic_order((1/z) d) = 1", ord.order && *ord.order == 1,
                                  ord.order ? "order " + std::to_string(*ord.order) : "order exceeds bound"));
  const auto geo = is_geometric(p, cfg.classify_degree, cfg.classify_order);
  std::string note = "verdict " + to_string(geo.verdict);
  if (geo.certificate)
    note += "; certificate: coefficient of u^" + std::to_string(geo.certificate->first) + " in P(u^" +
            std::to_string(geo.certificate->second) + ") = " + geo.certificate_value.to_string();
  s.cases.push_back(detail::check("is_geometric((1/z) d) = false with certificate",
                                  geo.verdict == Verdict::no && geo.certificate.has_value(), note));
  for (long m = 0; m <= 6; ++m) {
    const auto img = eqlef::apply(p.op, LaurentPoly{{2 * m, Cyclotomic(1)}});
    LaurentPoly expect;
    if (m > 0) expect[2 * m - 2] = Cyclotomic(2 * m);
    s.cases.push_back(detail::check("P(z^" + std::to_string(2 * m) + ") = " + std::to_string(2 * m) + " z^" +
                                        std::to_string(2 * m - 2),
                                    img == expect));
  }
  return s;
}

/// Small-t limits for lambda in {-1, zeta3, zeta4} and the away-from-fixed-point cutoff.
inline SuiteResult run_heat(const SuiteConfig& cfg) {
  SuiteResult s{"heat", "heat-kernel localization", {}, 6};
  const auto near = HeatConfig::for_schedule(1, cfg.t_schedule, Cutoff::ball(0.15, 0.6), 1.6);
  const auto away = away_heat_config();
  for (int N : {2, 3, 4}) {
    const DiagonalAction g(N, {1});
    const std::string name = "small-t limit lambda=zeta" + std::to_string(N);
    s.cases.push_back(detail::guarded(name, [&] {
      const auto r = smalltime_limit(g, near, cfg.heat_tolerance);
      CaseResult c;
      c.name = name;
      c.pass = r.pass;
      c.lhs_decimal = detail::decimal(r.values.back());
      c.rhs = det_factor(g).to_string();
      c.rhs_decimal = det_factor(g).to_decimal();
      c.method = "smalltime_limit";
      std::ostringstream os;
      os << "error at t_min " << r.error_at_min_t << ", observed order " << r.observed_order
         << (r.monotone ? "" : ", non-monotone");
      c.note = os.str();
      return c;
    }));
    const std::string aname = "away-from-fixed-point cutoff lambda=zeta" + std::to_string(N);
    s.cases.push_back(detail::guarded(aname, [&] {
      const double v = std::abs(twisted_supertrace(rotation_angles(g), away.t_schedule.back(), away));
      std::ostringstream os;
      os << "|value| at t=" << away.t_schedule.back() << ": " << v;
      return detail::check(aname, v <= cfg.away_tolerance, os.str());
    }));
  }
  return s;
}

/// L(g, D1 x D2) on O(a) x O(b) with g acting on the second factor only.
inline SuiteResult run_products(const SuiteConfig& cfg) {
  SuiteResult s{"products", "product multiplicativity", {}, 20};
  for (int a : cfg.product_k)
    for (int b : cfg.product_k)
      for (int N : cfg.product_orders)
        for (const auto& op1 : cfg.product_operators)
          for (const auto& op2 : cfg.product_operators) {
            const std::string name = "O(" + std::to_string(a) + ") x O(" + std::to_string(b) + ") N=" +
                                     std::to_string(N) + " D=(" + detail::instantiate(op1, a) + ") x (" +
                                     detail::instantiate(op2, b) + ")";
            s.cases.push_back(detail::guarded(name, [&] {
              const ProductOp d{detail::global_op(op1, a), detail::global_op(op2, b)};
              const ProductElement g{GroupElement::identity(), GroupElement::rotation(N, 1)};
              const auto X = product(make_cp1(a, 1), make_cp1(b, 1));
              const Cyclotomic lhs = lefschetz_cohomological(g, d, X);
              const Cyclotomic rhs =
                  lefschetz_cohomological(GroupElement::identity(), d.first, make_cp1(a, 1)) *
                  lefschetz_fixed_point(g.second, d.second, make_cp1(b, 1 + cfg.rhs_weight_shift));
              auto c = detail::compare(name, lhs, rhs);
              c.method = "kunneth";
              return c;
            }));
          }
  return s;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "riemann_roch") return run_riemann_roch(cfg);
  if (name == "operators") return run_operators(cfg);
  if (name == "averaging") return run_averaging(cfg);
  if (name == "hochschild") return run_hochschild(cfg);
  if (name == "gtrace") return run_gtrace(cfg);
  if (name == "classify") return run_classify(cfg);
  if (name == "heat") return run_heat(cfg);
  if (name == "products") return run_products(cfg);
  throw Error("unknown suite '" + name + "'");
}

}  // namespace eqlef
