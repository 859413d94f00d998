// Command implementations for the eqlef tool: config loading, subcommands and reports.
#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqlef/suite.hpp"

namespace eqlef::cli {

using json = nlohmann::ordered_json;

/// Bad input: exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum Exit { pass = 0, failure = 1, config_error = 2 };

struct Options {
  std::string config;
  std::string space = "cp1";
  std::string k;
  std::string w;
  std::string group;
  std::vector<std::string> ops;
  std::string bound;
  std::string out;
  std::string lambda;
  std::string t;
};

// ---- small parsers ----------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    const auto a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
  }
  return out;
}

inline int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + what + ": '" + s + "'");
  }
}

inline double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + what + ": '" + s + "'");
  }
}

inline std::vector<int> int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(to_int(p, what));
  if (out.empty()) throw ConfigError("empty list for " + what);
  return out;
}

/// "1", "Z<N>", "Z<N>^r", "F<N>", "F<N>^r" (flip composed with a rotation).
inline GroupElement parse_element(const std::string& s) {
  if (s == "1" || s == "e") return GroupElement::identity();
  if (s.size() < 2 || (s[0] != 'Z' && s[0] != 'F')) throw ConfigError("group element must look like Z4, Z4^3 or F2^1: '" + s + "'");
  const auto caret = s.find('^');
  const int N = to_int(s.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), "group order");
  if (N < 1) throw ConfigError("group order must be positive");
  const long r = caret == std::string::npos ? (s[0] == 'Z' ? 1 : 0) : to_int(s.substr(caret + 1), "group power");
  return s[0] == 'Z' ? GroupElement::rotation(N, r) : GroupElement::reflection(N, r);
}

/// "Z<N>" (cyclic) or "D<2N>" (dihedral of order 2N).
inline FiniteGroup parse_group(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'Z' && s[0] != 'D')) throw ConfigError("group must look like Z4 or D4: '" + s + "'");
  const int n = to_int(s.substr(1), "group order");
  if (s[0] == 'Z') {
    if (n < 1) throw ConfigError("group order must be positive");
    return FiniteGroup::cyclic(n);
  }
  if (n < 2 || n % 2) throw ConfigError("dihedral group order must be even and at least 2");
  return FiniteGroup::dihedral(n / 2);
}

/// "N:k1[,k2]" for the diagonal action with eigenvalues zeta_N^k_i.
inline DiagonalAction parse_lambda(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("--lambda must look like N:k or N:k1,k2");
  const int N = to_int(s.substr(0, colon), "lambda order");
  if (N < 1) throw ConfigError("lambda order must be positive");
  std::vector<long> e;
  for (int k : int_list(s.substr(colon + 1), "lambda exponents")) e.push_back(k);
  if (e.size() > 2) throw ConfigError("at most two exponents");
  return DiagonalAction(N, e);
}

// ---- reports ----------------------------------------------------------------

inline json exact(const Cyclotomic& c) { return json{{"exact", c.to_string()}, {"decimal", c.to_decimal()}}; }

inline json convention_block(const SuiteConfig* cfg = nullptr) {
  json c;
  c["rotation"] = "(R s)(z) = s(rho z), rho = zeta_N^(r w); local eigenvalue rho^-1 at z=0, rho at z=inf";
  c["flip"] = "(F s)(z) = eps z^k s(1/z); element (r, flip) = F^flip R^r";
  c["fiber_weights"] = "1 at z=0, rho^k at z=inf";
  c["group_action_on_operators"] = "g(y^a d^b) = prod lambda^(b-a) y^a d^b";
  c["trace_normalization"] = "Tr_g(1) = tr_E(g) / det(1 - g^-1)";
  c["exact_format"] = "zK denotes exp(2 pi i / K)";
  if (cfg) {
    c["linearization_weights"] = cfg->w;
    c["fixed_point_weight_shift"] = cfg->rhs_weight_shift;
  }
  return c;
}

inline json case_json(const CaseResult& c) {
  return json{{"name", c.name},     {"pass", c.pass},       {"lhs", c.lhs},         {"rhs", c.rhs},
              {"lhs_decimal", c.lhs_decimal}, {"rhs_decimal", c.rhs_decimal}, {"method", c.method}, {"note", c.note}};
}

inline json suite_json(const SuiteResult& s) {
  json j{{"name", s.name},         {"title", s.title},        {"pass", s.pass()},
         {"min_cases", s.min_cases}, {"passed", s.passed()}, {"total", s.cases.size()}};
  j["cases"] = json::array();
  for (const auto& c : s.cases) j["cases"].push_back(case_json(c));
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
  return s + "\n";
}

inline std::string suites_csv(const std::vector<SuiteResult>& results) {
  std::string s = csv_row({"suite", "case", "pass", "lhs", "rhs", "lhs_decimal", "rhs_decimal", "method", "note"});
  for (const auto& r : results)
    for (const auto& c : r.cases)
      s += csv_row({r.name, c.name, c.pass ? "true" : "false", c.lhs, c.rhs, c.lhs_decimal, c.rhs_decimal, c.method, c.note});
  return s;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error("write to '" + path + "' failed");
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Writes to --out when given (CSV when it ends in .csv), otherwise to the stream.
inline void emit(const Options& o, std::ostream& os, const json& j, const std::string& csv) {
  if (o.out.empty()) {
    os << j.dump(2) << "\n";
  } else if (ends_with(o.out, ".csv")) {
    write_file(o.out, csv);
  } else {
    write_file(o.out, j.dump(2) + "\n");
  }
}

// ---- configuration ------------------------------------------------------------

namespace detail {

template <class T>
T get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Schema-checked SuiteConfig; unknown keys are rejected.
inline SuiteConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SuiteConfig c;
  for (const auto& [key, v] : j.items()) {
    using detail::get;
    if (key == "description") get<std::string>(v, key);
    else if (key == "suites") c.suites = get<std::vector<std::string>>(v, key);
    else if (key == "k") c.k = get<std::vector<int>>(v, key);
    else if (key == "w") c.w = get<std::vector<int>>(v, key);
    else if (key == "group_orders") c.group_orders = get<std::vector<int>>(v, key);
    else if (key == "operators") c.operators = get<std::vector<std::string>>(v, key);
    else if (key == "invariant_operators") c.invariant_operators = get<std::vector<std::string>>(v, key);
    else if (key == "dihedral_operators") c.dihedral_operators = get<std::vector<std::string>>(v, key);
    else if (key == "dihedral_k") c.dihedral_k = get<std::vector<int>>(v, key);
    else if (key == "product_k") c.product_k = get<std::vector<int>>(v, key);
    else if (key == "product_orders") c.product_orders = get<std::vector<int>>(v, key);
    else if (key == "product_operators") c.product_operators = get<std::vector<std::string>>(v, key);
    else if (key == "rhs_weight_shift") c.rhs_weight_shift = get<int>(v, key);
    else if (key == "degree_bound") c.degree_bound = get<int>(v, key);
    else if (key == "classify_degree") c.classify_degree = get<int>(v, key);
    else if (key == "classify_order") c.classify_order = get<int>(v, key);
    else if (key == "t_schedule") c.t_schedule = get<std::vector<double>>(v, key);
    else if (key == "heat_tolerance") c.heat_tolerance = get<double>(v, key);
    else if (key == "away_tolerance") c.away_tolerance = get<double>(v, key);
    else if (key == "seed") c.seed = get<unsigned>(v, key);
    else if (key == "random_chains") c.random_chains = get<int>(v, key);
    else if (key == "random_pairs") c.random_pairs = get<int>(v, key);
    else if (key == "hh0_operators") c.hh0_operators = get<int>(v, key);
    else if (key == "output") {
      if (!v.is_object()) throw ConfigError("config key 'output' must be an object");
      for (const auto& [ok, ov] : v.items()) {
        if (ok == "json") c.json_out = get<std::string>(ov, "output.json");
        else if (ok == "csv") c.csv_out = get<std::string>(ov, "output.csv");
        else throw ConfigError("unknown config key 'output." + ok + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

inline void validate(const SuiteConfig& c) {
  if (c.suites.empty()) throw ConfigError("suite list is empty");
  std::set<std::string> seen;
  for (const auto& s : c.suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("unknown suite '" + s + "'");
    if (!seen.insert(s).second) throw ConfigError("suite '" + s + "' listed twice");
  }
  for (int N : c.group_orders)
    if (N < 1) throw ConfigError("group orders must be positive");
  for (int N : c.product_orders)
    if (N < 2) throw ConfigError("product group orders must be at least 2");
  if (c.degree_bound < 0 || c.classify_degree < 1 || c.classify_order < 0) throw ConfigError("bounds must be non-negative");
  if (c.random_chains < 0 || c.random_pairs < 0 || c.hh0_operators < 0) throw ConfigError("counts must be non-negative");
  if (c.t_schedule.size() < 4) throw ConfigError("heat schedule needs at least 4 values");
  for (std::size_t i = 0; i < c.t_schedule.size(); ++i)
    if (!(c.t_schedule[i] > 0) || (i && !(c.t_schedule[i] < c.t_schedule[i - 1])))
      throw ConfigError("heat schedule must be positive and strictly decreasing");
  // operator templates must parse
  for (const auto* list : {&c.operators, &c.invariant_operators, &c.dihedral_operators, &c.product_operators})
    for (const auto& op : *list) {
      try {
        parse_operator(eqlef::detail::instantiate(op, 0));
      } catch (const ParseError& e) {
        throw ConfigError("operator '" + op + "': " + e.what());
      }
    }
}

inline SuiteConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

// ---- subcommands --------------------------------------------------------------

inline int verify_lefschetz(const Options& o, std::ostream& os) {
  LefschetzReport r;
  if (o.space == "cp1") {
    const int k = o.k.empty() ? 1 : to_int(o.k, "--k");
    const int w = o.w.empty() ? 1 : to_int(o.w, "--w");
    const auto g = parse_element(o.group.empty() ? "Z4" : o.group);
    const std::string op = o.ops.empty() ? "1" : o.ops.front();
    r = verify_theorem(g, eqlef::detail::global_op(op, k), make_cp1(k, w));
  } else if (o.space == "cp1xcp1") {
    const auto ks = int_list(o.k.empty() ? "1,1" : o.k, "--k");
    const auto ws = int_list(o.w.empty() ? "1,1" : o.w, "--w");
    const auto gs = split(o.group.empty() ? "1xZ3" : o.group, 'x');
    const auto ds = split(o.ops.empty() ? "1 | 1" : o.ops.front(), '|');
    if (ks.size() != 2 || ws.size() != 2 || gs.size() != 2 || ds.size() != 2)
      throw ConfigError("product needs --k a,b --w a,b --group g1xg2 --op 'D1 | D2'");
    const ProductOp d{eqlef::detail::global_op(ds[0], ks[0]), eqlef::detail::global_op(ds[1], ks[1])};
    r = verify_theorem(ProductElement{parse_element(gs[0]), parse_element(gs[1])}, d,
                       product(make_cp1(ks[0], ws[0]), make_cp1(ks[1], ws[1])));
  } else {
    throw ConfigError("--space must be cp1 or cp1xcp1");
  }
  json j{{"convention", convention_block()}, {"gamma", r.gamma}, {"op", r.op}, {"space", r.space},
         {"lhs", exact(r.lhs)},           {"rhs", exact(r.rhs)}, {"method", r.method}, {"equal", r.equal}};
  j["per_point"] = json::array();
  std::string csv = csv_row({"point", "trace", "trace_decimal", "det_factor", "fiber_trace"});
  for (const auto& p : r.per_point) {
    j["per_point"].push_back({{"point", p.point},
                              {"trace", exact(p.trace.value)},
                              {"det_factor", exact(p.trace.det_factor)},
                              {"fiber_trace", exact(p.trace.fiber_trace)}});
    csv += csv_row({p.point, p.trace.value.to_string(), p.trace.value.to_decimal(), p.trace.det_factor.to_string(),
                    p.trace.fiber_trace.to_string()});
  }
  csv += csv_row({"total", r.rhs.to_string(), r.rhs.to_decimal(), "", ""});
  emit(o, os, j, csv);
  return r.equal ? pass : failure;
}

inline int verify_averaging(const Options& o, std::ostream& os) {
  const int k = o.k.empty() ? 2 : to_int(o.k, "--k");
  const int w = o.w.empty() ? 1 : to_int(o.w, "--w");
  const auto G = parse_group(o.group.empty() ? "Z2" : o.group);
  const std::string op = o.ops.empty() ? "1" : o.ops.front();
  const auto space = make_cp1(k, w);
  const auto d = eqlef::detail::global_op(op, k);
  const Cyclotomic inv = invariant_lefschetz(G, d, space);
  const Cyclotomic elem = average_lefschetz(G, d, space, AverageForm::elementwise);
  const Cyclotomic cls = average_lefschetz(G, d, space, AverageForm::classwise);
  const bool ok = inv == elem && elem == cls;
  json j{{"convention", convention_block()},
         {"group", G.name()},
         {"space", describe(space)},
         {"op", to_string(d.chart0(), "z")},
         {"invariant_lefschetz", exact(inv)},
         {"elementwise_average", exact(elem)},
         {"classwise_average", exact(cls)},
         {"equal", ok}};
  j["strata"] = json::array();
  std::string csv = csv_row({"representative", "class_size", "centralizer_order", "m", "l", "fixed_set", "weight", "lefschetz"});
  for (const auto& s : inertia_strata(G, space)) {
    const Cyclotomic l = s.representative.is_identity() ? lefschetz_cohomological(s.representative, d, space)
                                                        : lefschetz_fixed_point(s.representative, d, space);
    std::string fixed;
    for (const auto& p : s.fixed_set) fixed += (fixed.empty() ? "" : " ") + p;
    j["strata"].push_back({{"representative", describe(s.representative)},
                           {"class_size", s.class_size},
                           {"centralizer_order", s.centralizer_order},
                           {"m", s.m},
                           {"l", s.l},
                           {"fixed_set", s.fixed_set},
                           {"weight", exact(s.weight)},
                           {"lefschetz", exact(l)}});
    csv += csv_row({describe(s.representative), std::to_string(s.class_size), std::to_string(s.centralizer_order),
                    std::to_string(s.m), std::to_string(s.l), fixed, s.weight.to_string(), l.to_string()});
  }
  emit(o, os, j, csv);
  return ok ? pass : failure;
}

inline int verify_hochschild(const Options& o, std::ostream& os) {
  const auto g = parse_lambda(o.lambda.empty() ? "2:1" : o.lambda);
  const int bound = o.bound.empty() ? 8 : to_int(o.bound, "--bound");
  const auto c = generator_cycle(g.n(), g);
  const bool cycle = c.degree() == 0 || boundary(c, g).is_zero();
  const auto r = is_boundary(c, g, bound);
  json j{{"lambda", o.lambda.empty() ? "2:1" : o.lambda},
         {"generator_degree", c.degree()},
         {"generator_is_cycle", cycle},
         {"verdict", to_string(r.verdict)},
         {"degree_bound", r.degree_bound},
         {"candidates", r.candidates},
         {"certificate", r.certificate},
         {"certificate_value", exact(r.certificate_value)}};
  std::string csv = csv_row({"quantity", "value"});
  csv += csv_row({"generator_is_cycle", cycle ? "true" : "false"});
  csv += csv_row({"verdict", to_string(r.verdict)});
  csv += csv_row({"certificate", r.certificate});
  csv += csv_row({"certificate_value", r.certificate_value.to_string()});
  if (!o.ops.empty()) {
    const auto a = parse_formal(o.ops.front(), g.n());
    const Cyclotomic cls = hh0_class(a, g, std::max(bound, a.total_degree()));
    j["op"] = to_string(a, "z");
    j["hh0_class"] = exact(cls);
    j["trace_ratio"] = exact(gamma_trace(a, g).value / gamma_trace(FormalDiffOp::identity(g.n()), g).value);
    csv += csv_row({"hh0_class", cls.to_string()});
  }
  emit(o, os, j, csv);
  return cycle && r.verdict != BoundaryVerdict::boundary ? pass : failure;
}

inline int verify_gtrace(const Options& o, std::ostream& os) {
  const auto g = parse_lambda(o.lambda.empty() ? "2:1" : o.lambda);
  const auto a = parse_formal(o.ops.empty() ? "1" : o.ops.front(), g.n());
  const auto r = gamma_trace(a, g);
  json j{{"convention", convention_block()}, {"lambda", o.lambda.empty() ? "2:1" : o.lambda}, {"op", to_string(a, "z")},
         {"value", exact(r.value)},          {"det_factor", exact(r.det_factor)},            {"fiber_trace", exact(r.fiber_trace)}};
  std::string csv = csv_row({"op", "value", "value_decimal", "det_factor"});
  csv += csv_row({to_string(a, "z"), r.value.to_string(), r.value.to_decimal(), r.det_factor.to_string()});
  if (o.ops.size() >= 2) {
    const auto b = parse_formal(o.ops[1], g.n());
    j["second_op"] = to_string(b, "z");
    j["trace_law_holds"] = trace_property_check(a, b, g);
    j["twisted_commutator_trace"] = exact(gamma_trace(twisted_commutator(a, b, g), g).value);
  }
  emit(o, os, j, csv);
  return pass;
}

inline int verify_heat(const Options& o, std::ostream& os) {
  const auto g = parse_lambda(o.lambda.empty() ? "2:1" : o.lambda);
  std::vector<double> ts;
  for (const auto& p : split(o.t.empty() ? "4e-2,1e-2,4e-3,1e-3" : o.t, ',')) ts.push_back(to_double(p, "--t"));
  std::vector<double> sorted = ts;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted != ts) throw ConfigError("--t must be strictly decreasing");
  HeatConfig cfg;
  try {
    cfg = HeatConfig::for_schedule(g.n(), ts, Cutoff::ball(0.15, 0.6), 1.6);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const Complex limit = to_complex(det_factor(g));
  std::string csv = csv_row({"t", "value_re", "value_im", "abs_error"});
  json rows = json::array();
  std::vector<Complex> values;
  for (double t : ts) {
    const Complex v = twisted_supertrace(rotation_angles(g), t, cfg);
    values.push_back(v);
    std::ostringstream a, b, c, d;
    a.precision(17);
    b.precision(17);
    c.precision(17);
    d.precision(6);
    a << t;
    b << v.real();
    c << v.imag();
    d << std::abs(v - limit);
    csv += csv_row({a.str(), b.str(), c.str(), d.str()});
    rows.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}, {"abs_error", std::abs(v - limit)}});
  }
  int status = pass;
  json j{{"lambda", o.lambda.empty() ? "2:1" : o.lambda}, {"limit", eqlef::detail::decimal(limit)}, {"rows", rows}};
  if (ts.size() >= 4) {
    const auto r = smalltime_limit(g, cfg);
    j["observed_order"] = std::isinf(r.observed_order) ? json("inf") : json(r.observed_order);
    j["monotone"] = r.monotone;
    j["pass"] = r.pass;
    status = r.pass ? pass : failure;
  }
  if (o.out.empty() || ends_with(o.out, ".csv")) {
    if (o.out.empty()) os << csv;
    else write_file(o.out, csv);
  } else {
    write_file(o.out, j.dump(2) + "\n");
  }
  return status;
}

inline int classify(const Options& o, std::ostream& os) {
  const std::string src = o.ops.empty() ? "(1/z) d" : o.ops.front();
  const std::string grp = o.group.empty() ? "Z2" : o.group;
  if (grp.size() < 2 || grp[0] != 'Z') throw ConfigError("classify needs a cyclic group Z<m>");
  const int m = to_int(grp.substr(1), "group order");
  if (m < 2) throw ConfigError("classify needs m >= 2");
  int degree = 12, order = 6;
  if (!o.bound.empty()) {
    const auto b = int_list(o.bound, "--bound");
    degree = b[0];
    if (b.size() > 1) order = b[1];
  }
  const InvariantOperatorProblem p{m, parse_laurent(src)};
  const auto ord = algebraic_order(p, order, degree);
  const auto geo = is_geometric(p, degree, order);
  json j{{"op", to_string(p.op)},
         {"group", grp},
         {"invariant_coordinate", "u = z^" + std::to_string(m)},
         {"degree_bound", degree},
         {"order_bound", order},
         {"algebraic_order", ord.order ? json(*ord.order) : json(nullptr)},
         {"is_geometric", to_string(geo.verdict)}};
  std::string csv = csv_row({"quantity", "value"});
  csv += csv_row({"algebraic_order", ord.order ? std::to_string(*ord.order) : "none"});
  csv += csv_row({"is_geometric", to_string(geo.verdict)});
  if (geo.verdict == Verdict::yes) {
    j["rewriting"] = rewriting_string(geo);
    csv += csv_row({"rewriting", rewriting_string(geo)});
  }
  if (geo.certificate) {
    // the separating functional, as a vector over the matrix entries (row, col) of P
    json vec = json::array();
    vec.push_back({{"row", geo.certificate->first}, {"col", geo.certificate->second}, {"weight", 1}});
    j["certificate"] = {{"functional", "coefficient of u^row in P(u^col)"},
                        {"vector", vec},
                        {"value_on_P", exact(geo.certificate_value)},
                        {"value_on_geometric_algebra", "0 (row < col and every u^a (u d_u)^b raises degree)"}};
    csv += csv_row({"certificate", "u^" + std::to_string(geo.certificate->first) + " in P(u^" +
                                       std::to_string(geo.certificate->second) + ")"});
    csv += csv_row({"certificate_value", geo.certificate_value.to_string()});
  }
  j["action_on_invariants"] = json::array();
  for (long jj = 0; jj <= std::min(degree, 6); ++jj) {
    std::string img;
    for (const auto& [e, c] : eqlef::apply(p.op, LaurentPoly{{m * jj, Cyclotomic(1)}}))
      img += (img.empty() ? "" : " + ") + std::string("(") + c.to_string() + ") z^" + std::to_string(e);
    j["action_on_invariants"].push_back({{"input", "z^" + std::to_string(m * jj)}, {"image", img.empty() ? "0" : img}});
  }
  emit(o, os, j, csv);
  return pass;
}

inline int suite(const Options& o, std::ostream& os) {
  SuiteConfig cfg = o.config.empty() ? SuiteConfig{} : load_config(o.config);
  if (!o.k.empty()) cfg.k = int_list(o.k, "--k");
  if (!o.w.empty()) cfg.w = int_list(o.w, "--w");
  if (!o.group.empty()) cfg.group_orders = int_list(o.group, "--group");
  if (!o.ops.empty()) cfg.operators = o.ops;
  if (!o.bound.empty()) cfg.degree_bound = to_int(o.bound, "--bound");
  if (!o.out.empty()) {
    cfg.json_out = o.out + ".json";
    cfg.csv_out = o.out + ".csv";
  }
  validate(cfg);
  std::vector<SuiteResult> results;
  bool ok = true;
  for (const auto& name : cfg.suites) {
    results.push_back(run_suite(name, cfg));
    const auto& r = results.back();
    ok = ok && r.pass();
    os << (r.pass() ? "PASS " : "FAIL ") << r.name << ": " << r.passed() << "/" << r.cases.size() << " cases";
    if (r.cases.size() < r.min_cases) os << " (needs at least " << r.min_cases << ")";
    os << "\n";
    for (const auto& c : r.cases)
      if (!c.pass) os << "  failed: " << c.name << ": " << c.note << "\n";
  }
  json j{{"convention", convention_block(&cfg)}, {"pass", ok}};
  j["suites"] = json::array();
  for (const auto& r : results) j["suites"].push_back(suite_json(r));
  if (!cfg.json_out.empty()) write_file(cfg.json_out, j.dump(2) + "\n");
  if (!cfg.csv_out.empty()) write_file(cfg.csv_out, suites_csv(results));
  return ok ? pass : failure;
}

}  // namespace eqlef::cli
