// Text syntax for differential operators.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*          juxtaposition is composition
//   factor := atom ('^' INT)?
//   atom   := INT | INT '/' INT | 'z' idx? | 'd' idx? | '(' expr ')' | '(1/z)'
//
// 'y' is accepted as a synonym of 'z'. '(1/z)' is admitted only when parsing
// operators on the quotient C / Z_m (classify).
#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "eqlef/error.hpp"
#include "eqlef/weyl.hpp"

namespace eqlef {

class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : Error("parse error at column " + std::to_string(pos + 1) + ": " + msg), position(pos) {}
  std::size_t position;
};

enum class ParseContext { standard, classify };

struct OperatorExpr {
  enum class Kind { sum, compose, power, number, var, deriv, inverse_z };
  Kind kind = Kind::number;
  Rational value;                     // number
  int index = 0;                      // var / deriv, 0-based
  unsigned exponent = 0;              // power
  std::vector<OperatorExpr> children;
  std::vector<int> signs;             // sum: +1 / -1 per child

  /// Number of variables referenced (at least 1).
  int variables() const {
    int n = (kind == Kind::var || kind == Kind::deriv) ? index + 1 : 1;
    for (const auto& c : children) n = std::max(n, c.variables());
    return n;
  }

  bool has_inverse_z() const {
    if (kind == Kind::inverse_z) return true;
    for (const auto& c : children)
      if (c.has_inverse_z()) return true;
    return false;
  }
};

namespace detail {

class OperatorParser {
 public:
  OperatorParser(const std::string& src, ParseContext ctx) : s_(src), ctx_(ctx) {}

  OperatorExpr parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
    OperatorExpr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(pos_, std::string("expected '") + c + "'" +
                                 (pos_ < s_.size() ? std::string(", found '") + s_[pos_] + "'" : ", found end of input"));
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected an integer");
    return Integer(s_.substr(start, pos_ - start));
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'y' || c == 'd' || c == '(' || c == '*';
  }

  OperatorExpr expr() {
    OperatorExpr sum;
    sum.kind = OperatorExpr::Kind::sum;
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    for (;;) {
      sum.children.push_back(term());
      sum.signs.push_back(sign);
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
    }
    if (sum.children.size() == 1 && sum.signs[0] == 1) return std::move(sum.children[0]);
    return sum;
  }

  OperatorExpr term() {
    OperatorExpr prod;
    prod.kind = OperatorExpr::Kind::compose;
    if (!starts_factor() || peek('*')) throw ParseError(pos_, "expected a factor");
    prod.children.push_back(factor());
    while (starts_factor()) {
      accept('*');
      prod.children.push_back(factor());
    }
    if (prod.children.size() == 1) return std::move(prod.children[0]);
    return prod;
  }

  OperatorExpr factor() {
    OperatorExpr a = atom();
    if (accept('^')) {
      skip();
      if (peek('-')) throw ParseError(pos_, "negative exponent");
      const Integer e = integer();
      if (e > 64) throw ParseError(pos_, "exponent too large");
      OperatorExpr p;
      p.kind = OperatorExpr::Kind::power;
      p.exponent = static_cast<unsigned>(e.get_ui());
      p.children.push_back(std::move(a));
      return p;
    }
    return a;
  }

  int index() {
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t at = pos_;
      const Integer i = integer();
      if (i < 1 || i > kMaxVars) throw ParseError(at, "variable index must be in 1.." + std::to_string(kMaxVars));
      return static_cast<int>(i.get_si()) - 1;
    }
    return 0;
  }

  bool inverse_z_ahead() {
    std::size_t p = pos_;
    auto next = [&]() {
      while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
      return p < s_.size() ? s_[p++] : '\0';
    };
    return next() == '(' && next() == '1' && next() == '/' && next() == 'z' && next() == ')';
  }

  OperatorExpr atom() {
    skip();
    const std::size_t at = pos_;
    OperatorExpr a;
    if (inverse_z_ahead()) {
      if (ctx_ != ParseContext::classify) throw ParseError(at, "(1/z) is only allowed under classify");
      while (s_[pos_] != ')') ++pos_;
      ++pos_;
      a.kind = OperatorExpr::Kind::inverse_z;
      return a;
    }
    if (accept('(')) {
      a = expr();
      expect(')');
      return a;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      Integer den(1);
      if (accept('/')) {
        const std::size_t dpos = pos_;
        den = integer();
        if (den == 0) throw ParseError(dpos, "zero denominator");
      }
      a.kind = OperatorExpr::Kind::number;
      a.value = Rational(num, den);
      a.value.canonicalize();
      return a;
    }
    if (c == 'z' || c == 'y' || c == 'd') {
      ++pos_;
      a.kind = c == 'd' ? OperatorExpr::Kind::deriv : OperatorExpr::Kind::var;
      a.index = index();
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(pos_, "unknown symbol");
      return a;
    }
    throw ParseError(at, std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  ParseContext ctx_;
  std::size_t pos_ = 0;
};

template <class T, class Make>
T evaluate(const OperatorExpr& e, const Make& make) {
  using K = OperatorExpr::Kind;
  switch (e.kind) {
    case K::sum: {
      T r = make.zero();
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const T c = evaluate<T>(e.children[i], make);
        r = e.signs[i] > 0 ? r + c : r - c;
      }
      return r;
    }
    case K::compose: {
      T r = evaluate<T>(e.children[0], make);
      for (std::size_t i = 1; i < e.children.size(); ++i) r = r * evaluate<T>(e.children[i], make);
      return r;
    }
    case K::power: return evaluate<T>(e.children[0], make).pow(e.exponent);
    case K::number: return make.constant(Cyclotomic(e.value));
    case K::var: return make.var(e.index);
    case K::deriv: return make.deriv(e.index);
    case K::inverse_z: return make.inverse_z();
  }
  throw Error("bad expression node");
}

struct FormalMaker {
  int n;
  FormalDiffOp zero() const { return FormalDiffOp::zero(n); }
  FormalDiffOp constant(const Cyclotomic& c) const { return FormalDiffOp::constant(n, c); }
  FormalDiffOp var(int i) const { return FormalDiffOp::y(n, i); }
  FormalDiffOp deriv(int i) const { return FormalDiffOp::d(n, i); }
  FormalDiffOp inverse_z() const { throw Error("(1/z) has no polynomial meaning"); }
};

struct LaurentMaker {
  LaurentOp zero() const { return {}; }
  LaurentOp constant(const Cyclotomic& c) const { return LaurentOp::constant(c); }
  LaurentOp var(int i) const {
    if (i != 0) throw Error("Laurent operators have one variable");
    return LaurentOp::term(1, 0);
  }
  LaurentOp deriv(int i) const {
    if (i != 0) throw Error("Laurent operators have one variable");
    return LaurentOp::term(0, 1);
  }
  LaurentOp inverse_z() const { return LaurentOp::term(-1, 0); }
};

}  // namespace detail

inline OperatorExpr parse_operator(const std::string& src, ParseContext ctx = ParseContext::standard) {
  return detail::OperatorParser(src, ctx).parse();
}

/// Normal-ordered operator in n variables (n = 0: as many as the text uses).
inline FormalDiffOp to_formal(const OperatorExpr& e, int n = 0) {
  const int used = e.variables();
  if (n == 0) n = used;
  if (used > n) throw Error("expression uses " + std::to_string(used) + " variables, expected " + std::to_string(n));
  return detail::evaluate<FormalDiffOp>(e, detail::FormalMaker{n});
}

inline LaurentOp to_laurent(const OperatorExpr& e) { return detail::evaluate<LaurentOp>(e, detail::LaurentMaker{}); }

inline FormalDiffOp parse_formal(const std::string& src, int n = 0) { return to_formal(parse_operator(src), n); }

inline LaurentOp parse_laurent(const std::string& src) {
  return to_laurent(parse_operator(src, ParseContext::classify));
}

/// "c z^a d^b + ..." with (1/z)^k for negative powers; parses back under classify.
inline std::string to_string(const LaurentOp& op) {
  if (op.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    std::string factors;
    auto add = [&](const std::string& f) { factors += (factors.empty() ? "" : " ") + f; };
    if (k.first > 0) add(k.first == 1 ? "z" : "z^" + std::to_string(k.first));
    if (k.first < 0) add(k.first == -1 ? "(1/z)" : "(1/z)^" + std::to_string(-k.first));
    if (k.second > 0) add(k.second == 1 ? "d" : "d^" + std::to_string(k.second));
    s += detail::coefficient_prefix(c, first, factors.empty()) + factors;
    first = false;
  }
  return s;
}

}  // namespace eqlef
