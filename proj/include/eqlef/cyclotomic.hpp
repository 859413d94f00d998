// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A value is stored on the power basis {1, z, ..., z^(phi(N)-1)} of
// Q[z]/(Phi_N(z)), with z = zeta_N = exp(2 pi i / N). Values of different
// conductors are promoted to the lcm before combining; the conductor is never
// minimized afterwards, so equality always compares at a common conductor.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqlef/error.hpp"

namespace eqlef {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline constexpr int kMaxConductor = 720;

/// Integer coefficients of Phi_N, lowest degree first (monic, degree phi(N)).
inline const std::vector<long>& cyclotomic_polynomial(int N) {
  if (N < 1 || N > kMaxConductor) {
    throw Error("cyclotomic conductor out of supported range: " + std::to_string(N));
  }
  static const std::vector<std::vector<long>> table = [] {
    std::vector<std::vector<long>> phi(kMaxConductor + 1);
    for (int n = 1; n <= kMaxConductor; ++n) {
      // x^n - 1 divided exactly by Phi_d for every proper divisor d.
      std::vector<long> p(n + 1, 0);
      p[0] = -1;
      p[n] = 1;
      for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto& q = phi[d];
        const int dq = static_cast<int>(q.size()) - 1;
        const int dp = static_cast<int>(p.size()) - 1;
        std::vector<long> quot(dp - dq + 1, 0);
        for (int i = dp; i >= dq; --i) {
          const long c = p[i];
          quot[i - dq] = c;
          if (c == 0) continue;
          for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
        }
        p = std::move(quot);
      }
      phi[n] = std::move(p);
    }
    return phi;
  }();
  return table[N];
}

inline int euler_phi(int N) { return static_cast<int>(cyclotomic_polynomial(N).size()) - 1; }

inline long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

/// Reduces a dense polynomial modulo Phi_N in place and truncates to phi(N).
inline void reduce_mod_phi(std::vector<Rational>& p, int N) {
  const auto& phi = cyclotomic_polynomial(N);
  const int deg = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(p.size()) - 1; i >= deg; --i) {
    if (sgn(p[i]) == 0) continue;
    const Rational c = p[i];
    for (int j = 0; j < deg; ++j) {
      if (phi[j] != 0) p[i - deg + j] -= c * phi[j];
    }
    p[i] = 0;
  }
  p.resize(deg);
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1) {}
  Cyclotomic(long v) : conductor_(1), coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int v) : Cyclotomic(static_cast<long>(v)) {}      // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational q) : conductor_(1), coeffs_{std::move(q)} {  // NOLINT(google-explicit-constructor)
    coeffs_[0].canonicalize();
  }

  static Cyclotomic rational(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Cyclotomic(Rational(num, den));
  }

  /// zeta_N^k.
  static Cyclotomic zeta(int N, long k) {
    if (N < 1) throw Error("zeta: conductor must be positive");
    std::vector<Rational> p(N);
    p[detail::mod(k, N)] = 1;
    detail::reduce_mod_phi(p, N);
    return Cyclotomic(N, std::move(p));
  }

  /// Builds sum_k c_k zeta_N^k from coefficients on powers 0..len-1 (any length).
  static Cyclotomic from_powers(int N, std::vector<Rational> powers) {
    if (N < 1) throw Error("from_powers: conductor must be positive");
    std::vector<Rational> p(std::max<std::size_t>(powers.size(), static_cast<std::size_t>(N)));
    for (std::size_t i = 0; i < powers.size(); ++i) {
      powers[i].canonicalize();
      p[i % N] += powers[i];
    }
    p.resize(N);
    detail::reduce_mod_phi(p, N);
    return Cyclotomic(N, std::move(p));
  }

  int conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (sgn(c) != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return false;
    return true;
  }

  /// The rational value; throws if not rational.
  Rational as_rational() const {
    if (!is_rational()) throw Error("cyclotomic value is not rational: " + to_string());
    return coeffs_[0];
  }

  /// Re-expresses the value in Q(zeta_M); M must be a multiple of the conductor.
  Cyclotomic promote(int M) const {
    if (M == conductor_) return *this;
    if (M % conductor_ != 0) throw Error("promote: target conductor is not a multiple");
    const int step = M / conductor_;
    std::vector<Rational> p(M);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
    detail::reduce_mod_phi(p, M);
    return Cyclotomic(M, std::move(p));
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& b) {
    if (b.conductor_ == conductor_) {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
      return *this;
    }
    if (b.conductor_ == 1) {
      coeffs_[0] += b.coeffs_[0];
      return *this;
    }
    const int L = std::lcm(conductor_, b.conductor_);
    Cyclotomic a = promote(L);
    const Cyclotomic bb = b.promote(L);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += bb.coeffs_[i];
    return *this = std::move(a);
  }

  Cyclotomic& operator-=(const Cyclotomic& b) { return *this += -b; }

  Cyclotomic& operator*=(const Cyclotomic& b) {
    if (b.conductor_ == 1) {
      for (auto& c : coeffs_) c *= b.coeffs_[0];
      return *this;
    }
    if (conductor_ == 1) {
      const Rational s = coeffs_[0];
      *this = b;
      for (auto& c : coeffs_) c *= s;
      return *this;
    }
    const int L = std::lcm(conductor_, b.conductor_);
    const Cyclotomic a = promote(L);
    const Cyclotomic bb = b.promote(L);
    std::vector<Rational> p(a.coeffs_.size() + bb.coeffs_.size());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < bb.coeffs_.size(); ++j) {
        if (sgn(bb.coeffs_[j]) == 0) continue;
        p[i + j] += a.coeffs_[i] * bb.coeffs_[j];
      }
    }
    detail::reduce_mod_phi(p, L);
    return *this = Cyclotomic(L, std::move(p));
  }

  Cyclotomic& operator/=(const Cyclotomic& b) { return *this *= b.inverse(); }

  /// Multiplicative inverse by solving (multiplication by *this) x = 1 over Q.
  Cyclotomic inverse() const {
    if (is_zero()) throw Error("division by zero in cyclotomic field");
    if (conductor_ == 1) return Cyclotomic(Rational(1) / coeffs_[0]);
    const int d = static_cast<int>(coeffs_.size());
    // Column j holds the coefficients of z^j * a.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    for (int j = 0; j < d; ++j) {
      const Cyclotomic col = *this * zeta(conductor_, j);
      for (int i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    }
    m[0][d] = 1;
    for (int c = 0; c < d; ++c) {
      int piv = c;
      while (piv < d && sgn(m[piv][c]) == 0) ++piv;
      if (piv == d) throw Error("singular multiplication matrix in cyclotomic inverse");
      std::swap(m[piv], m[c]);
      const Rational inv = Rational(1) / m[c][c];
      for (int j = c; j <= d; ++j) m[c][j] *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == c || sgn(m[r][c]) == 0) continue;
        const Rational f = m[r][c];
        for (int j = c; j <= d; ++j) m[r][j] -= f * m[c][j];
      }
    }
    std::vector<Rational> x(d);
    for (int i = 0; i < d; ++i) x[i] = m[i][d];
    return Cyclotomic(conductor_, std::move(x));
  }

  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const int L = std::lcm(a.conductor_, b.conductor_);
    return a.promote(L).coeffs_ == b.promote(L).coeffs_;
  }

  /// Floating-point embedding zeta_N -> exp(2 pi i / N).
  std::complex<double> to_complex() const {
    long double re = 0, im = 0;
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (sgn(coeffs_[k]) == 0) continue;
      const long double c = static_cast<long double>(coeffs_[k].get_d());
      // get_d loses precision only for huge numerators; fall back to exact division.
      const long double cv = exact_long_double(coeffs_[k], c);
      const long double ang = two_pi * static_cast<long double>(k) / conductor_;
      re += cv * std::cos(ang);
      im += cv * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  /// Exact rendering, e.g. "1/2 - 1/2*z4" with zK naming zeta_K.
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (sgn(c) == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << conductor_;
      if (k > 1) os << "^" << k;
    }
    if (first) return "0";
    return os.str();
  }

  /// Decimal rendering of the complex embedding, e.g. "0.5-0.5i".
  std::string to_decimal() const {
    const auto z = to_complex();
    auto clean = [](double x) { return std::abs(x) < 5e-16 ? 0.0 : x; };
    std::ostringstream os;
    os.precision(15);
    const double re = clean(z.real()), im = clean(z.imag());
    os << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
    return os.str();
  }

 private:
  Cyclotomic(int N, std::vector<Rational> c) : conductor_(N), coeffs_(std::move(c)) {}

  static long double exact_long_double(const Rational& q, long double fallback) {
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p()) {
      return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
    }
    return fallback;
  }

  int conductor_;
  std::vector<Rational> coeffs_;
};

inline Cyclotomic zeta(int N, long k) { return Cyclotomic::zeta(N, k); }
inline std::complex<double> to_complex(const Cyclotomic& a) { return a.to_complex(); }

enum class ArithOp { add, sub, mul, div };

inline Cyclotomic arith(const Cyclotomic& a, const Cyclotomic& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error("unknown arithmetic op");
}

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.to_string(); }

}  // namespace eqlef
