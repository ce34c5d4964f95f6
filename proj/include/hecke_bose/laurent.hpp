// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/scalar.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

/// Sparse Laurent polynomial in e^{v_1}, ..., e^{v_k} with exact rational
/// coefficients, i.e. an element of the group algebra Q[X]. Zero
/// coefficients are never stored.
class LaurentPolynomial {
 public:
  using Terms = std::map<LatticePoint, Rational>;

  explicit LaurentPolynomial(int rank) : rank_(rank) {}

  static LaurentPolynomial monomial(const LatticePoint& x, const Rational& c = 1) {
    LaurentPolynomial p(x.rank());
    p.add_term(x, c);
    return p;
  }

  static LaurentPolynomial constant(int rank, const Rational& c) { return monomial(LatticePoint(rank), c); }

  int rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const LatticePoint& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const LatticePoint& x, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }
  LaurentPolynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [x, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) { return a *= s; }
  friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial a) { return a *= s; }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r(a.rank_);
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) r.add_term(x + y, c * d);
    return r;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [x, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += to_string(c) + "*e^" + x.str();
    }
    return s;
  }

 private:
  int rank_;
  Terms terms_;
};

/// w(e^x) = e^{w x}, extended linearly.
inline LaurentPolynomial weyl_act_poly(const AffineRootSystem& sys, const AffineWeylElement& w,
                                       const LaurentPolynomial& p) {
  LaurentPolynomial r(p.rank());
  for (const auto& [x, c] : p.terms()) r.add_term(act(sys, w, x), c);
  return r;
}

namespace detail {

/// (1 - s_i) p / (1 - e^{v_{i+1} - v_i}) term by term. For e^x with
/// n = a_i(x) the quotient is sum_{j=0}^{n-1} e^{x + j u} for n > 0 and
/// -sum_{j=n}^{-1} e^{x + j u} for n < 0, where u = v_{i+1} - v_i.
inline LaurentPolynomial divided_difference(const AffineRootSystem& sys, int i, const LaurentPolynomial& p) {
  LaurentPolynomial r(p.rank());
  for (const auto& [x, c] : p.terms()) {
    const long n = eval_simple_root(sys, i, x);
    if (n > 0) {
      LatticePoint y = x;
      for (long j = 0; j < n; ++j, --y[i], ++y[i + 1]) r.add_term(y, c);
    } else if (n < 0) {
      LatticePoint y = x;
      for (long j = -1; j >= n; --j) {
        ++y[i];
        --y[i + 1];
        r.add_term(y, -c);
      }
    }
  }
  return r;
}

}  // namespace detail

/// The divided-difference operator
///   T_i = s_i + (alpha e^{v_{i+1}} + 1 - beta) / (1 - e^{-v_i + v_{i+1}}) (1 - s_i),  1 <= i < k.
///
/// Throws std::logic_error if the quotient fails to multiply back to
/// (1 - s_i) p, which would indicate an internal inconsistency.
inline LaurentPolynomial apply_T_check(const Params& params, int i, const LaurentPolynomial& p) {
  const AffineRootSystem& sys = params.sys;
  if (i < 1 || i >= sys.k) throw std::out_of_range("T_i needs 1 <= i < k");
  const int k = sys.k;
  const auto si = AffineWeylElement::simple_reflection(sys, i);
  const LaurentPolynomial reflected = weyl_act_poly(sys, si, p);
  const LaurentPolynomial quotient = detail::divided_difference(sys, i, p);

  LatticePoint u(k);
  u[i] = -1;
  u[i + 1] = 1;
  LaurentPolynomial denominator = LaurentPolynomial::constant(k, 1);
  denominator.add_term(u, -1);
  if (!(denominator * quotient == p - reflected))
    throw std::logic_error("divided difference left a remainder at T_" + std::to_string(i));

  LaurentPolynomial numerator = LaurentPolynomial::constant(k, 1 - params.beta);
  numerator.add_term(LatticePoint::basis(k, i + 1), params.alpha);
  return reflected + numerator * quotient;
}

/// The action of pi on Q[X].
inline LaurentPolynomial apply_pi_check(const AffineRootSystem& sys, const LaurentPolynomial& p) {
  return weyl_act_poly(sys, AffineWeylElement::pi(sys), p);
}

/// (f, p) = (p f)(0) with e^x f = t_{-x} f, so (f, e^x) = f(x).
template <class Scalar>
Scalar pairing(const LatticeFunction<Scalar>& f, const LaurentPolynomial& p) {
  Scalar total = scalar_from_int<Scalar>(0);
  for (const auto& [x, c] : p.terms()) total += scalar_from<Scalar>(c) * f(x);
  return total;
}

}  // namespace hecke_bose
