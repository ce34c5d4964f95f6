// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

/// Pointwise value of the integral-reflection operator Q_i (1 <= i < k):
///
///   a_i(x) > 0:  f(s_i x) + sum_{j=1}^{a_i(x)} ( alpha f(s_i x + j c + v_{i+1}) + (1-beta) f(s_i x + j c) )
///   a_i(x) = 0:  f(x)
///   a_i(x) < 0:  f(s_i x) - sum_{j=0}^{-a_i(x)-1} ( alpha f(s_i x - j c + v_{i+1}) + (1-beta) f(s_i x - j c) )
///
/// where c = a_i^vee = v_i - v_{i+1}.
template <class Scalar>
Scalar evaluate_Q(const BasicParams<Scalar>& params, int i, const LatticeFunction<Scalar>& f, const LatticePoint& x) {
  const AffineRootSystem& sys = params.sys;
  const long n = eval_simple_root(sys, i, x);
  if (n == 0) return f(x);
  const Scalar one_minus_beta = scalar_from_int<Scalar>(1) - params.beta;
  LatticePoint y = reflect_simple(sys, i, x);
  Scalar value = f(y);
  Scalar sum = scalar_from_int<Scalar>(0);
  auto accumulate = [&](const LatticePoint& z) {
    LatticePoint up = z;
    ++up[i + 1];
    sum += params.alpha * f(up) + one_minus_beta * f(z);
  };
  if (n > 0) {
    for (long j = 1; j <= n; ++j) {
      ++y[i];
      --y[i + 1];
      accumulate(y);
    }
    value += sum;
  } else {
    for (long j = 0; j < -n; ++j) {
      accumulate(y);
      --y[i];
      ++y[i + 1];
    }
    value -= sum;
  }
  return value;
}

template <class Scalar>
LatticeFunction<Scalar> apply_Q(const BasicParams<Scalar>& params, int i, const LatticeFunction<Scalar>& f,
                                Memo memo = Memo::on) {
  if (i < 1 || i >= params.k()) throw std::out_of_range("Q_i needs 1 <= i < k, got " + std::to_string(i));
  return LatticeFunction<Scalar>(
      [params, i, f](const LatticePoint& x) { return evaluate_Q(params, i, f, x); }, memo);
}

/// Q_0 = pi^{-1} Q_1 pi, i.e. (Q_0 f)(x) = (Q_1 (pi f))(pi x).
template <class Scalar>
LatticeFunction<Scalar> apply_Q0(const BasicParams<Scalar>& params, const LatticeFunction<Scalar>& f,
                                 Memo memo = Memo::on) {
  const auto pi = AffineWeylElement::pi(params.sys);
  auto conjugated = apply_Q(params, 1, act_on_function(params.sys, pi, f, Memo::off), Memo::off);
  return act_on_function(params.sys, pi.inverse(), conjugated, memo);
}

/// Q_i for any letter 0 <= i < k.
template <class Scalar>
LatticeFunction<Scalar> apply_Q_letter(const BasicParams<Scalar>& params, int i, const LatticeFunction<Scalar>& f,
                                       Memo memo = Memo::on) {
  return i == 0 ? apply_Q0(params, f, memo) : apply_Q(params, i, f, memo);
}

/// Q_w = Q_{i_1} ... Q_{i_m} for w = s_{i_1} ... s_{i_m}; the caller supplies a reduced word.
template <class Scalar>
LatticeFunction<Scalar> apply_Qw(const BasicParams<Scalar>& params, const ReducedWord& word,
                                 const LatticeFunction<Scalar>& f) {
  LatticeFunction<Scalar> g = f;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) g = apply_Q_letter(params, *it, g);
  return g;
}

}  // namespace hecke_bose
