// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/weyl.hpp"

#ifdef HECKE_BOSE_TEST_HOOKS
#include <atomic>
#endif

namespace hecke_bose {

#ifdef HECKE_BOSE_TEST_HOOKS
namespace test_hooks {
/// Added to every d_i^+ value. Only compiled into test builds.
inline std::atomic<int> d_plus_offset{0};
}  // namespace test_hooks
#endif

namespace detail {

inline bool in_nonpositive_multiples(long value, int L) { return value <= 0 && value % L == 0; }

}  // namespace detail

/// d_i^+(x) = #{1 <= p < k : a_i(x) + ... + a_{i+p-1}(x) in L Z_{<=0}}, indices of a_j mod k.
inline int d_plus(const AffineRootSystem& sys, int i, const LatticePoint& x) {
  if (i < 1 || i > sys.k) throw std::out_of_range("d_plus index out of range");
  int count = 0;
  long sum = 0;
  for (int p = 1; p < sys.k; ++p) {
    sum += eval_simple_root(sys, (i + p - 1) % sys.k, x);
    if (detail::in_nonpositive_multiples(sum, sys.L)) ++count;
  }
#ifdef HECKE_BOSE_TEST_HOOKS
  count += test_hooks::d_plus_offset.load();
#endif
  return count;
}

/// d_i^-(x) = #{1 <= p < k : a_{i-p}(x) + ... + a_{i-1}(x) in L Z_{<=0}}.
inline int d_minus(const AffineRootSystem& sys, int i, const LatticePoint& x) {
  if (i < 1 || i > sys.k) throw std::out_of_range("d_minus index out of range");
  int count = 0;
  long sum = 0;
  for (int p = 1; p < sys.k; ++p) {
    sum += eval_simple_root(sys, ((i - p) % sys.k + sys.k) % sys.k, x);
    if (detail::in_nonpositive_multiples(sum, sys.L)) ++count;
  }
  return count;
}

/// (H f)(x) = sum_i beta^{d_i^-(x)} ( f(x - v_i) - alpha d_i^+(x) f(x) ).
template <class Scalar>
Scalar apply_H(const LatticeFunction<Scalar>& f, const LatticePoint& x, const BasicParams<Scalar>& params) {
  const AffineRootSystem& sys = params.sys;
  const Scalar fx = f(x);
  Scalar total = scalar_from_int<Scalar>(0);
  for (int i = 1; i <= sys.k; ++i) {
    LatticePoint y = x;
    --y[i];
    Scalar term = f(y) - params.alpha * scalar_from_int<Scalar>(d_plus(sys, i, x)) * fx;
    total += ipow(params.beta, d_minus(sys, i, x)) * term;
  }
  return total;
}

template <class Scalar>
LatticeFunction<Scalar> hamiltonian(const LatticeFunction<Scalar>& f, const BasicParams<Scalar>& params) {
  return LatticeFunction<Scalar>([f, params](const LatticePoint& x) { return apply_H(f, x, params); });
}

/// Periodic version of the discrete Hamiltonian sum_i nabla_i + sum_{i<j} delta_{n_i, n_j},
/// with the delta replaced by coincidence of coordinates modulo L. Coded
/// directly from the coordinates, independent of d_i^{+-}.
template <class Scalar>
Scalar apply_periodic_reference_H(const LatticeFunction<Scalar>& f, const LatticePoint& x, int L) {
  const int k = x.rank();
  const Scalar fx = f(x);
  Scalar total = scalar_from_int<Scalar>(0);
  for (int i = 1; i <= k; ++i) {
    LatticePoint y = x;
    --y[i];
    total += f(y) - fx;
  }
  long coincidences = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if ((static_cast<long>(x[i]) - x[j]) % L == 0) ++coincidences;
  total += scalar_from_int<Scalar>(coincidences) * fx;
  return total;
}

/// Checks the transformation rule of d_i^{+-} under s_j:
///   d_i(s_j x) = d_i(x)                         for i not in {j, j+1},
///   d_j^{+-}(s_j x) = d_{j+1}^{+-}(x) +- [a_j(x) = 0],
///   d_{j+1}^{+-}(s_j x) = d_j^{+-}(x) -+ [a_j(x) = 0],
/// with particle indices read mod k (so j = 0 pairs d_k with d_1).
inline bool verify_d_change(const AffineRootSystem& sys, const LatticePoint& x, int i, int j) {
  if (i < 1 || i > sys.k || j < 0 || j >= sys.k) throw std::out_of_range("verify_d_change index out of range");
  const LatticePoint y = reflect_simple(sys, j, x);
  const int jj = sys.wrap(j);
  const int jn = sys.wrap(j + 1);
  const int on_wall = eval_simple_root(sys, j, x) == 0 ? 1 : 0;
  int expect_plus = 0;
  int expect_minus = 0;
  if (i == jj) {
    expect_plus = d_plus(sys, jn, x) + on_wall;
    expect_minus = d_minus(sys, jn, x) - on_wall;
  } else if (i == jn) {
    expect_plus = d_plus(sys, jj, x) - on_wall;
    expect_minus = d_minus(sys, jj, x) + on_wall;
  } else {
    expect_plus = d_plus(sys, i, x);
    expect_minus = d_minus(sys, i, x);
  }
  return d_plus(sys, i, y) == expect_plus && d_minus(sys, i, y) == expect_minus;
}

}  // namespace hecke_bose
