// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include "hecke_bose/scalar.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

/// Particle number k, system size L and the couplings (alpha, beta) of H.
template <class Scalar>
struct BasicParams {
  AffineRootSystem sys;
  Scalar alpha{};
  Scalar beta{};

  BasicParams() : BasicParams(AffineRootSystem{}, scalar_from_int<Scalar>(0), scalar_from_int<Scalar>(1)) {}

  BasicParams(AffineRootSystem s, Scalar a, Scalar b) : sys(s), alpha(std::move(a)), beta(std::move(b)) {
    if (is_zero(beta)) throw std::invalid_argument("beta must be nonzero");
  }

  BasicParams(int k, int L, Scalar a, Scalar b) : BasicParams(AffineRootSystem(k, L), std::move(a), std::move(b)) {}

  int k() const noexcept { return sys.k; }
  int L() const noexcept { return sys.L; }
};

using Params = BasicParams<Rational>;
using ComplexParams = BasicParams<Complex>;

template <class Scalar>
BasicParams<Scalar> convert_params(const Params& p) {
  return {p.sys, scalar_from<Scalar>(p.alpha), scalar_from<Scalar>(p.beta)};
}

}  // namespace hecke_bose
