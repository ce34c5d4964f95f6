// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hecke_bose/hamiltonian.hpp"
#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/scalar.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

// ---------------------------------------------------------------------------
// Symmetric-group helpers
// ---------------------------------------------------------------------------

namespace detail {

inline int permutation_sign(std::span<const int> sigma) {
  int inversions = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Calls fn(sigma, sign) for every permutation of {0, ..., n-1}.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    fn(std::span<const int>(sigma), permutation_sign(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bethe equations
// ---------------------------------------------------------------------------

/// Spectral parameters p with the max-norm of the Bethe-equation defect.
struct SpectralPoint {
  std::vector<Complex> p;
  double residual = 0.0;

  Complex eigenvalue() const { return std::accumulate(p.begin(), p.end(), Complex(0.0)); }
};

/// Raised when p_i - beta p_j + alpha vanishes for some j != i.
class BethePole : public std::domain_error {
 public:
  BethePole(int i, int j)
      : std::domain_error("Bethe equation pole: p_" + std::to_string(i) + " - beta p_" + std::to_string(j) +
                          " + alpha = 0"),
        i_(i),
        j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_, j_;
};

inline constexpr double kPoleTolerance = 1e-12;

/// Component i is p_i^L - prod_{j != i} (beta p_i - p_j - alpha) / (p_i - beta p_j + alpha).
inline std::vector<Complex> bethe_residual(const ComplexParams& params, std::span<const Complex> p) {
  const int k = params.k();
  if (static_cast<int>(p.size()) != k) throw std::invalid_argument("bethe_residual: need k spectral parameters");
  std::vector<Complex> r(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    Complex rhs = 1.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const Complex den = p[i] - params.beta * p[j] + params.alpha;
      if (std::abs(den) <= kPoleTolerance * (1.0 + std::abs(p[i]) + std::abs(p[j]))) throw BethePole(i + 1, j + 1);
      rhs *= (params.beta * p[i] - p[j] - params.alpha) / den;
    }
    r[i] = ipow(p[i], params.L()) - rhs;
  }
  return r;
}

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// exp(2 pi i n / L), exact on quarter turns.
inline Complex root_of_unity(int n, int L) {
  const int r = ((n % L) + L) % L;
  if ((4 * r) % L == 0) {
    switch ((4 * r) / L) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * r / L;
  return {std::cos(angle), std::sin(angle)};
}

/// Failure of the homotopy continuation at path parameter s.
class ContinuationError : public std::runtime_error {
 public:
  enum class Kind { newton_divergence, pole, collision, step_underflow, residual };

  ContinuationError(Kind kind, double s, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + " at s=" + std::to_string(s) + ": " + detail),
        kind_(kind),
        s_(s) {}

  Kind kind() const noexcept { return kind_; }
  double s() const noexcept { return s_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::newton_divergence: return "newton_divergence";
      case Kind::pole: return "pole";
      case Kind::collision: return "collision";
      case Kind::step_underflow: return "step_underflow";
      case Kind::residual: return "residual";
    }
    return "unknown";
  }

 private:
  Kind kind_;
  double s_;
};

struct ContinuationOptions {
  int steps = 64;
  double newton_tolerance = 1e-12;
  double acceptance_residual = 1e-10;
  double collision_distance = 1e-8;
  int max_newton_iterations = 12;
  double min_step = 1e-10;
};

namespace detail {

/// Pole-free form F_i = p_i^L prod_{j != i} u_ij - prod_{j != i} w_ij with
/// u_ij = p_i - beta p_j + alpha and w_ij = beta p_i - p_j - alpha.
struct BetheSystem {
  int k;
  int L;
  Complex alpha;
  Complex beta;

  Complex u(const Eigen::VectorXcd& p, int i, int j) const { return p[i] - beta * p[j] + alpha; }
  Complex w(const Eigen::VectorXcd& p, int i, int j) const { return beta * p[i] - p[j] - alpha; }

  template <class Factor>
  Complex product(const Eigen::VectorXcd& p, int i, int skip, Factor&& f) const {
    Complex r = 1.0;
    for (int j = 0; j < k; ++j)
      if (j != i && j != skip) r *= f(p, i, j);
    return r;
  }

  Eigen::VectorXcd value(const Eigen::VectorXcd& p) const {
    Eigen::VectorXcd F(k);
    auto uf = [this](const auto& q, int i, int j) { return u(q, i, j); };
    auto wf = [this](const auto& q, int i, int j) { return w(q, i, j); };
    for (int i = 0; i < k; ++i) F[i] = ipow(p[i], L) * product(p, i, -1, uf) - product(p, i, -1, wf);
    return F;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& p) const {
    Eigen::MatrixXcd J(k, k);
    auto uf = [this](const auto& q, int i, int j) { return u(q, i, j); };
    auto wf = [this](const auto& q, int i, int j) { return w(q, i, j); };
    for (int i = 0; i < k; ++i) {
      const Complex pl = ipow(p[i], L);
      for (int m = 0; m < k; ++m) {
        if (m == i) {
          Complex d = static_cast<double>(L) * ipow(p[i], L - 1) * product(p, i, -1, uf);
          for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            d += pl * product(p, i, j, uf);
            d -= beta * product(p, i, j, wf);
          }
          J(i, m) = d;
        } else {
          J(i, m) = -beta * pl * product(p, i, m, uf) + product(p, i, m, wf);
        }
      }
    }
    return J;
  }
};

}  // namespace detail

/// Continues the free solutions p_j = exp(2 pi i n_j / L) of (alpha, beta) = (0, 1)
/// along the straight segment (s alpha, 1 + s (beta - 1)), s in [0, 1], with a
/// secant predictor and Newton corrector. The step is halved whenever Newton
/// fails to converge.
inline SpectralPoint solve_bethe(const Params& target, std::span<const int> seed_selection,
                                 const ContinuationOptions& opts = {}) {
  const int k = target.k();
  const int L = target.L();
  if (static_cast<int>(seed_selection.size()) != k) throw std::invalid_argument("solve_bethe: need k seed indices");
  std::vector<int> residues;
  for (int n : seed_selection) residues.push_back(((n % L) + L) % L);
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
    throw std::invalid_argument("solve_bethe: seed roots of unity must be distinct");
  if (opts.steps < 1) throw std::invalid_argument("solve_bethe: steps must be positive");

  const Complex alpha_t = target.alpha.get_d();
  const Complex beta_t = target.beta.get_d();
  auto params_at = [&](double s) {
    return ComplexParams(target.sys, s * alpha_t, Complex(1.0) + s * (beta_t - Complex(1.0)));
  };
  auto system_at = [&](double s) {
    const auto cp = params_at(s);
    return detail::BetheSystem{k, L, cp.alpha, cp.beta};
  };

  Eigen::VectorXcd p(k);
  for (int i = 0; i < k; ++i) p[i] = root_of_unity(seed_selection[static_cast<std::size_t>(i)], L);

  auto as_vector = [](const Eigen::VectorXcd& v) { return std::vector<Complex>(v.data(), v.data() + v.size()); };
  auto check_point = [&](const Eigen::VectorXcd& q, double s) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (std::abs(q[i] - q[j]) < opts.collision_distance)
          throw ContinuationError(ContinuationError::Kind::collision, s,
                                  "p_" + std::to_string(i + 1) + " and p_" + std::to_string(j + 1) + " collide");
    try {
      const auto pv = as_vector(q);
      return max_abs(bethe_residual(params_at(s), pv));
    } catch (const BethePole& e) {
      throw ContinuationError(ContinuationError::Kind::pole, s, e.what());
    }
  };

  // Newton at fixed s; returns false if it does not converge.
  auto correct = [&](Eigen::VectorXcd& q, double s) {
    const auto sys = system_at(s);
    for (int it = 0; it < opts.max_newton_iterations; ++it) {
      const Eigen::VectorXcd F = sys.value(q);
      const Eigen::VectorXcd delta = sys.jacobian(q).fullPivLu().solve(F);
      if (!delta.allFinite()) return false;
      q -= delta;
      if (delta.cwiseAbs().maxCoeff() <= opts.newton_tolerance * (1.0 + q.cwiseAbs().maxCoeff())) return true;
    }
    return false;
  };

  check_point(p, 0.0);
  if (sgn(target.alpha) == 0 && target.beta == 1) return {as_vector(p), check_point(p, 1.0)};

  const double max_step = 1.0 / opts.steps;
  double s = 0.0;
  double step = max_step;
  Eigen::VectorXcd previous = p;
  double previous_step = 0.0;
  while (s < 1.0) {
    const double s_next = std::min(1.0, s + step);
    const double h = s_next - s;
    Eigen::VectorXcd q = p;
    if (previous_step > 0.0) q += (p - previous) * (h / previous_step);
    if (!correct(q, s_next)) {
      step /= 2.0;
      if (step < opts.min_step)
        throw ContinuationError(ContinuationError::Kind::step_underflow, s, "Newton failed with step below minimum");
      continue;
    }
    // Guard against jumping to another solution branch.
    if ((q - p).cwiseAbs().maxCoeff() > 0.25 * (1.0 + p.cwiseAbs().maxCoeff())) {
      step /= 2.0;
      if (step < opts.min_step)
        throw ContinuationError(ContinuationError::Kind::newton_divergence, s, "corrector jumped away from the path");
      continue;
    }
    check_point(q, s_next);
    previous = p;
    previous_step = h;
    p = q;
    s = s_next;
    step = std::min(max_step, 2.0 * step);
  }

  const double residual = check_point(p, 1.0);
  if (residual >= opts.acceptance_residual)
    throw ContinuationError(ContinuationError::Kind::residual, 1.0, "final residual " + std::to_string(residual));
  return {as_vector(p), residual};
}

inline SpectralPoint solve_bethe(const Params& target, std::span<const int> seed_selection, int homotopy_steps) {
  ContinuationOptions opts;
  opts.steps = homotopy_steps;
  return solve_bethe(target, seed_selection, opts);
}

// ---------------------------------------------------------------------------
// Bethe wave functions
// ---------------------------------------------------------------------------

/// sum_{sigma} sgn(sigma) prod_{i<j} (beta p_{s(i)} - p_{s(j)} - alpha) prod_i p_{s(i)}^{-eps_i(x)},
/// evaluated at any x (the formula is only the wave function on the dominant chamber).
template <class Scalar>
Scalar bethe_chamber_formula(const BasicParams<Scalar>& params, std::span<const Scalar> p, const LatticePoint& x) {
  const int k = params.k();
  if (static_cast<int>(p.size()) != k || x.rank() != k) throw std::invalid_argument("bethe wave: rank mismatch");
  Scalar total = scalar_from_int<Scalar>(0);
  detail::for_each_permutation(k, [&](std::span<const int> sigma, int sign) {
    Scalar term = scalar_from_int<Scalar>(sign);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) term *= params.beta * p[sigma[i]] - p[sigma[j]] - params.alpha;
    for (int i = 0; i < k; ++i) term *= ipow(p[sigma[i]], -static_cast<long>(x[i + 1]));
    total += term;
  });
  return total;
}

/// h_p(x): the chamber formula at the dominant representative w_x x.
template <class Scalar>
Scalar bethe_wave(const BasicParams<Scalar>& params, std::span<const Scalar> p, const LatticePoint& x) {
  const LatticePoint z = is_dominant(params.sys, x) ? x : shortest_element(params.sys, x).dominant;
  return bethe_chamber_formula(params, p, z);
}

template <class Scalar>
LatticeFunction<Scalar> bethe_wave_function(const BasicParams<Scalar>& params, std::vector<Scalar> p) {
  return LatticeFunction<Scalar>(
      [params, p = std::move(p)](const LatticePoint& x) { return bethe_wave(params, std::span<const Scalar>(p), x); });
}

// ---------------------------------------------------------------------------
// Hall-Littlewood polynomials
// ---------------------------------------------------------------------------

/// A partition lambda_1 >= lambda_2 >= ... >= 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  /// Parts padded with zeros to length n.
  std::vector<int> padded(int n) const {
    if (static_cast<int>(parts_.size()) > n) {
      for (std::size_t i = static_cast<std::size_t>(n); i < parts_.size(); ++i)
        if (parts_[i] != 0) throw std::invalid_argument("partition has more nonzero parts than variables");
    }
    std::vector<int> out(parts_.begin(), parts_.begin() + std::min<std::size_t>(parts_.size(), static_cast<std::size_t>(n)));
    out.resize(static_cast<std::size_t>(n), 0);
    return out;
  }

  /// All partitions of `total` with at most `max_length` parts.
  static std::vector<Partition> all(int total, int max_length) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int cap) -> void {
      if (remaining == 0) {
        out.emplace_back(cur);
        return;
      }
      if (static_cast<int>(cur.size()) == max_length) return;
      for (int part = std::min(remaining, cap); part >= 1; --part) {
        cur.push_back(part);
        self(self, remaining - part, part);
        cur.pop_back();
      }
    };
    rec(rec, total, total);
    return out;
  }

 private:
  std::vector<int> parts_;
};

/// v_lambda(t) = prod_{a >= 0} prod_{n=1}^{m_a} (1 - t^n)/(1 - t), with m_a the
/// multiplicity of a among the n parts (zeros included). Each factor is
/// evaluated as 1 + t + ... + t^{n-1}, which is also its t = 1 limit.
template <class Scalar>
Scalar v_lambda(const Partition& lambda, int n, const Scalar& t) {
  const std::vector<int> parts = lambda.padded(n);
  Scalar result = scalar_from_int<Scalar>(1);
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    Scalar power = scalar_from_int<Scalar>(1);
    Scalar q_integer = scalar_from_int<Scalar>(0);
    for (std::size_t m = 1; m <= j - i; ++m) {
      q_integer += power;
      power *= t;
      result *= q_integer;
    }
    i = j;
  }
  return result;
}

/// R_e(z; t) = sum_sigma prod_{i<j} (z_{s(i)} - t z_{s(j)}) / (z_{s(i)} - z_{s(j)}) prod_i z_{s(i)}^{e_i}
/// for an arbitrary integer exponent tuple e.
template <class Scalar>
Scalar hall_littlewood_R(std::span<const int> exponents, std::span<const Scalar> z, const Scalar& t) {
  const int k = static_cast<int>(z.size());
  if (static_cast<int>(exponents.size()) != k) throw std::invalid_argument("hall_littlewood_R: length mismatch");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (is_zero(Scalar(z[i] - z[j])))
        throw std::domain_error("hall_littlewood_R: coincident variables z_" + std::to_string(i + 1) + " = z_" +
                                std::to_string(j + 1));
  Scalar total = scalar_from_int<Scalar>(0);
  detail::for_each_permutation(k, [&](std::span<const int> sigma, int) {
    Scalar num = scalar_from_int<Scalar>(1);
    Scalar den = scalar_from_int<Scalar>(1);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        num *= z[sigma[i]] - t * z[sigma[j]];
        den *= z[sigma[i]] - z[sigma[j]];
      }
    }
    for (int i = 0; i < k; ++i) num *= ipow(z[sigma[i]], exponents[i]);
    total += num / den;
  });
  return total;
}

template <class Scalar>
Scalar hall_littlewood_R(const Partition& lambda, std::span<const Scalar> z, const Scalar& t) {
  const auto e = lambda.padded(static_cast<int>(z.size()));
  return hall_littlewood_R<Scalar>(std::span<const int>(e), z, t);
}

/// P_lambda = R_lambda / v_lambda(t); undefined where v_lambda(t) = 0 (t a nontrivial root of unity).
template <class Scalar>
Scalar hall_littlewood_P(const Partition& lambda, std::span<const Scalar> z, const Scalar& t) {
  const Scalar v = v_lambda(lambda, static_cast<int>(z.size()), t);
  if (is_zero(v)) throw std::domain_error("hall_littlewood_P: v_lambda(t) vanishes");
  return hall_littlewood_R(lambda, z, t) / v;
}

/// Checks h_p(x)|_{alpha=0} = Delta(p) R_{eps(x)}(1/p_1, ..., 1/p_k; beta) at a
/// dominant x, exactly, with Delta(p) = prod_{i<j} (p_i - p_j).
inline bool verify_hl_identity(const AffineRootSystem& sys, std::span<const Rational> p, const LatticePoint& x,
                               const Rational& beta) {
  if (!is_dominant(sys, x)) throw std::invalid_argument("verify_hl_identity: x must be dominant");
  const int k = sys.k;
  if (static_cast<int>(p.size()) != k) throw std::invalid_argument("verify_hl_identity: need k parameters");
  const Params params(sys, Rational(0), beta);
  const Rational lhs = bethe_chamber_formula<Rational>(params, p, x);

  Rational vandermonde = 1;
  std::vector<Rational> inverse;
  for (int i = 0; i < k; ++i) {
    if (sgn(p[i]) == 0) throw std::invalid_argument("verify_hl_identity: p must be nonzero");
    inverse.emplace_back(1 / p[i]);
    for (int j = i + 1; j < k; ++j) vandermonde *= p[i] - p[j];
  }
  const std::vector<int> exponents = x.to_vector();
  const Rational rhs = vandermonde * hall_littlewood_R<Rational>(exponents, inverse, beta);
  return lhs == rhs;
}

}  // namespace hecke_bose
