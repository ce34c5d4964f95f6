// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hecke_bose/bethe.hpp"
#include "hecke_bose/hamiltonian.hpp"
#include "hecke_bose/hecke.hpp"
#include "hecke_bose/laurent.hpp"
#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/propagation.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// Seeded source of small random rationals. Uses mt19937_64, whose output
/// sequence is fixed by the standard, and plain modular reduction so draws
/// are identical on every platform.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

  /// num/den with |num| <= max_num and 1 <= den <= max_den.
  Rational rational(long max_num = 6, long max_den = 6) {
    Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long max_num = 6, long max_den = 6) {
    while (true) {
      Rational q = rational(max_num, max_den);
      if (sgn(q) != 0) return q;
    }
  }

  /// n pairwise distinct nonzero rationals.
  std::vector<Rational> distinct_nonzero(int n, long max_num = 6, long max_den = 6) {
    std::vector<Rational> out;
    while (static_cast<int>(out.size()) < n) {
      Rational q = nonzero_rational(max_num, max_den);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// A function with independent pseudo-random rational values at every point,
/// a pure function of (seed, x).
inline LatticeFunction<Rational> random_function(std::uint64_t seed) {
  return LatticeFunction<Rational>(
      [seed](const LatticePoint& x) {
        std::uint64_t h = detail::splitmix64(seed);
        for (int c : x.coords()) h = detail::splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)));
        const long num = static_cast<long>(h % 41) - 20;
        const long den = static_cast<long>((h >> 32) % 7) + 1;
        Rational q(num, den);
        q.canonicalize();
        return q;
      },
      Memo::off);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Failure {
  LatticePoint x;
  std::string detail;
};

struct Report {
  std::string suite;
  Params params;
  int window = 0;
  std::uint64_t seed = 0;
  long checks_run = 0;
  std::vector<Failure> failures;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return failures.empty(); }
};

inline constexpr std::array<std::string_view, 7> kSuiteNames = {"hecke",       "duality", "d-change",   "w-invariance",
                                                                 "lemma-main", "theorem", "hl-identity"};

inline bool is_suite_name(std::string_view name) {
  return std::find(kSuiteNames.begin(), kSuiteNames.end(), name) != kSuiteNames.end();
}

/// Worker count: hardware concurrency, capped by HECKE_BOSE_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HECKE_BOSE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace detail {

/// One check at one point: returns a failure description or nothing.
using PointCheck = std::function<std::optional<std::string>(const LatticePoint&)>;

/// Runs `checks` at every point, spreading points over workers. Failures are
/// returned sorted by x and then by description.
inline void run_checks(Report& report, const std::vector<LatticePoint>& points, const std::vector<PointCheck>& checks) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::string>> found(n);
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t idx = start; idx < n; idx += stride)
      for (const auto& check : checks)
        if (auto msg = check(points[idx])) found[idx].push_back(std::move(*msg));
  };
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  report.checks_run += static_cast<long>(n * checks.size());
  std::vector<Failure> failures;
  for (std::size_t idx = 0; idx < n; ++idx)
    for (auto& msg : found[idx]) failures.push_back({points[idx], std::move(msg)});
  std::stable_sort(failures.begin(), failures.end(), [](const Failure& a, const Failure& b) {
    if (a.x == b.x) return a.detail < b.detail;
    return a.x < b.x;
  });
  for (auto& f : failures) report.failures.push_back(std::move(f));
}

inline std::optional<std::string> mismatch(const std::string& what, const Rational& lhs, const Rational& rhs) {
  if (lhs == rhs) return std::nullopt;
  return what + ": " + to_string(lhs) + " != " + to_string(rhs);
}

inline void suite_hecke(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  const int k = P.k();
  const auto f = random_function(seed);
  std::vector<PointCheck> checks;
  std::vector<LatticeFunction<Rational>> q(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) q[i] = apply_Q_letter(P, i, f);

  for (int i = 0; i < k; ++i) {
    // (Q_i - 1)(Q_i + beta) = Q_i^2 + (beta - 1) Q_i - beta.
    auto qq = apply_Q_letter(P, i, q[i]);
    checks.push_back([=, qi = q[i]](const LatticePoint& x) {
      Rational value = qq(x) + (P.beta - 1) * qi(x) - P.beta * f(x);
      return mismatch("quadratic Q_" + std::to_string(i), value, Rational(0));
    });
  }
  if (k >= 3) {
    for (int i = 0; i < k; ++i) {
      const int j = (i + 1) % k;
      auto lhs = apply_Q_letter(P, i, apply_Q_letter(P, j, q[i]));
      auto rhs = apply_Q_letter(P, j, apply_Q_letter(P, i, q[j]));
      checks.push_back([=](const LatticePoint& x) {
        return mismatch("braid Q_" + std::to_string(i) + " Q_" + std::to_string(j), lhs(x), rhs(x));
      });
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const int gap = std::min(j - i, k - (j - i));
      if (gap < 2) continue;
      auto lhs = apply_Q_letter(P, i, q[j]);
      auto rhs = apply_Q_letter(P, j, q[i]);
      checks.push_back([=](const LatticePoint& x) {
        return mismatch("commute Q_" + std::to_string(i) + " Q_" + std::to_string(j), lhs(x), rhs(x));
      });
    }
  }
  // t_{v_{j+1}} Q_j = Q_j t_{v_j} + alpha + (1 - beta) t_{v_{j+1}};  t_{v_m} Q_j = Q_j t_{v_m} otherwise.
  for (int j = 0; j < k; ++j) {
    const int vj = P.sys.wrap(j);
    const int vn = P.sys.wrap(j + 1);
    for (int m = 1; m <= k; ++m) {
      const LatticePoint vm = LatticePoint::basis(k, m);
      auto q_shift = apply_Q_letter(P, j, shift(vm, f));
      if (m == vn) {
        auto q_shift_j = apply_Q_letter(P, j, shift(LatticePoint::basis(k, vj), f));
        checks.push_back([=, qj = q[j]](const LatticePoint& x) {
          Rational lhs = qj(x - vm);
          Rational rhs = q_shift_j(x) + P.alpha * f(x) + (1 - P.beta) * f(x - vm);
          return mismatch("tQ t_" + std::to_string(m) + " Q_" + std::to_string(j), lhs, rhs);
        });
      } else if (m != vj) {
        checks.push_back([=, qj = q[j]](const LatticePoint& x) {
          return mismatch("tQ t_" + std::to_string(m) + " Q_" + std::to_string(j), qj(x - vm), q_shift(x));
        });
      }
    }
  }
  run_checks(r, pts, checks);
}

inline void suite_duality(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  const auto f = random_function(seed);
  std::vector<PointCheck> checks;
  for (int i = 1; i < P.k(); ++i) {
    auto qi = apply_Q(P, i, f);
    checks.push_back([=](const LatticePoint& x) {
      const Rational dual = pairing(f, apply_T_check(P, i, LaurentPolynomial::monomial(x)));
      return mismatch("(Q_" + std::to_string(i) + " f, e^x) vs (f, T_" + std::to_string(i) + " e^x)", qi(x), dual);
    });
  }
  run_checks(r, pts, checks);
}

inline void suite_d_change(Report& r, const std::vector<LatticePoint>& pts) {
  const AffineRootSystem sys = r.params.sys;
  std::vector<PointCheck> checks;
  for (int i = 1; i <= sys.k; ++i)
    for (int j = 0; j < sys.k; ++j)
      checks.push_back([=](const LatticePoint& x) -> std::optional<std::string> {
        if (verify_d_change(sys, x, i, j)) return std::nullopt;
        return "d_" + std::to_string(i) + " under s_" + std::to_string(j);
      });
  run_checks(r, pts, checks);
}

inline void suite_w_invariance(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  const auto f = random_function(seed);
  std::vector<LatticePoint> regular;
  for (const auto& x : pts)
    if (is_regular(P.sys, x)) regular.push_back(x);
  std::vector<PointCheck> checks;
  for (int j = 0; j < P.k(); ++j) {
    const auto s = AffineWeylElement::simple_reflection(P.sys, j);
    // (w H w^{-1} f)(x) = (H (w^{-1} f))(w^{-1} x) with w = w^{-1} = s_j.
    const auto sf = act_on_function(P.sys, s, f);
    checks.push_back([=](const LatticePoint& x) {
      return mismatch("s_" + std::to_string(j) + " H s_" + std::to_string(j), apply_H(sf, act(P.sys, s, x), P),
                      apply_H(f, x, P));
    });
  }
  run_checks(r, regular, checks);
}

inline void suite_lemma_main(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  auto G = std::make_shared<Propagator<Rational>>(P, random_function(seed));
  std::vector<PointCheck> checks;
  for (int i = 1; i <= P.k(); ++i)
    checks.push_back([=](const LatticePoint& x) {
      const auto sides = lemma_main_sides(*G, x, i);
      return mismatch("lemma i=" + std::to_string(i), sides.lhs, sides.rhs);
    });
  run_checks(r, pts, checks);
}

inline void suite_theorem(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  RationalSampler rng(seed);
  const std::vector<Rational> p = rng.distinct_nonzero(P.k());
  Rational lambda = 0;
  for (const auto& pi : p) lambda += pi;
  const auto G = propagate(plane_wave<Rational>(p), P);
  std::vector<PointCheck> checks{[=](const LatticePoint& x) {
    return mismatch("H G(g_p) vs lambda G(g_p)", apply_H(G, x, P), Rational(lambda * G(x)));
  }};
  run_checks(r, pts, checks);
}

inline void suite_hl_identity(Report& r, const std::vector<LatticePoint>& pts, std::uint64_t seed) {
  const Params& P = r.params;
  RationalSampler rng(seed);
  const std::vector<Rational> p = rng.distinct_nonzero(P.k());
  std::vector<LatticePoint> dominant;
  for (const auto& x : pts)
    if (is_dominant(P.sys, x)) dominant.push_back(x);
  std::vector<PointCheck> checks{[=](const LatticePoint& x) -> std::optional<std::string> {
    if (verify_hl_identity(P.sys, p, x, P.beta)) return std::nullopt;
    return std::string("h_p(x)|_{alpha=0} != Delta(p) R_eps(x)(1/p; beta)");
  }};
  run_checks(r, dominant, checks);
}

}  // namespace detail

/// Runs one named property suite over the window |x_j| <= window.
inline Report run_suite(std::string_view suite, const Params& params, int window, std::uint64_t seed) {
  if (!is_suite_name(suite)) throw std::invalid_argument("unknown suite: " + std::string(suite));
  if (window < 0) throw std::invalid_argument("window must be nonnegative");
  Report r;
  r.suite = std::string(suite);
  r.params = params;
  r.window = window;
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  const auto pts = window_points(params.k(), window);
  if (suite == "hecke") detail::suite_hecke(r, pts, seed);
  else if (suite == "duality") detail::suite_duality(r, pts, seed);
  else if (suite == "d-change") detail::suite_d_change(r, pts);
  else if (suite == "w-invariance") detail::suite_w_invariance(r, pts, seed);
  else if (suite == "lemma-main") detail::suite_lemma_main(r, pts, seed);
  else if (suite == "theorem") detail::suite_theorem(r, pts, seed);
  else detail::suite_hl_identity(r, pts, seed);
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hecke_bose
