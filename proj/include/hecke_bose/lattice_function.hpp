// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "hecke_bose/lattice.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

enum class Memo { off, on };

/// A scalar-valued function on X, evaluated lazily.
///
/// Copies share the evaluator and the memo table. The table is guarded by a
/// shared mutex, so concurrent evaluation is safe; the lock is not held while
/// the underlying evaluator runs, so recursive graphs of functions do not
/// deadlock.
template <class Scalar>
class LatticeFunction {
 public:
  using Evaluator = std::function<Scalar(const LatticePoint&)>;

  LatticeFunction() = default;

  explicit LatticeFunction(Evaluator eval, Memo memo = Memo::on)
      : state_(std::make_shared<State>(std::move(eval), memo == Memo::on)) {}

  Scalar operator()(const LatticePoint& x) const {
    State& s = *state_;
    if (!s.memoize) return s.eval(x);
    {
      std::shared_lock lock(s.mutex);
      if (auto it = s.cache.find(x); it != s.cache.end()) return it->second;
    }
    Scalar value = s.eval(x);
    std::unique_lock lock(s.mutex);
    s.cache.emplace(x, value);
    return value;
  }

  bool valid() const noexcept { return static_cast<bool>(state_); }
  bool memoized() const noexcept { return state_ && state_->memoize; }

  std::size_t cache_size() const {
    std::shared_lock lock(state_->mutex);
    return state_->cache.size();
  }

  /// Same evaluator with memoization switched off.
  LatticeFunction unmemoized() const {
    auto s = state_;
    return LatticeFunction([s](const LatticePoint& x) { return s->eval(x); }, Memo::off);
  }

 private:
  struct State {
    State(Evaluator e, bool m) : eval(std::move(e)), memoize(m) {}
    Evaluator eval;
    bool memoize;
    mutable std::shared_mutex mutex;
    std::unordered_map<LatticePoint, Scalar, LatticePointHash> cache;
  };

  std::shared_ptr<State> state_;
};

/// (w f)(x) = f(w^{-1} x).
template <class Scalar>
LatticeFunction<Scalar> act_on_function(const AffineRootSystem& sys, const AffineWeylElement& w,
                                        const LatticeFunction<Scalar>& f, Memo memo = Memo::on) {
  const AffineWeylElement winv = w.inverse();
  const int L = sys.L;
  return LatticeFunction<Scalar>([f, winv, L](const LatticePoint& x) { return f(winv.apply(x, L)); }, memo);
}

/// (t_{v'} f)(x) = f(x - v').
template <class Scalar>
LatticeFunction<Scalar> shift(const LatticePoint& by, const LatticeFunction<Scalar>& f) {
  return LatticeFunction<Scalar>([f, by](const LatticePoint& x) { return f(x - by); });
}

template <class Scalar>
LatticeFunction<Scalar> linear_combination(const Scalar& a, const LatticeFunction<Scalar>& f, const Scalar& b,
                                           const LatticeFunction<Scalar>& g) {
  return LatticeFunction<Scalar>([=](const LatticePoint& x) { return Scalar(a * f(x) + b * g(x)); });
}

}  // namespace hecke_bose
