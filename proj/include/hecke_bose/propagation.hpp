// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hecke_bose/hamiltonian.hpp"
#include "hecke_bose/hecke.hpp"
#include "hecke_bose/lattice.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/weyl.hpp"

namespace hecke_bose {

/// g_p(x) = prod_i p_i^{-eps_i(x)}, an eigenfunction of sum_i t_{v_i} with eigenvalue sum_i p_i.
template <class Scalar>
LatticeFunction<Scalar> plane_wave(std::vector<Scalar> p) {
  for (const auto& pi : p)
    if (is_zero(pi)) throw std::invalid_argument("plane_wave: spectral parameters must be nonzero");
  return LatticeFunction<Scalar>([p = std::move(p)](const LatticePoint& x) {
    if (x.rank() != static_cast<int>(p.size())) throw std::invalid_argument("plane_wave: rank mismatch");
    Scalar value = scalar_from_int<Scalar>(1);
    for (int i = 1; i <= x.rank(); ++i) value *= ipow(p[static_cast<std::size_t>(i - 1)], -static_cast<long>(x[i]));
    return value;
  });
}

/// Evaluates the propagation operator G(f)(x) = (Q_{w_x} f)(w_x x).
///
/// The functions Q_{w} f are kept in a trie keyed by the letters of w read
/// from the right, so points whose shortest elements share a right factor
/// share the memoized intermediate functions.
template <class Scalar>
class Propagator {
 public:
  Propagator(BasicParams<Scalar> params, LatticeFunction<Scalar> f) : params_(std::move(params)) {
    nodes_.push_back(Node{std::move(f), {}});
    nodes_.back().child.fill(-1);
  }

  const BasicParams<Scalar>& params() const noexcept { return params_; }

  /// Q_w f for the reduced word of w.
  LatticeFunction<Scalar> word_function(const ReducedWord& word) {
    std::lock_guard lock(mutex_);
    std::size_t node = 0;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
      const int letter = *it;
      int next = nodes_[node].child[static_cast<std::size_t>(letter)];
      if (next < 0) {
        LatticeFunction<Scalar> fn = apply_Q_letter(params_, letter, nodes_[node].fn);
        next = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{std::move(fn), {}});
        nodes_.back().child.fill(-1);
        nodes_[node].child[static_cast<std::size_t>(letter)] = next;
      }
      node = static_cast<std::size_t>(next);
    }
    return nodes_[node].fn;
  }

  Scalar operator()(const LatticePoint& x) {
    const ShortestElement se = shortest_element(params_.sys, x);
    return word_function(se.word)(se.dominant);
  }

  std::size_t trie_size() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

 private:
  struct Node {
    LatticeFunction<Scalar> fn;
    std::array<int, kMaxRank> child;
  };

  BasicParams<Scalar> params_;
  mutable std::mutex mutex_;
  std::vector<Node> nodes_;
};

/// G(f) as a lattice function; evaluations share one propagator.
template <class Scalar>
LatticeFunction<Scalar> propagate(const LatticeFunction<Scalar>& f, const BasicParams<Scalar>& params) {
  auto prop = std::make_shared<Propagator<Scalar>>(params, f);
  return LatticeFunction<Scalar>([prop](const LatticePoint& x) { return (*prop)(x); });
}

template <class Scalar>
struct LemmaSides {
  Scalar lhs;
  Scalar rhs;
};

/// Both sides of the key identity behind the eigenvalue theorem:
///   ((t_{v_i} - alpha d_i^+) G(f))(x)
///     = ((t_{v_{s(i)}} + (1-beta) sum_{j=1}^{d_i^+(x)} t_{v_{s(i)+j}}) Q_{w_x} f)(w_x x),
/// where v_{s(i)} = D(w_x) v_i and particle indices are read mod k.
template <class Scalar>
LemmaSides<Scalar> lemma_main_sides(Propagator<Scalar>& G, const LatticePoint& x, int i) {
  const auto& params = G.params();
  const AffineRootSystem& sys = params.sys;
  if (i < 1 || i > sys.k) throw std::out_of_range("lemma index out of range");
  const int d = d_plus(sys, i, x);
  LatticePoint y = x;
  --y[i];
  Scalar lhs = G(y) - params.alpha * scalar_from_int<Scalar>(d) * G(x);

  const ShortestElement se = shortest_element(sys, x);
  const LatticeFunction<Scalar> qf = G.word_function(se.word);
  const int image = se.element.perm(i);
  auto shifted = [&](int idx) {
    LatticePoint z = se.dominant;
    --z[sys.wrap(idx)];
    return qf(z);
  };
  Scalar tail = scalar_from_int<Scalar>(0);
  for (int j = 1; j <= d; ++j) tail += shifted(image + j);
  Scalar rhs = shifted(image) + (scalar_from_int<Scalar>(1) - params.beta) * tail;
  return {std::move(lhs), std::move(rhs)};
}

template <class Scalar>
bool verify_lemma_main(Propagator<Scalar>& G, const LatticePoint& x, int i) {
  const auto sides = lemma_main_sides(G, x, i);
  return sides.lhs == sides.rhs;
}

template <class Scalar>
bool verify_lemma_main(const LatticeFunction<Scalar>& f, const LatticePoint& x, int i,
                       const BasicParams<Scalar>& params) {
  Propagator<Scalar> G(params, f);
  return verify_lemma_main(G, x, i);
}

}  // namespace hecke_bose
