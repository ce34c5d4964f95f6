// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke_bose/lattice.hpp"

namespace hecke_bose {

/// Affine root system of type A_{k-1}^{(1)} with null root L*delta.
///
/// Simple roots: a_i = eps_i - eps_{i+1} for 1 <= i < k, and
/// a_0 = eps_k - eps_1 + L. Everything in this header is a pure function of
/// (k, L) and its arguments.
struct AffineRootSystem {
  int k = 2;
  int L = 1;

  AffineRootSystem() = default;
  AffineRootSystem(int rank, int size) : k(rank), L(size) {
    if (k < 2 || k > kMaxRank) throw std::invalid_argument("particle number k must be in [2, " + std::to_string(kMaxRank) + "]");
    if (L < 1) throw std::invalid_argument("system size L must be >= 1");
  }

  /// The same system seen on the refined lattice (1/2)X: a point x' of
  /// (1/2)X is represented by the integer vector 2x', and every affine root
  /// takes value 2a(x') there.
  AffineRootSystem doubled() const { return {k, 2 * L}; }

  /// Reads an index modulo k into the range 1..k.
  int wrap(int i) const { return ((i - 1) % k + k) % k + 1; }
};

/// The affine root eps_i - eps_j + m L delta.
struct AffineRoot {
  int i = 1;
  int j = 2;
  int m = 0;

  friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;

  std::string str() const {
    return "a(" + std::to_string(i) + "," + std::to_string(j) + ";" + std::to_string(m) + ")";
  }
};

/// a = eps_i - eps_j + mL delta is positive iff m > 0, or m = 0 and i < j.
inline bool is_positive(const AffineRoot& a) { return a.m > 0 || (a.m == 0 && a.i < a.j); }

inline AffineRoot simple_root(const AffineRootSystem& sys, int i) {
  if (i < 0 || i >= sys.k) throw std::out_of_range("simple root index out of range");
  if (i == 0) return {sys.k, 1, 1};
  return {i, i + 1, 0};
}

inline long eval_root(const AffineRootSystem& sys, const AffineRoot& a, const LatticePoint& x) {
  return static_cast<long>(x[a.i]) - x[a.j] + static_cast<long>(a.m) * sys.L;
}

inline long eval_simple_root(const AffineRootSystem& sys, int i, const LatticePoint& x) {
  return eval_root(sys, simple_root(sys, i), x);
}

/// s_a(x) = x - a(x) (v_i - v_j).
inline LatticePoint reflect(const AffineRootSystem& sys, const AffineRoot& a, const LatticePoint& x) {
  const long n = eval_root(sys, a, x);
  LatticePoint y = x;
  y[a.i] -= static_cast<int>(n);
  y[a.j] += static_cast<int>(n);
  return y;
}

inline LatticePoint reflect_simple(const AffineRootSystem& sys, int i, const LatticePoint& x) {
  return reflect(sys, simple_root(sys, i), x);
}

inline bool is_dominant(const AffineRootSystem& sys, const LatticePoint& x) {
  for (int i = 0; i < sys.k; ++i)
    if (eval_simple_root(sys, i, x) < 0) return false;
  return true;
}

/// x is regular when no positive affine root vanishes on it, i.e. no two
/// coordinates agree modulo L.
inline bool is_regular(const AffineRootSystem& sys, const LatticePoint& x) {
  for (int i = 1; i <= sys.k; ++i)
    for (int j = i + 1; j <= sys.k; ++j)
      if ((static_cast<long>(x[i]) - x[j]) % sys.L == 0) return false;
  return true;
}

/// Element of the extended affine Weyl group acting by x -> P x + L t, where
/// the permutation part P sends v_i to v_{perm(i)}. Membership in W proper
/// requires sum(t) = 0.
class AffineWeylElement {
 public:
  AffineWeylElement() : AffineWeylElement(2) {}

  explicit AffineWeylElement(int rank) : trans_(rank) {
    for (int i = 0; i < rank; ++i) perm_[i] = static_cast<std::int8_t>(i + 1);
  }

  static AffineWeylElement identity(int rank) { return AffineWeylElement(rank); }

  /// Pure permutation; images[i-1] = perm(i).
  static AffineWeylElement permutation(std::span<const int> images) {
    AffineWeylElement w(static_cast<int>(images.size()));
    std::vector<bool> seen(images.size() + 1, false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const int p = images[i];
      if (p < 1 || p > static_cast<int>(images.size()) || seen[p]) throw std::invalid_argument("not a permutation");
      seen[p] = true;
      w.perm_[i] = static_cast<std::int8_t>(p);
    }
    return w;
  }

  /// Translation by L*t.
  static AffineWeylElement translation(const LatticePoint& t) {
    AffineWeylElement w(t.rank());
    w.trans_ = t;
    return w;
  }

  static AffineWeylElement simple_reflection(const AffineRootSystem& sys, int i) {
    if (i < 0 || i >= sys.k) throw std::out_of_range("simple reflection index out of range");
    AffineWeylElement w(sys.k);
    if (i == 0) {
      std::swap(w.perm_[0], w.perm_[sys.k - 1]);
      w.trans_[1] = 1;
      w.trans_[sys.k] = -1;
    } else {
      std::swap(w.perm_[i - 1], w.perm_[i]);
    }
    return w;
  }

  /// pi = t_{L v_1} s_1 ... s_{k-1}: v_i -> v_{i+1} cyclically, then shift by L v_1.
  static AffineWeylElement pi(const AffineRootSystem& sys) {
    AffineWeylElement w(sys.k);
    for (int i = 0; i < sys.k; ++i) w.perm_[i] = static_cast<std::int8_t>(i + 2);
    w.perm_[sys.k - 1] = 1;
    w.trans_[1] = 1;
    return w;
  }

  int rank() const noexcept { return trans_.rank(); }
  int perm(int i) const { return perm_[static_cast<std::size_t>(i - 1)]; }
  const LatticePoint& trans() const noexcept { return trans_; }

  /// Gradient part D(w) as a pure permutation.
  AffineWeylElement gradient() const {
    AffineWeylElement w = *this;
    w.trans_ = LatticePoint(rank());
    return w;
  }

  bool in_affine_weyl_group() const {
    long s = 0;
    for (int c : trans_.coords()) s += c;
    return s == 0;
  }

  LatticePoint permute(const LatticePoint& x) const {
    LatticePoint y(rank());
    for (int i = 1; i <= rank(); ++i) y[perm(i)] = x[i];
    return y;
  }

  LatticePoint apply(const LatticePoint& x, int L) const {
    LatticePoint y = permute(x);
    for (int i = 1; i <= rank(); ++i) y[i] += L * trans_[i];
    return y;
  }

  /// (u * w)(x) = u(w(x)).
  friend AffineWeylElement operator*(const AffineWeylElement& u, const AffineWeylElement& w) {
    AffineWeylElement r(u.rank());
    for (int i = 1; i <= u.rank(); ++i) r.perm_[i - 1] = static_cast<std::int8_t>(u.perm(w.perm(i)));
    r.trans_ = u.permute(w.trans_) + u.trans_;
    return r;
  }

  AffineWeylElement inverse() const {
    AffineWeylElement r(rank());
    for (int i = 1; i <= rank(); ++i) r.perm_[perm(i) - 1] = static_cast<std::int8_t>(i);
    r.trans_ = -r.permute(trans_);
    return r;
  }

  /// w(a) := a o w^{-1}.
  AffineRoot act_on_root(const AffineRoot& a) const {
    const int pi = perm(a.i);
    const int pj = perm(a.j);
    return {pi, pj, a.m - trans_[pi] + trans_[pj]};
  }

  friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b) {
    if (a.rank() != b.rank() || !(a.trans_ == b.trans_)) return false;
    for (int i = 1; i <= a.rank(); ++i)
      if (a.perm(i) != b.perm(i)) return false;
    return true;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 1; i <= rank(); ++i) s += (i > 1 ? " " : "") + std::to_string(perm(i));
    return s + "|" + trans_.str() + "]";
  }

 private:
  std::array<std::int8_t, kMaxRank> perm_{};
  LatticePoint trans_;
};

inline LatticePoint act(const AffineRootSystem& sys, const AffineWeylElement& w, const LatticePoint& x) {
  return w.apply(x, sys.L);
}

/// A word s_{i_1} ... s_{i_r} over the letters 0..k-1. The rightmost letter
/// acts first on points.
struct ReducedWord {
  std::vector<int> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

inline AffineWeylElement word_element(const AffineRootSystem& sys, const ReducedWord& word) {
  AffineWeylElement w = AffineWeylElement::identity(sys.k);
  for (int letter : word.letters) w = w * AffineWeylElement::simple_reflection(sys, letter);
  return w;
}

/// l(w) = #(R^+ cap w^{-1} R^-), counted per ordered pair of indices.
inline long length(const AffineWeylElement& w) {
  const int k = w.rank();
  long count = 0;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (i == j) continue;
      const long m0 = i < j ? 0 : 1;
      const long c = static_cast<long>(w.trans()[w.perm(j)]) - w.trans()[w.perm(i)];
      // w(a) has null part m + c; negative iff m + c < 0, or = 0 with perm(i) > perm(j).
      count += std::max(0L, -c - m0);
      if (-c >= m0 && w.perm(i) > w.perm(j)) ++count;
    }
  }
  return count;
}

struct ShortestElement {
  AffineWeylElement element;  // w_x
  ReducedWord word;           // reduced expression for w_x
  LatticePoint dominant;      // w_x x
};

/// The shortest w with w x dominant, by repeated descent through the
/// smallest simple root that is negative at the current point.
inline ShortestElement shortest_element(const AffineRootSystem& sys, const LatticePoint& x) {
  ShortestElement out{AffineWeylElement::identity(sys.k), {}, x};
  std::vector<int> collected;
  while (true) {
    int descent = -1;
    for (int i = 0; i < sys.k; ++i) {
      if (eval_simple_root(sys, i, out.dominant) < 0) {
        descent = i;
        break;
      }
    }
    if (descent < 0) break;
    out.dominant = reflect_simple(sys, descent, out.dominant);
    out.element = AffineWeylElement::simple_reflection(sys, descent) * out.element;
    collected.push_back(descent);
  }
  out.word.letters.assign(collected.rbegin(), collected.rend());
  return out;
}

/// I(x) = { a in R^+ | a(x) < 0 }, enumerated directly and sorted.
inline std::vector<AffineRoot> inversion_set(const AffineRootSystem& sys, const LatticePoint& x) {
  std::vector<AffineRoot> out;
  for (int i = 1; i <= sys.k; ++i) {
    for (int j = 1; j <= sys.k; ++j) {
      if (i == j) continue;
      for (int m = i < j ? 0 : 1;; ++m) {
        const AffineRoot a{i, j, m};
        if (eval_root(sys, a, x) >= 0) break;
        out.push_back(a);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// {s_{i_r} ... s_{i_{p+1}}(a_{i_p})}_{p=1..r} read off a reduced word, sorted.
inline std::vector<AffineRoot> inversion_set_from_word(const AffineRootSystem& sys, const ReducedWord& word) {
  std::vector<AffineRoot> out;
  const auto& w = word.letters;
  for (std::size_t p = 0; p < w.size(); ++p) {
    AffineRoot a = simple_root(sys, w[p]);
    for (std::size_t q = p + 1; q < w.size(); ++q) a = AffineWeylElement::simple_reflection(sys, w[q]).act_on_root(a);
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hecke_bose
