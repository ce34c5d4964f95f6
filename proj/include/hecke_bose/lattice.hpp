// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke_bose {

/// Largest particle number supported by the fixed-capacity point type.
inline constexpr int kMaxRank = 8;

/// A point of the lattice X = Z v_1 + ... + Z v_k, stored by its coordinates
/// eps_1(x), ..., eps_k(x). Indices are 1-based in the accessors, matching
/// the usual labelling of v_1, ..., v_k.
class LatticePoint {
 public:
  LatticePoint() = default;

  explicit LatticePoint(int rank) : rank_(static_cast<std::uint8_t>(check_rank(rank))) {}

  LatticePoint(std::initializer_list<int> coords) : LatticePoint(std::span<const int>(coords.begin(), coords.size())) {}

  explicit LatticePoint(std::span<const int> coords)
      : rank_(static_cast<std::uint8_t>(check_rank(static_cast<int>(coords.size())))) {
    std::copy(coords.begin(), coords.end(), c_.begin());
  }

  /// The basis vector v_i of a rank-k lattice.
  static LatticePoint basis(int rank, int i) {
    LatticePoint p(rank);
    p[i] = 1;
    return p;
  }

  int rank() const noexcept { return rank_; }

  int& operator[](int i) { return c_[static_cast<std::size_t>(i - 1)]; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i - 1)]; }

  std::span<const int> coords() const noexcept { return {c_.data(), rank_}; }
  std::vector<int> to_vector() const { return {c_.begin(), c_.begin() + rank_}; }

  LatticePoint& operator+=(const LatticePoint& o) {
    for (int i = 0; i < rank_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  LatticePoint& operator-=(const LatticePoint& o) {
    for (int i = 0; i < rank_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  LatticePoint& operator*=(int s) {
    for (int i = 0; i < rank_; ++i) c_[i] *= s;
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(int s, LatticePoint a) { return a *= s; }
  friend LatticePoint operator-(LatticePoint a) { return a *= -1; }

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.rank_ == b.rank_ && std::equal(a.c_.begin(), a.c_.begin() + a.rank_, b.c_.begin());
  }
  /// Lexicographic order on coordinates; used for deterministic reports.
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    return std::lexicographical_compare(a.c_.begin(), a.c_.begin() + a.rank_, b.c_.begin(),
                                        b.c_.begin() + b.rank_);
  }

  std::size_t hash() const noexcept {
    std::size_t h = rank_;
    for (int i = 0; i < rank_; ++i) h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(c_[i]));
    return h;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const LatticePoint& p) { return os << p.str(); }

 private:
  static int check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("lattice rank out of range: " + std::to_string(rank));
    return rank;
  }

  std::array<int, kMaxRank> c_{};
  std::uint8_t rank_ = 0;
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept { return p.hash(); }
};

/// All points with |x_j| <= radius, in lexicographic order.
inline std::vector<LatticePoint> window_points(int rank, int radius) {
  std::vector<LatticePoint> out;
  LatticePoint x(rank);
  for (int i = 1; i <= rank; ++i) x[i] = -radius;
  while (true) {
    out.push_back(x);
    int i = rank;
    while (i >= 1 && x[i] == radius) {
      x[i] = -radius;
      --i;
    }
    if (i < 1) break;
    ++x[i];
  }
  return out;
}

}  // namespace hecke_bose

template <>
struct std::hash<hecke_bose::LatticePoint> {
  std::size_t operator()(const hecke_bose::LatticePoint& p) const noexcept { return p.hash(); }
};
