#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyalasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a numerical routine cannot produce a trustworthy result
/// (singular system, failed factorization, non-convergence past recovery).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-stacking flat index: entry (i,j) of a p x p matrix, 0-based,
/// sits at position j*p + i of vec(M).
inline int flat_index(int i, int j, int p) { return j * p + i; }

inline int flat_row(int flat, int p) { return flat % p; }
inline int flat_col(int flat, int p) { return flat / p; }

inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, int p) {
  return Eigen::Map<const Matrix>(v.data(), p, p);
}

/// One (row, column) entry position, 0-based.
struct Pair {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Set of matrix entry positions over a p x p grid, kept sorted by
/// column-stacking flat index.
///
/// Encodes the directed graph of a drift matrix: the edge i -> j of the
/// graph corresponds to the pair (row=j, col=i), and supports of stable
/// matrices always contain the whole diagonal (self-loops).
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(int p, std::vector<Pair> pairs) : p_(p), pairs_(std::move(pairs)) {
    for (const Pair& q : pairs_) {
      if (q.row < 0 || q.row >= p_ || q.col < 0 || q.col >= p_)
        throw std::invalid_argument("SupportSet: pair out of range");
    }
    normalize();
  }

  int p() const { return p_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool contains(int i, int j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j},
                              FlatLess{p_});
  }

  /// Number of off-diagonal pairs (graph edges).
  int edge_count() const {
    int e = 0;
    for (const Pair& q : pairs_) e += (q.row != q.col);
    return e;
  }

  bool has_full_diagonal() const {
    for (int i = 0; i < p_; ++i)
      if (!contains(i, i)) return false;
    return true;
  }

  /// Pair positions as sorted flat indices into vec(M).
  std::vector<int> flat_indices() const {
    std::vector<int> idx;
    idx.reserve(pairs_.size());
    for (const Pair& q : pairs_) idx.push_back(flat_index(q.row, q.col, p_));
    return idx;
  }

  /// Flat indices of the complement S^c, ascending.
  std::vector<int> complement_indices() const {
    std::vector<int> inside = flat_indices();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(p_) * p_ - inside.size());
    std::size_t k = 0;
    for (int f = 0; f < p_ * p_; ++f) {
      if (k < inside.size() && inside[k] == f) {
        ++k;
      } else {
        out.push_back(f);
      }
    }
    return out;
  }

  /// Copy with all diagonal pairs added.
  SupportSet with_diagonal() const {
    std::vector<Pair> q = pairs_;
    for (int i = 0; i < p_; ++i) q.push_back(Pair{i, i});
    return SupportSet(p_, std::move(q));
  }

  /// Off-diagonal pairs only (the edge positions).
  std::vector<Pair> offdiagonal_pairs() const {
    std::vector<Pair> q;
    for (const Pair& e : pairs_)
      if (e.row != e.col) q.push_back(e);
    return q;
  }

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.p_ == b.p_ && a.pairs_ == b.pairs_;
  }

 private:
  struct FlatLess {
    int p;
    bool operator()(const Pair& a, const Pair& b) const {
      return flat_index(a.row, a.col, p) < flat_index(b.row, b.col, p);
    }
  };

  void normalize() {
    std::sort(pairs_.begin(), pairs_.end(), FlatLess{p_});
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  int p_ = 0;
  std::vector<Pair> pairs_;
};

/// Entry positions with |M_ij| > threshold.
SupportSet support_of(const Matrix& m, double threshold = 0.0);

}  // namespace lyalasso
