#ifndef SHEAFCOORD_COCHAIN_HPP
#define SHEAFCOORD_COCHAIN_HPP

#include <Eigen/Core>

#include <vector>

namespace sheafcoord {

/// Block vector with one real block per cell (node or edge). The inner
/// product is the sum of blockwise dot products.
///
/// Blocks may have dimension zero (e.g. the R^0 stalk of a dynamics sheaf).
struct BlockVector {
  std::vector<Eigen::VectorXd> blocks;

  BlockVector() = default;
  explicit BlockVector(std::vector<Eigen::VectorXd> b) : blocks(std::move(b)) {}

  /// Zero vector with the given per-block dimensions.
  static BlockVector zero(const std::vector<int>& dims);

  int block_count() const { return static_cast<int>(blocks.size()); }
  int total_dim() const;
  bool layout_matches(const std::vector<int>& dims) const;

  double dot(const BlockVector& other) const;
  double squared_norm() const { return dot(*this); }
  double norm() const;
  /// Max absolute entry over all blocks.
  double inf_norm() const;
  /// Max blockwise Euclidean norm.
  double max_block_norm() const;

  void set_zero();

  BlockVector& operator+=(const BlockVector& other);
  BlockVector& operator-=(const BlockVector& other);
  BlockVector& operator*=(double s);

  friend BlockVector operator+(BlockVector a, const BlockVector& b) { return a += b; }
  friend BlockVector operator-(BlockVector a, const BlockVector& b) { return a -= b; }
  friend BlockVector operator*(double s, BlockVector a) { return a *= s; }
};

/// 0-cochain: one block per node, block i in the node stalk F(i).
using Cochain0 = BlockVector;
/// 1-cochain: one block per edge, block e in the edge stalk F(e).
using Cochain1 = BlockVector;

}  // namespace sheafcoord

#endif  // SHEAFCOORD_COCHAIN_HPP
