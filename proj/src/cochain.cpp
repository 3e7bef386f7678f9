#include "sheafcoord/cochain.hpp"

#include <cmath>
#include <stdexcept>

namespace sheafcoord {

BlockVector BlockVector::zero(const std::vector<int>& dims) {
  BlockVector v;
  v.blocks.reserve(dims.size());
  for (int d : dims) v.blocks.push_back(Eigen::VectorXd::Zero(d));
  return v;
}

int BlockVector::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

bool BlockVector::layout_matches(const std::vector<int>& dims) const {
  if (blocks.size() != dims.size()) return false;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (static_cast<int>(blocks[k].size()) != dims[k]) return false;
  }
  return true;
}

double BlockVector::dot(const BlockVector& other) const {
  if (blocks.size() != other.blocks.size()) {
    throw std::invalid_argument("BlockVector::dot: block count mismatch");
  }
  double s = 0.0;
  for (size_t k = 0; k < blocks.size(); ++k) s += blocks[k].dot(other.blocks[k]);
  return s;
}

double BlockVector::norm() const { return std::sqrt(squared_norm()); }

double BlockVector::inf_norm() const {
  double m = 0.0;
  for (const auto& b : blocks) {
    if (b.size() > 0) m = std::max(m, b.lpNorm<Eigen::Infinity>());
  }
  return m;
}

double BlockVector::max_block_norm() const {
  double m = 0.0;
  for (const auto& b : blocks) m = std::max(m, b.norm());
  return m;
}

void BlockVector::set_zero() {
  for (auto& b : blocks) b.setZero();
}

BlockVector& BlockVector::operator+=(const BlockVector& other) {
  if (blocks.size() != other.blocks.size()) {
    throw std::invalid_argument("BlockVector: block count mismatch");
  }
  for (size_t k = 0; k < blocks.size(); ++k) blocks[k] += other.blocks[k];
  return *this;
}

BlockVector& BlockVector::operator-=(const BlockVector& other) {
  if (blocks.size() != other.blocks.size()) {
    throw std::invalid_argument("BlockVector: block count mismatch");
  }
  for (size_t k = 0; k < blocks.size(); ++k) blocks[k] -= other.blocks[k];
  return *this;
}

BlockVector& BlockVector::operator*=(double s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

}  // namespace sheafcoord
