#include "wavedg/block_matrix.hpp"

#include <stdexcept>

#include "wavedg/parallel.hpp"

namespace wavedg {

BlockMatrix::BlockMatrix(std::vector<Eigen::Index> offsets, std::vector<int> sizes)
    : offsets_(std::move(offsets)), sizes_(std::move(sizes)) {
  total_ = sizes_.empty() ? 0 : offsets_.back() + sizes_.back();
  pending_.resize(sizes_.size());
  rows_.resize(sizes_.size());
}

void BlockMatrix::add(int row_block, int col_block, const Eigen::MatrixXd& block) {
  if (finalized_) throw std::logic_error("BlockMatrix::add after finalize");
  auto& slot = pending_[row_block];
  auto it = slot.find(col_block);
  if (it == slot.end())
    slot.emplace(col_block, block);
  else
    it->second += block;
}

void BlockMatrix::finalize() {
  for (std::size_t b = 0; b < pending_.size(); ++b) {
    rows_[b].clear();
    rows_[b].reserve(pending_[b].size());
    for (auto& [col, blk] : pending_[b]) rows_[b].push_back({col, std::move(blk)});
  }
  pending_.clear();
  pending_.shrink_to_fit();
  finalized_ = true;
}

void BlockMatrix::multiply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y, const DofMask* rows) const {
  y.setZero(total_, x.cols());
  parallel_for(rows_.size(), [&](std::size_t b) {
    if (rows && !(*rows)[offsets_[b]]) return;
    auto yb = y.middleRows(offsets_[b], sizes_[b]);
    for (const auto& e : rows_[b])
      yb.noalias() += e.block * x.middleRows(offsets_[e.col], sizes_[e.col]);
  });
}

Eigen::MatrixXd BlockMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(total_, total_);
  for (std::size_t b = 0; b < rows_.size(); ++b)
    for (const auto& e : rows_[b])
      d.block(offsets_[b], offsets_[e.col], sizes_[b], sizes_[e.col]) = e.block;
  return d;
}

std::size_t BlockMatrix::stored_values() const {
  std::size_t n = 0;
  for (const auto& r : rows_)
    for (const auto& e : r) n += static_cast<std::size_t>(e.block.size());
  return n;
}

MassMatrix::MassMatrix(std::vector<Eigen::Index> offsets, std::vector<int> sizes)
    : offsets_(std::move(offsets)), sizes_(std::move(sizes)), blocks_(sizes_.size()) {}

void MassMatrix::set_u_block(int b, double area, const Eigen::MatrixXd& gradient_gram) {
  Block& blk = blocks_[b];
  blk.is_u = true;
  blk.area = area;
  blk.gram = gradient_gram;
  if (gradient_gram.rows() > 0) {
    blk.gram_llt.compute(gradient_gram);
    if (blk.gram_llt.info() != Eigen::Success)
      throw std::runtime_error("MassMatrix: gradient Gram matrix is not positive definite");
  }
}

void MassMatrix::set_v_block(int b, const Eigen::VectorXd& diagonal) {
  Block& blk = blocks_[b];
  blk.is_u = false;
  blk.diagonal = diagonal;
}

void MassMatrix::solve_in_place(Eigen::MatrixXd& y, const DofMask* rows) const {
  parallel_for(blocks_.size(), [&](std::size_t b) {
    if (rows && !(*rows)[offsets_[b]]) return;
    const Block& blk = blocks_[b];
    auto yb = y.middleRows(offsets_[b], sizes_[b]);
    if (blk.is_u) {
      yb.row(0) /= blk.area;
      const int r = sizes_[b] - 1;
      if (r > 0) yb.bottomRows(r) = blk.gram_llt.solve(yb.bottomRows(r));
    } else {
      yb = blk.diagonal.cwiseInverse().asDiagonal() * yb;
    }
  });
}

Eigen::MatrixXd MassMatrix::block(int b) const {
  const Block& blk = blocks_[b];
  const int s = sizes_[b];
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s, s);
  if (blk.is_u) {
    m(0, 0) = blk.area;
    if (s > 1) m.bottomRightCorner(s - 1, s - 1) = blk.gram;
  } else {
    m.diagonal() = blk.diagonal;
  }
  return m;
}

Eigen::MatrixXd MassMatrix::to_dense() const {
  const Eigen::Index n = sizes_.empty() ? 0 : offsets_.back() + sizes_.back();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    d.block(offsets_[b], offsets_[b], sizes_[b], sizes_[b]) = block(static_cast<int>(b));
  return d;
}

}  // namespace wavedg
