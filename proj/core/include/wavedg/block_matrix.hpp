#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

namespace wavedg {

/// Mask over degrees of freedom (non-zero = selected).
using DofMask = std::vector<char>;

/// Sparse matrix of dense blocks, one block row/column per element.
/// Blocks are accumulated with add() and frozen with finalize().
class BlockMatrix {
 public:
  struct Entry {
    int col = 0;
    Eigen::MatrixXd block;
  };

  BlockMatrix() = default;
  BlockMatrix(std::vector<Eigen::Index> offsets, std::vector<int> sizes);

  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  Eigen::Index rows() const { return total_; }
  Eigen::Index offset(int b) const { return offsets_[b]; }
  int size(int b) const { return sizes_[b]; }

  void add(int row_block, int col_block, const Eigen::MatrixXd& block);
  void finalize();
  bool finalized() const { return finalized_; }

  const std::vector<Entry>& row(int b) const { return rows_[b]; }

  /// y = A x for the selected block rows (all when mask is null); other rows of y are zeroed.
  void multiply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y, const DofMask* rows = nullptr) const;

  Eigen::MatrixXd to_dense() const;
  std::size_t stored_values() const;

 private:
  std::vector<Eigen::Index> offsets_;
  std::vector<int> sizes_;
  Eigen::Index total_ = 0;
  std::vector<std::map<int, Eigen::MatrixXd>> pending_;
  std::vector<std::vector<Entry>> rows_;
  bool finalized_ = false;
};

/// Block-diagonal mass matrix. u blocks hold the cell-average row (mode 0)
/// and the c^2-weighted gradient Gram matrix on the remaining modes;
/// v blocks are diagonal.
class MassMatrix {
 public:
  MassMatrix() = default;
  MassMatrix(std::vector<Eigen::Index> offsets, std::vector<int> sizes);

  void set_u_block(int b, double area, const Eigen::MatrixXd& gradient_gram);
  void set_v_block(int b, const Eigen::VectorXd& diagonal);

  /// y <- M^{-1} y on the selected block rows.
  void solve_in_place(Eigen::MatrixXd& y, const DofMask* rows = nullptr) const;
  /// Dense copy of block b of M.
  Eigen::MatrixXd block(int b) const;
  bool is_u_block(int b) const { return blocks_[b].is_u; }
  Eigen::MatrixXd to_dense() const;

 private:
  struct Block {
    bool is_u = false;
    double area = 0.0;
    Eigen::MatrixXd gram;  // modes 1.. of a u block
    Eigen::LLT<Eigen::MatrixXd> gram_llt;
    Eigen::VectorXd diagonal;  // v block
  };
  std::vector<Eigen::Index> offsets_;
  std::vector<int> sizes_;
  std::vector<Block> blocks_;
};

}  // namespace wavedg
