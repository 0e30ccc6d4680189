#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tperm {

/// Largest supported ground size. Cell ids must fit in 16 bits.
inline constexpr int kMaxGround = 255;

/// A cell (row, col) of the n x n grid, 1-based. Ordered lexicographically.
struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Subset keys: the sorted cell ids packed into a string. Hashable and
/// ordered consistently with the (size, lex) order once size is compared first.
using SubsetKey = std::u16string;

/// A set of cells with pairwise distinct rows and pairwise distinct columns.
/// Cells are kept sorted, so equality and ordering are set equality and
/// lexicographic order on the sorted cell lists.
class PartialPermutation {
 public:
  PartialPermutation() = default;
  /// Validates bounds and the matching property; sorts the cells.
  PartialPermutation(int n, std::vector<Cell> cells);

  static PartialPermutation empty(int n);
  static PartialPermutation identity(int n);
  /// images[i-1] = pi(i), 1-based values.
  static PartialPermutation from_images(const std::vector<int>& images);
  static PartialPermutation transposition(int n, int a, int b);

  int n() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Cell>& cells() const { return cells_; }
  bool is_permutation() const { return static_cast<int>(cells_.size()) == n_; }

  bool contains(const Cell& c) const;
  /// True if every cell of `other` is a cell of this.
  bool contains_all(const PartialPermutation& other) const;
  /// Images of a full permutation, 1-based. Throws unless is_permutation().
  std::vector<int> images() const;

  /// Set union; throws ValidationError if the result is not a matching.
  PartialPermutation united(const PartialPermutation& other) const;
  PartialPermutation minus(const PartialPermutation& other) const;
  PartialPermutation intersected(const PartialPermutation& other) const;
  PartialPermutation with(const Cell& c) const;
  PartialPermutation without(const Cell& c) const;

  SubsetKey key() const;
  static PartialPermutation from_key(int n, const SubsetKey& key);
  std::uint16_t cell_id(const Cell& c) const {
    return static_cast<std::uint16_t>((c.row - 1) * n_ + (c.col - 1));
  }

  std::string to_string() const;

  bool operator==(const PartialPermutation& o) const { return n_ == o.n_ && cells_ == o.cells_; }
  /// Lexicographic on sorted cell lists (not size-first).
  bool operator<(const PartialPermutation& o) const { return cells_ < o.cells_; }

 private:
  struct Trusted {};
  PartialPermutation(int n, std::vector<Cell> sorted_cells, Trusted)
      : n_(n), cells_(std::move(sorted_cells)) {}

  int n_ = 0;
  std::vector<Cell> cells_;
};

/// Order by size, then lexicographically.
bool size_lex_less(const PartialPermutation& a, const PartialPermutation& b);

/// |a ∩ b|. Throws ValidationError on mismatched n.
std::size_t intersection_size(const PartialPermutation& a, const PartialPermutation& b);

/// All permutations of [n] in lexicographic order of their image vectors.
std::vector<PartialPermutation> all_permutations(int n);

}  // namespace tperm
