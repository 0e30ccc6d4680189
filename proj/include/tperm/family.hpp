#pragma once

#include "tperm/partial_permutation.hpp"

#include <optional>
#include <vector>

namespace tperm {

/// Ordered collection of distinct partial permutations over a shared n.
class Family {
 public:
  Family() = default;
  explicit Family(int n, std::optional<int> t = std::nullopt) : n_(n), t_(t) {}
  /// Validates ground sizes and rejects duplicate members.
  Family(int n, std::optional<int> t, std::vector<PartialPermutation> members);

  /// Skips the duplicate check; the caller guarantees distinct members.
  static Family trusted(int n, std::optional<int> t, std::vector<PartialPermutation> members);

  int n() const { return n_; }
  std::optional<int> t() const { return t_; }
  void set_t(std::optional<int> t) { t_ = t; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<PartialPermutation>& members() const { return members_; }
  const PartialPermutation& operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(const PartialPermutation& x) const;
  std::size_t max_member_size() const;

  /// F[X]: members containing x.
  Family select(const PartialPermutation& x) const;
  /// F(X): members containing x, with x removed from each.
  Family restrict(const PartialPermutation& x) const;
  /// F[S]: members containing at least one member of s, in this family's order.
  Family select_many(const Family& s) const;
  /// Members not in `other` (set difference, order preserved).
  Family minus(const Family& other) const;

  /// Every unordered pair of distinct members shares >= t cells.
  bool is_t_intersecting(int t) const;

  /// Same members, sorted by (size, lex). Handy for comparing families as sets.
  Family canonical() const;
  bool same_set(const Family& other) const;

 private:
  int n_ = 0;
  std::optional<int> t_;
  std::vector<PartialPermutation> members_;
};

bool is_t_intersecting(const Family& f, int t);

}  // namespace tperm
