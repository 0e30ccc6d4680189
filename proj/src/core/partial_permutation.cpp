#include "tperm/partial_permutation.hpp"

#include "tperm/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tperm {

namespace {

void check_matching(int n, const std::vector<Cell>& cells) {
  std::vector<char> rows(n + 1, 0), cols(n + 1, 0);
  for (const Cell& c : cells) {
    if (c.row < 1 || c.row > n || c.col < 1 || c.col > n)
      throw ValidationError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                            ") outside the " + std::to_string(n) + "x" + std::to_string(n) + " grid");
    if (rows[c.row]++) throw ValidationError("row " + std::to_string(c.row) + " used twice");
    if (cols[c.col]++) throw ValidationError("column " + std::to_string(c.col) + " used twice");
  }
}

void check_ground(int n) {
  if (n < 1 || n > kMaxGround) throw ValidationError("ground size must be in [1, 255]");
}

}  // namespace

PartialPermutation::PartialPermutation(int n, std::vector<Cell> cells) : n_(n), cells_(std::move(cells)) {
  check_ground(n);
  check_matching(n, cells_);
  std::sort(cells_.begin(), cells_.end());
}

PartialPermutation PartialPermutation::empty(int n) {
  check_ground(n);
  return PartialPermutation(n, {}, Trusted{});
}

PartialPermutation PartialPermutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return from_images(img);
}

PartialPermutation PartialPermutation::from_images(const std::vector<int>& images) {
  int n = static_cast<int>(images.size());
  std::vector<Cell> cells;
  cells.reserve(n);
  for (int i = 0; i < n; ++i) cells.push_back({i + 1, images[i]});
  PartialPermutation p(n, std::move(cells));
  return p;
}

PartialPermutation PartialPermutation::transposition(int n, int a, int b) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  if (a < 1 || a > n || b < 1 || b > n) throw ValidationError("transposition index out of range");
  std::swap(img[a - 1], img[b - 1]);
  return from_images(img);
}

bool PartialPermutation::contains(const Cell& c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

bool PartialPermutation::contains_all(const PartialPermutation& other) const {
  if (other.cells_.size() > cells_.size()) return false;
  return std::includes(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end());
}

std::vector<int> PartialPermutation::images() const {
  if (!is_permutation()) throw ValidationError("not a full permutation");
  std::vector<int> out(n_);
  for (const Cell& c : cells_) out[c.row - 1] = c.col;
  return out;
}

PartialPermutation PartialPermutation::united(const PartialPermutation& other) const {
  if (n_ != other.n_) throw ValidationError("ground size mismatch");
  std::vector<Cell> out;
  std::set_union(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                 std::back_inserter(out));
  check_matching(n_, out);
  return PartialPermutation(n_, std::move(out), Trusted{});
}

PartialPermutation PartialPermutation::minus(const PartialPermutation& other) const {
  std::vector<Cell> out;
  std::set_difference(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                      std::back_inserter(out));
  return PartialPermutation(n_, std::move(out), Trusted{});
}

PartialPermutation PartialPermutation::intersected(const PartialPermutation& other) const {
  std::vector<Cell> out;
  std::set_intersection(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                        std::back_inserter(out));
  return PartialPermutation(n_, std::move(out), Trusted{});
}

PartialPermutation PartialPermutation::with(const Cell& c) const {
  std::vector<Cell> out = cells_;
  out.push_back(c);
  return PartialPermutation(n_, std::move(out));
}

PartialPermutation PartialPermutation::without(const Cell& c) const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const Cell& x : cells_)
    if (x != c) out.push_back(x);
  return PartialPermutation(n_, std::move(out), Trusted{});
}

SubsetKey PartialPermutation::key() const {
  SubsetKey k;
  k.reserve(cells_.size());
  for (const Cell& c : cells_) k.push_back(static_cast<char16_t>(cell_id(c)));
  return k;
}

PartialPermutation PartialPermutation::from_key(int n, const SubsetKey& key) {
  std::vector<Cell> cells;
  cells.reserve(key.size());
  for (char16_t id : key) cells.push_back({static_cast<int>(id) / n + 1, static_cast<int>(id) % n + 1});
  return PartialPermutation(n, std::move(cells), Trusted{});
}

std::string PartialPermutation::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(cells_[i].row) + "," + std::to_string(cells_[i].col) + ")";
  }
  return s + "}";
}

bool size_lex_less(const PartialPermutation& a, const PartialPermutation& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.cells() < b.cells();
}

std::size_t intersection_size(const PartialPermutation& a, const PartialPermutation& b) {
  if (a.n() != b.n()) throw ValidationError("ground size mismatch");
  std::size_t count = 0;
  auto i = a.cells().begin(), j = b.cells().begin();
  while (i != a.cells().end() && j != b.cells().end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<PartialPermutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<PartialPermutation> out;
  do {
    out.push_back(PartialPermutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace tperm
