#pragma once

#include "oracles.hpp"
#include "tperm/family.hpp"

#include <random>

namespace fixture {

using tperm::Cell;
using tperm::Family;
using tperm::PartialPermutation;

inline oracle::CellSet cells(const PartialPermutation& p) {
  oracle::CellSet s;
  for (const Cell& c : p.cells()) s.insert({c.row, c.col});
  return s;
}

inline std::vector<oracle::CellSet> cells(const Family& f) {
  std::vector<oracle::CellSet> out;
  for (const auto& m : f) out.push_back(cells(m));
  return out;
}

struct RandomFamily {
  Family family;
  int t = 0;
  std::vector<Cell> universe;
};

// Random partial permutation of size `size` drawn from `universe`, or an
// empty optional-like result (size 0) if the draw got stuck.
inline PartialPermutation random_member(std::mt19937_64& g, int n, const std::vector<Cell>& universe, int size) {
  std::vector<Cell> pool = universe;
  std::shuffle(pool.begin(), pool.end(), g);
  std::vector<Cell> pick;
  std::vector<bool> row(n + 1), col(n + 1);
  for (const Cell& c : pool) {
    if (static_cast<int>(pick.size()) == size) break;
    if (row[c.row] || col[c.col]) continue;
    row[c.row] = col[c.col] = true;
    pick.push_back(c);
  }
  if (static_cast<int>(pick.size()) < size) return PartialPermutation::empty(n);
  return PartialPermutation(n, pick);
}

// Random t-intersecting family over a universe of at most 12 cells, member
// sizes in [t, t+4]. Members are added greedily when compatible.
inline RandomFamily random_t_intersecting(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); };
  RandomFamily rf;
  const int n = pick(3, 6);
  rf.t = pick(1, 2);
  std::vector<Cell> grid;
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) grid.push_back({r, c});
  std::shuffle(grid.begin(), grid.end(), g);
  const int usize = std::min<int>(static_cast<int>(grid.size()), pick(6, 12));
  rf.universe.assign(grid.begin(), grid.begin() + usize);
  std::vector<PartialPermutation> members;
  const int attempts = pick(20, 120);
  for (int a = 0; a < attempts; ++a) {
    PartialPermutation m = random_member(g, n, rf.universe, pick(rf.t, rf.t + 4));
    if (m.empty()) continue;
    bool ok = true;
    for (const auto& x : members) ok = ok && x != m && tperm::intersection_size(x, m) >= static_cast<std::size_t>(rf.t);
    if (ok) members.push_back(std::move(m));
  }
  if (members.empty()) {
    std::vector<Cell> base;
    std::vector<bool> row(n + 1), col(n + 1);
    for (const Cell& c : rf.universe)
      if (!row[c.row] && !col[c.col] && static_cast<int>(base.size()) < rf.t) {
        row[c.row] = col[c.col] = true;
        base.push_back(c);
      }
    if (static_cast<int>(base.size()) < rf.t) rf.t = static_cast<int>(base.size());
    members.push_back(PartialPermutation(n, base));
  }
  rf.family = Family(n, rf.t, std::move(members));
  return rf;
}

inline PartialPermutation random_permutation(std::mt19937_64& g, int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  std::shuffle(img.begin(), img.end(), g);
  return PartialPermutation::from_images(img);
}

}  // namespace fixture
