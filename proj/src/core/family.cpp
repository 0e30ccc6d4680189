#include "tperm/family.hpp"

#include "tperm/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace tperm {

Family::Family(int n, std::optional<int> t, std::vector<PartialPermutation> members)
    : n_(n), t_(t), members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].n() != n_)
      throw ValidationError("member " + std::to_string(i) + " has ground size " +
                            std::to_string(members_[i].n()) + ", expected " + std::to_string(n_));
  std::unordered_set<SubsetKey> seen;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (!seen.insert(members_[i].key()).second)
      throw ValidationError("member " + std::to_string(i) + " duplicates an earlier member");
}

Family Family::trusted(int n, std::optional<int> t, std::vector<PartialPermutation> members) {
  Family f(n, t);
  f.members_ = std::move(members);
  return f;
}

bool Family::contains(const PartialPermutation& x) const {
  return std::find(members_.begin(), members_.end(), x) != members_.end();
}

std::size_t Family::max_member_size() const {
  std::size_t m = 0;
  for (const auto& p : members_) m = std::max(m, p.size());
  return m;
}

Family Family::select(const PartialPermutation& x) const {
  std::vector<PartialPermutation> out;
  for (const auto& m : members_)
    if (m.contains_all(x)) out.push_back(m);
  return trusted(n_, t_, std::move(out));
}

Family Family::restrict(const PartialPermutation& x) const {
  std::vector<PartialPermutation> out;
  for (const auto& m : members_)
    if (m.contains_all(x)) out.push_back(m.minus(x));
  return trusted(n_, t_, std::move(out));
}

Family Family::select_many(const Family& s) const {
  std::vector<PartialPermutation> out;
  for (const auto& m : members_)
    for (const auto& x : s.members_)
      if (m.contains_all(x)) {
        out.push_back(m);
        break;
      }
  return trusted(n_, t_, std::move(out));
}

Family Family::minus(const Family& other) const {
  std::unordered_set<SubsetKey> drop;
  for (const auto& m : other.members_) drop.insert(m.key());
  std::vector<PartialPermutation> out;
  for (const auto& m : members_)
    if (!drop.count(m.key())) out.push_back(m);
  return trusted(n_, t_, std::move(out));
}

bool Family::is_t_intersecting(int t) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (intersection_size(members_[i], members_[j]) < static_cast<std::size_t>(std::max(t, 0)))
        return false;
  return true;
}

Family Family::canonical() const {
  std::vector<PartialPermutation> out = members_;
  std::sort(out.begin(), out.end(), size_lex_less);
  return trusted(n_, t_, std::move(out));
}

bool Family::same_set(const Family& other) const {
  return n_ == other.n_ && canonical().members_ == other.canonical().members_;
}

bool is_t_intersecting(const Family& f, int t) { return f.is_t_intersecting(t); }

}  // namespace tperm
