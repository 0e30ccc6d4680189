#include "tperm/errors.hpp"
#include "tperm/search.hpp"

#include <algorithm>
#include <numeric>

namespace tperm {

namespace {

void pack_row(const std::vector<std::uint8_t>& img, std::uint8_t pad, std::uint8_t* out) {
  std::fill(out, out + simd::kRowBytes, pad);
  std::copy(img.begin(), img.end(), out);
}

}  // namespace

AgreementGraph::AgreementGraph(int n, int t, const simd::KernelTable& kernels) : n_(n), t_(t), kernels_(&kernels) {
  if (n < 1 || n > static_cast<int>(simd::kRowBytes)) throw ValidationError("agreement graph needs 1 <= n <= 16");
  if (t < 0 || t > n) throw ValidationError("need 0 <= t <= n");
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<std::vector<std::uint8_t>> cand;
  do {
    int fixed = 0;
    for (int i = 0; i < n; ++i) fixed += img[i] == i;
    if (fixed >= t && fixed < n) cand.push_back(img);
  } while (std::next_permutation(img.begin(), img.end()));

  // Degrees need the full graph once; build it in lexicographic order first.
  const std::size_t N = cand.size();
  const std::size_t w = (N + 63) / 64;
  std::vector<std::uint8_t> rows(std::max<std::size_t>(N, 1) * simd::kRowBytes + simd::kRowBytes);
  for (std::size_t i = 0; i < N; ++i) pack_row(cand[i], simd::kRowPad, rows.data() + i * simd::kRowBytes);
  std::vector<std::uint64_t> lex_adj(N * w);
  std::uint8_t probe[simd::kRowBytes];
  std::vector<std::size_t> deg(N);
  for (std::size_t i = 0; i < N; ++i) {
    pack_row(cand[i], simd::kProbePad, probe);
    std::uint64_t* r = lex_adj.data() + i * w;
    kernels.agreement_row(probe, rows.data(), N, t, r);
    r[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    deg[i] = kernels.popcount(r, w);
  }
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  std::vector<std::size_t> pos(N);
  for (std::size_t i = 0; i < N; ++i) pos[order[i]] = i;

  words_ = w;
  images_.resize(N);
  degree_.resize(N);
  adj_.assign(N * w, 0);
  for (std::size_t i = 0; i < N; ++i) {
    images_[i] = cand[order[i]];
    degree_[i] = deg[order[i]];
    const std::uint64_t* src = lex_adj.data() + order[i] * w;
    std::uint64_t* dst = adj_.data() + i * w;
    for (std::size_t j = 0; j < N; ++j)
      if (src[j / 64] >> (j % 64) & 1) dst[pos[j] / 64] |= std::uint64_t{1} << (pos[j] % 64);
  }
}

PartialPermutation AgreementGraph::permutation(std::size_t v) const {
  std::vector<int> img(images_[v].begin(), images_[v].end());
  for (int& x : img) ++x;
  return PartialPermutation::from_images(img);
}

std::vector<std::uint64_t> agreement_matrix(const std::vector<PartialPermutation>& perms, int t,
                                            const simd::KernelTable& kernels) {
  const std::size_t N = perms.size();
  const std::size_t w = (N + 63) / 64;
  std::vector<std::uint8_t> rows(N * simd::kRowBytes + simd::kRowBytes);
  std::vector<std::vector<std::uint8_t>> imgs;
  for (std::size_t i = 0; i < N; ++i) {
    if (perms[i].n() > static_cast<int>(simd::kRowBytes)) throw ValidationError("agreement rows need n <= 16");
    std::vector<std::uint8_t> img;
    for (int x : perms[i].images()) img.push_back(static_cast<std::uint8_t>(x - 1));
    pack_row(img, simd::kRowPad, rows.data() + i * simd::kRowBytes);
    imgs.push_back(std::move(img));
  }
  std::vector<std::uint64_t> out(N * w);
  std::uint8_t probe[simd::kRowBytes];
  for (std::size_t i = 0; i < N; ++i) {
    pack_row(imgs[i], simd::kProbePad, probe);
    kernels.agreement_row(probe, rows.data(), N, t, out.data() + i * w);
  }
  return out;
}

}  // namespace tperm
