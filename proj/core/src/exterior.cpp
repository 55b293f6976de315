#include "grasscurve/exterior.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <tuple>

namespace grasscurve {

std::size_t binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t v = 1;
  for (long i = 0; i < k; ++i) v = v * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return v;
}

std::size_t rank_of(int ambient, const MultiIndex& idx) {
  const int k = static_cast<int>(idx.size());
  std::size_t r = 0;
  int prev = -1;
  for (int j = 0; j < k; ++j) {
    if (idx[j] <= prev || idx[j] >= ambient) throw ShapeError("multi-index not strictly increasing in range");
    for (int x = prev + 1; x < idx[j]; ++x) r += binomial(ambient - 1 - x, k - 1 - j);
    prev = idx[j];
  }
  return r;
}

MultiIndex unrank(int ambient, int degree, std::size_t rank) {
  if (rank >= binomial(ambient, degree)) throw ShapeError("multi-index rank out of range");
  MultiIndex out;
  int x = 0;
  for (int j = 0; j < degree; ++j) {
    while (true) {
      const std::size_t block = binomial(ambient - 1 - x, degree - 1 - j);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    out.push_back(x++);
  }
  return out;
}

namespace {

std::uint32_t mask_of(const MultiIndex& idx) {
  std::uint32_t m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

std::vector<WedgeEntry> build_table(int ambient, int p, int q) {
  std::vector<WedgeEntry> out;
  const std::size_t np = binomial(ambient, p);
  const std::size_t nq = binomial(ambient, q);
  std::vector<std::uint32_t> pm(np), qm(nq);
  for (std::size_t i = 0; i < np; ++i) pm[i] = mask_of(unrank(ambient, p, i));
  for (std::size_t i = 0; i < nq; ++i) qm[i] = mask_of(unrank(ambient, q, i));
  std::map<std::uint32_t, std::uint32_t> rank_by_mask;
  const std::size_t nr = binomial(ambient, p + q);
  for (std::size_t i = 0; i < nr; ++i) {
    rank_by_mask[mask_of(unrank(ambient, p + q, i))] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      if ((pm[i] & qm[j]) != 0) continue;
      // Each left index bigger than a right index costs one transposition.
      int inversions = 0;
      for (int b = 0; b < ambient; ++b) {
        if ((qm[j] >> b & 1u) != 0) {
          inversions += std::popcount(pm[i] >> (b + 1));
        }
      }
      out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     rank_by_mask.at(pm[i] | qm[j]), inversions % 2 == 0 ? 1 : -1});
    }
  }
  return out;
}

}  // namespace

const std::vector<WedgeEntry>& wedge_table(int ambient, int p, int q) {
  if (ambient < 0 || ambient > kMaxAmbient || p < 0 || q < 0 || p + q > ambient) {
    throw ShapeError("wedge table shape out of range");
  }
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<WedgeEntry>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(ambient, p, q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_table(ambient, p, q)).first;
  return it->second;
}

}  // namespace grasscurve
