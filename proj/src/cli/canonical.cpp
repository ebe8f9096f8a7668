#include <algorithm>
#include <numeric>

#include "lens/verify.hpp"

namespace lens {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

}  // namespace

std::vector<std::int64_t> canonical_weights(std::int64_t p, std::span<const std::int64_t> q) {
  if (p == 1) return std::vector<std::int64_t>(q.size(), 0);
  std::vector<std::int64_t> best;
  for (std::int64_t c = 1; c < p; ++c) {
    if (std::gcd(c, p) != 1) continue;
    std::vector<std::int64_t> image;
    image.reserve(q.size());
    for (auto w : q) {
      const std::int64_t r = floor_mod(c * w, p);
      image.push_back(std::min(r, p - r));
    }
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = std::move(image);
  }
  return best;
}

std::vector<std::vector<std::int64_t>> canonical_weight_tuples(std::int64_t p, int m) {
  if (p == 1) return {std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
  std::vector<std::int64_t> halves;
  for (std::int64_t w = 1; w <= p / 2; ++w) {
    if (std::gcd(w, p) == 1) halves.push_back(w);
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(m));
  // Nondecreasing tuples over `halves`; keep orbit representatives.
  auto walk = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
    if (pos == tuple.size()) {
      if (canonical_weights(p, tuple) == tuple) out.push_back(tuple);
      return;
    }
    for (std::size_t j = from; j < halves.size(); ++j) {
      tuple[pos] = halves[j];
      self(self, pos + 1, j);
    }
  };
  walk(walk, 0, 0);
  return out;
}

std::vector<LensSpace> canonical_grid(std::int64_t p_min, std::int64_t p_max,
                                      const std::vector<int>& ms) {
  std::vector<LensSpace> out;
  for (std::int64_t p = p_min; p <= p_max; ++p) {
    for (int m : ms) {
      for (const auto& q : canonical_weight_tuples(p, m)) out.push_back(make_lens_space(p, q));
    }
  }
  return out;
}

}  // namespace lens
