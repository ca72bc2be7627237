#pragma once

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "iceqp/potential.hpp"

namespace iceqp {

struct QuiverWithPotential {
  IceQuiver quiver;
  Potential potential;
};

/// All cyclic words of degree in [lo, hi].
inline std::vector<CyclicWord> cycles(const IceQuiver& q, int lo, int hi) {
  std::set<CyclicWord> found;
  std::vector<ArrowId> stack;  // applied order
  auto dfs = [&](auto&& self, int start, int at) -> void {
    int d = static_cast<int>(stack.size());
    if (d >= lo && d >= 1 && at == start) {
      std::vector<ArrowId> written(stack.rbegin(), stack.rend());
      found.insert(CyclicWord(written));
    }
    if (d == hi) return;
    for (auto& a : q.arrows()) {
      if (a.tail != at) continue;
      stack.push_back(a.id);
      self(self, start, a.head);
      stack.pop_back();
    }
  };
  for (auto& v : q.vertices()) dfs(dfs, v.id, v.id);
  return {found.begin(), found.end()};
}

struct SampleOptions {
  int max_vertices = 5;
  int max_arrows = 10;
  int min_degree = 3;
  int max_degree = 4;
  int max_terms = 6;
  bool allow_frozen = true;
};

/// Pseudo-random ice quiver with an irredundant potential whose terms have
/// degree in [min_degree, max_degree]. With min_degree >= 3 the result is
/// reduced.
inline QuiverWithPotential random_qp(std::mt19937_64& rng, const SampleOptions& opt = {}) {
  std::uniform_int_distribution<int> nv(2, opt.max_vertices);
  int n = nv(rng);
  QuiverWithPotential out;
  std::bernoulli_distribution frozen_vertex(opt.allow_frozen ? 0.3 : 0.0), frozen_arrow(0.5);
  for (int v = 1; v <= n; ++v) out.quiver.add_vertex(v, frozen_vertex(rng));
  std::uniform_int_distribution<int> na(n, opt.max_arrows), vx(1, n);
  int m = na(rng);
  for (int i = 0; i < m; ++i) {
    int t = vx(rng), h = vx(rng);
    if (t == h) continue;
    bool f = out.quiver.vertex_frozen(t) && out.quiver.vertex_frozen(h) && frozen_arrow(rng);
    out.quiver.add_arrow("x" + std::to_string(i + 1), t, h, f);
  }
  std::vector<CyclicWord> pool;
  for (auto& w : cycles(out.quiver, opt.min_degree, opt.max_degree)) {
    bool mixed = false;
    for (auto a : w.arrows()) mixed |= !out.quiver.arrow(a).frozen;
    if (mixed) pool.push_back(w);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<int> nt(1, std::max(1, opt.max_terms)), cf(0, 5);
  static const int nums[] = {1, -1, 2, -2, 1, 3};
  static const int dens[] = {1, 1, 1, 3, 2, 1};
  int terms = std::min<int>(nt(rng), static_cast<int>(pool.size()));
  for (int i = 0; i < terms; ++i) {
    int k = cf(rng);
    out.potential.add(pool[i], Rational(nums[k], dens[k]));
  }
  return out;
}

/// A uniformly chosen mutable vertex, if any.
inline std::optional<int> random_mutable_vertex(std::mt19937_64& rng, const IceQuiver& q) {
  std::vector<int> ok;
  for (int v : q.vertex_ids())
    if (mutability_check(q, v)) ok.push_back(v);
  if (ok.empty()) return std::nullopt;
  return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
}

}  // namespace iceqp
