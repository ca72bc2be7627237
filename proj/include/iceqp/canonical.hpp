#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "iceqp/quiver.hpp"

namespace iceqp {

/// Canonical relabelling of an ice quiver. Vertices become 0..n-1, arrows
/// become "c0", "c1", ... sorted by (tail, head, frozen). Two ice quivers are
/// isomorphic (respecting frozen flags) iff their `code`s are equal.
struct CanonicalForm {
  IceQuiver quiver;
  std::map<int, int> vertex_map;  // original id -> canonical id
  std::vector<int> code;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.code == b.code; }
};

namespace detail {

// Individualization–refinement over vertex colourings. Quivers here are
// small, so the search tree is tiny in practice.
class Canonizer {
 public:
  explicit Canonizer(const IceQuiver& q) {
    ids_ = q.vertex_ids();
    n_ = static_cast<int>(ids_.size());
    std::map<int, int> pos;
    for (int i = 0; i < n_; ++i) pos[ids_[i]] = i;
    frozen_.resize(n_);
    for (int i = 0; i < n_; ++i) frozen_[i] = q.vertex_frozen(ids_[i]);
    for (auto& a : q.arrows()) edges_.push_back({pos.at(a.tail), pos.at(a.head), a.frozen ? 1 : 0});
  }

  std::pair<std::vector<int>, std::vector<int>> run() {
    std::vector<int> colour(n_);
    for (int i = 0; i < n_; ++i) colour[i] = frozen_[i] ? 1 : 0;
    search(refine(colour));
    return {best_code_, best_perm_};
  }

  const std::vector<int>& ids() const { return ids_; }

 private:
  static std::vector<int> rank(const std::vector<std::vector<int>>& sigs) {
    std::vector<std::vector<int>> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return out;
  }

  static int count_classes(const std::vector<int>& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  std::vector<int> refine(std::vector<int> colour) const {
    for (;;) {
      std::vector<std::vector<int>> sigs(n_);
      for (int i = 0; i < n_; ++i) sigs[i].push_back(colour[i]);
      std::vector<std::vector<int>> nb(n_);
      for (auto& [t, h, f] : edges_) {
        // (direction, other colour, frozen) triples, counted via sorting
        nb[t].push_back((0 * 2 + f) * (n_ + 1) + colour[h]);
        nb[h].push_back((1 * 2 + f) * (n_ + 1) + colour[t]);
      }
      for (int i = 0; i < n_; ++i) {
        std::sort(nb[i].begin(), nb[i].end());
        sigs[i].insert(sigs[i].end(), nb[i].begin(), nb[i].end());
      }
      auto next = rank(sigs);
      if (count_classes(next) == count_classes(colour)) return next;
      colour = std::move(next);
    }
  }

  std::vector<int> encode(const std::vector<int>& colour) const {
    std::vector<int> code{n_};
    std::vector<int> fl(n_);
    for (int i = 0; i < n_; ++i) fl[colour[i]] = frozen_[i];
    code.insert(code.end(), fl.begin(), fl.end());
    std::vector<std::tuple<int, int, int>> es;
    for (auto& [t, h, f] : edges_) es.emplace_back(colour[t], colour[h], f);
    std::sort(es.begin(), es.end());
    for (auto& [t, h, f] : es) code.insert(code.end(), {t, h, f});
    return code;
  }

  void search(const std::vector<int>& colour) {
    int classes = count_classes(colour);
    if (classes == n_) {
      auto code = encode(colour);
      if (best_code_.empty() || code < best_code_) {
        best_code_ = std::move(code);
        best_perm_ = colour;
      }
      return;
    }
    // first non-singleton cell
    std::vector<int> size(classes, 0);
    for (int c : colour) ++size[c];
    int cell = 0;
    while (size[cell] == 1) ++cell;
    for (int v = 0; v < n_; ++v) {
      if (colour[v] != cell) continue;
      std::vector<std::vector<int>> sigs(n_);
      for (int i = 0; i < n_; ++i) sigs[i] = {colour[i], i == v ? 0 : 1};
      search(refine(rank(sigs)));
    }
  }

  int n_ = 0;
  std::vector<int> ids_;
  std::vector<bool> frozen_;
  std::vector<std::tuple<int, int, int>> edges_;
  std::vector<int> best_code_;
  std::vector<int> best_perm_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const IceQuiver& q) {
  detail::Canonizer c(q);
  auto [code, perm] = c.run();
  CanonicalForm out;
  out.code = code;
  int n = static_cast<int>(perm.size());
  std::vector<bool> frozen(n);
  for (int i = 0; i < n; ++i) {
    out.vertex_map[c.ids()[i]] = perm[i];
    frozen[perm[i]] = q.vertex_frozen(c.ids()[i]);
  }
  for (int i = 0; i < n; ++i) out.quiver.add_vertex(i, frozen[i]);
  std::vector<std::tuple<int, int, int>> es;
  for (auto& a : q.arrows()) es.emplace_back(out.vertex_map.at(a.tail), out.vertex_map.at(a.head), a.frozen);
  std::sort(es.begin(), es.end());
  int k = 0;
  for (auto& [t, h, f] : es) out.quiver.add_arrow("c" + std::to_string(k++), t, h, f != 0);
  if (n == 0) out.code = {0};
  return out;
}

inline bool isomorphic(const IceQuiver& a, const IceQuiver& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace iceqp
