#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iceqp/canonical.hpp"
#include "iceqp/jacobian.hpp"
#include "iceqp/reduction.hpp"

namespace iceqp {

struct Premutation {
  IceQuiver quiver;
  Potential potential;
  int vertex = 0;
  std::map<ArrowId, ArrowId> star_map;  // original arrow at k -> reversed arrow
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> composites;  // (out, in) -> [out,in]
};

/// Rotation of w whose base vertex (tail of the rightmost written arrow) is
/// not k; the least such rotation. Every pass of the cycle through k then
/// appears as a contiguous written pair (out, in).
inline std::vector<ArrowId> premutation_representative(const IceQuiver& q, const CyclicWord& w, int k) {
  std::optional<std::vector<ArrowId>> best;
  for (std::size_t i = 0; i < w.degree(); ++i) {
    auto r = w.rotation(i);
    if (q.arrow(r.back()).tail == k) continue;
    if (!best || r < *best) best = r;
  }
  if (!best) throw PreconditionError("cycle " + to_string(w) + " is based only at vertex " + std::to_string(k));
  return *best;
}

inline Premutation premutate(const IceQuiver& q, const Potential& W, int k) {
  if (auto r = validate(q); !r.ok()) throw ValidationError(r.violations.front());
  if (!mutability_check(q, k)) throw PreconditionError("vertex " + std::to_string(k) + " is not mutable");
  if (auto r = potential_validate(q, W); !r.ok()) throw ValidationError(r.violations.front());
  if (!is_irredundant(q, W)) throw PreconditionError("potential has terms made of frozen arrows only");

  Premutation p;
  p.vertex = k;
  std::set<std::string> taken;
  for (auto& a : q.arrows())
    if (a.tail != k && a.head != k) taken.insert(a.id.str());
  for (auto& v : q.vertices()) p.quiver.add_vertex(v.id, v.frozen);
  std::vector<Arrow> ins, outs;
  for (auto& a : q.arrows()) {
    if (a.tail == k || a.head == k) {
      auto name = detail::fresh_name(star_name(a.id.str()), taken);
      taken.insert(name);
      p.star_map[a.id] = name;
      p.quiver.add_arrow(name, a.head, a.tail, false);
      (a.head == k ? ins : outs).push_back(a);
    } else {
      p.quiver.add_arrow(a);
    }
  }
  for (auto& a : ins)
    for (auto& b : outs) {
      auto name = detail::fresh_name(composite_name(b.id.str(), a.id.str()), taken);
      taken.insert(name);
      p.composites[{b.id, a.id}] = name;
      p.quiver.add_arrow(name, a.tail, b.head, false);
    }

  for (auto& [w, c] : W.terms()) {
    auto r = premutation_representative(q, w, k);
    std::vector<ArrowId> out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (q.arrow(r[i]).tail == k) {
        // r[i+1] exists and ends at k, since the base vertex is not k
        out.push_back(p.composites.at({r[i], r[i + 1]}));
        ++i;
      } else {
        out.push_back(r[i]);
      }
    }
    p.potential.add(CyclicWord(out), c);
  }
  for (auto& a : ins)
    for (auto& b : outs)
      p.potential.add(CyclicWord({p.composites.at({b.id, a.id}), p.star_map.at(a.id), p.star_map.at(b.id)}), 1);
  return p;
}

struct MutationStep {
  int vertex = 0;
  Premutation premutated;
  ReductionResult reduced;

  const IceQuiver& quiver() const { return reduced.quiver; }
  const Potential& potential() const { return reduced.potential; }
};

inline MutationStep mutate(const IceQuiver& q, const Potential& W, int k, int n) {
  MutationStep s;
  s.vertex = k;
  s.premutated = premutate(q, W, k);
  s.reduced = reduce(s.premutated.quiver, s.premutated.potential, n);
  return s;
}

inline MutationStep mutate(const IceQuiver& q, const Potential& W, int k) {
  auto p = premutate(q, W, k);
  return mutate(q, W, k, default_truncation(p.potential));
}

/// Applies mutations in order; each step is truncated at n.
inline std::vector<MutationStep> mutate_sequence(const IceQuiver& q, const Potential& W, const std::vector<int>& seq,
                                                 int n) {
  std::vector<MutationStep> steps;
  IceQuiver cq = q;
  Potential cw = W;
  for (int k : seq) {
    steps.push_back(mutate(cq, cw, k, n));
    cq = steps.back().quiver();
    cw = steps.back().potential();
  }
  return steps;
}

namespace detail {

// Searches for a bijection of arrows of `from` onto arrows of `to` that keeps
// endpoints and frozen flags and carries U onto W exactly. Arrows whose names
// already agree are tried first. Gives up after `budget` leaf checks.
inline std::optional<std::map<ArrowId, ArrowId>> matching_relabelling(const IceQuiver& from, const Potential& U,
                                                                      const IceQuiver& to, const Potential& W,
                                                                      long budget = 200000) {
  if (from.arrows().size() != to.arrows().size() || U.size() != W.size()) return std::nullopt;
  using Key = std::tuple<int, int, bool>;
  std::map<Key, std::vector<ArrowId>> target;
  for (auto& a : to.arrows()) target[{a.tail, a.head, a.frozen}].push_back(a.id);
  for (auto& a : from.arrows())
    if (!target.count({a.tail, a.head, a.frozen})) return std::nullopt;
  std::map<ArrowId, ArrowId> map;
  std::set<ArrowId> used;
  auto& arrows = from.arrows();
  std::optional<std::map<ArrowId, ArrowId>> found;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (found || budget <= 0) return;
    if (i == arrows.size()) {
      --budget;
      Potential V;
      for (auto& [w, c] : U.terms()) {
        std::vector<ArrowId> x;
        for (auto a : w.arrows()) x.push_back(map.at(a));
        V.add(CyclicWord(x), c);
      }
      if (V == W) found = map;
      return;
    }
    auto& a = arrows[i];
    auto candidates = target.at({a.tail, a.head, a.frozen});
    std::stable_partition(candidates.begin(), candidates.end(), [&](ArrowId b) { return b == a.id; });
    for (auto b : candidates) {
      if (used.count(b)) continue;
      used.insert(b);
      map[a.id] = b;
      go(i + 1);
      map.erase(a.id);
      used.erase(b);
    }
  };
  go(0);
  return found;
}

}  // namespace detail

struct InvolutionReport {
  int vertex = 0;
  int truncation = 0;
  bool quiver_match = false;
  bool potential_match = false;
  bool dims_match = false;
  std::map<ArrowId, ArrowId> relabelling;  // arrows of μ²(q) -> arrows of q, when potential_match
  IceQuiver twice_quiver;
  Potential twice_potential;
};

/// Mutates twice at k and compares with the input. The mutations themselves
/// run at truncation 2N; dimension matrices are compared for M <= N - 1.
inline InvolutionReport check_involution(const IceQuiver& q, const Potential& W, int k, int n) {
  if (!is_reduced(q, W)) throw PreconditionError("check_involution needs a reduced input");
  InvolutionReport r;
  r.vertex = k;
  r.truncation = n;
  auto once = mutate(q, W, k, 2 * n);
  auto twice = mutate(once.quiver(), once.potential(), k, 2 * n);
  r.twice_quiver = twice.quiver();
  r.twice_potential = twice.potential();
  r.quiver_match = canonical_form(r.twice_quiver) == canonical_form(q);
  if (r.quiver_match) {
    auto a = truncated_algebra(q, W, n), b = truncated_algebra(r.twice_quiver, r.twice_potential, n);
    r.dims_match = true;
    for (int m = 0; m < n; ++m) r.dims_match &= hom_dims(a, m) == hom_dims(b, m);
    if (auto map = detail::matching_relabelling(r.twice_quiver, r.twice_potential, q, W)) {
      r.potential_match = true;
      r.relabelling = *map;
    }
  }
  return r;
}

inline bool fz_agreement(const IceQuiver& q, const Potential& W, int k, int n) {
  return canonical_form(mutate(q, W, k, n).quiver()) == canonical_form(fz_mutate(q, k));
}

struct NondegeneracyReport {
  int depth = 0;
  bool ok_to_depth = true;
  std::optional<std::vector<int>> failing_sequence;
  int admissible = 0;  // mutations performed
  int explored = 0;    // states examined, including the input
};

/// Breadth-first over mutation sequences of length <= depth, skipping
/// non-mutable vertices and immediate repeats (μ_k μ_k is the identity up to
/// right equivalence). Stops at the first state with a 2-cycle through an
/// unfrozen arrow.
inline NondegeneracyReport nondegeneracy_search(const IceQuiver& q, const Potential& W, int depth, int n) {
  NondegeneracyReport r;
  r.depth = depth;
  struct State {
    std::vector<int> seq;
    IceQuiver q;
    Potential W;
  };
  std::deque<State> queue{{{}, q, W}};
  while (!queue.empty()) {
    auto s = std::move(queue.front());
    queue.pop_front();
    ++r.explored;
    if (!unfrozen_two_cycles(s.q).empty()) {
      r.ok_to_depth = false;
      r.failing_sequence = s.seq;
      return r;
    }
    if (static_cast<int>(s.seq.size()) == depth) continue;
    for (int v : s.q.vertex_ids()) {
      if (!s.seq.empty() && s.seq.back() == v) continue;
      if (!mutability_check(s.q, v)) continue;
      ++r.admissible;
      auto m = mutate(s.q, s.W, v, n);
      auto seq = s.seq;
      seq.push_back(v);
      queue.push_back({std::move(seq), m.quiver(), m.potential()});
    }
  }
  return r;
}

}  // namespace iceqp
