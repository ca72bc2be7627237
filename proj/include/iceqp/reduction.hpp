#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iceqp/substitution.hpp"

namespace iceqp {

struct ArrowPair {
  ArrowId alpha;  // always unfrozen
  ArrowId beta;
  friend bool operator==(const ArrowPair&, const ArrowPair&) = default;
};

/// Normal form of an irredundant potential up to right equivalence:
///   potential = Σ αβ over `trivial` and `half_frozen` pairs + rest,
/// where trivial-pair arrows occur nowhere else, frozen β's occur nowhere
/// else, and rest has no 2-cycle terms. Frozen-only terms produced along the
/// way are collected separately, so that
///   substitute(sigma, W) == potential + frozen_part.
struct NeatNormalForm {
  Potential potential;
  Potential frozen_part;
  Substitution sigma;
  std::vector<ArrowPair> trivial;
  std::vector<ArrowPair> half_frozen;
  std::vector<Substitution> log;
};

struct FrozenDeletion {
  ArrowId beta;
  ArrowId alpha;
  NCPoly replacement;  // image of β under the isomorphism: -∂_α W_red
};

struct ReductionResult {
  IceQuiver quiver;
  Potential potential;
  int truncation = 0;
  std::vector<ArrowPair> trivial_part;
  std::vector<FrozenDeletion> frozen_deleted;
  std::vector<ArrowId> newly_frozen;
  std::vector<Substitution> equivalence_log;
  Potential frozen_residue;  // frozen-only terms dropped (no effect on the algebra)
};

namespace detail {

// Linear change of arrows recorded as a matrix: arrow a ↦ Σ_b T[a][b]·b.
class LinearChange {
 public:
  explicit LinearChange(const IceQuiver& q) : q_(q) {}

  // a ↦ a + λ·b
  void add(ArrowId a, ArrowId b, const Rational& lambda) {
    touch(a);
    touch(b);
    for (auto& [x, row] : t_) {
      auto it = row.find(a);
      if (it == row.end()) continue;
      Rational v = it->second * lambda;
      row[b] += v;
      if (row[b] == 0) row.erase(b);
    }
  }

  // a ↦ s·a
  void scale(ArrowId a, const Rational& s) {
    touch(a);
    for (auto& [x, row] : t_)
      if (auto it = row.find(a); it != row.end()) it->second *= s;
  }

  Substitution substitution(const std::string& label) const {
    Substitution s(q_, label);
    for (auto& [a, row] : t_) {
      NCPoly img;
      for (auto& [b, c] : row) img.add(Path::of(q_.arrow(b)), c);
      s.set(a, img);
    }
    return s;
  }

 private:
  void touch(ArrowId a) {
    if (!t_.count(a)) t_[a][a] = 1;
  }
  const IceQuiver& q_;
  std::map<ArrowId, std::map<ArrowId, Rational>> t_;
};

inline bool frozen_only(const IceQuiver& q, const CyclicWord& w) {
  for (auto a : w.arrows())
    if (!q.arrow(a).frozen) return false;
  return true;
}

inline void move_frozen_terms(const IceQuiver& q, Potential& W, Potential& frozen) {
  auto [mixed, fz] = split_irredundant(q, W);
  W = std::move(mixed);
  frozen += fz;
}

// Pairs the degree-2 part of W by a linear right equivalence. Rows are the
// arrows i→j and columns the arrows j→i (i < j), unfrozen before frozen.
inline void pair_quadratic_part(const IceQuiver& q, const Potential& W, LinearChange& change,
                                std::vector<ArrowPair>& trivial, std::vector<ArrowPair>& half) {
  struct Block {
    std::vector<ArrowId> rows, cols;
    std::map<std::pair<ArrowId, ArrowId>, Rational> c;
  };
  std::map<std::pair<int, int>, Block> blocks;
  for (auto& [w, coeff] : W.terms()) {
    if (w.degree() != 2) continue;
    auto& x = q.arrow(w.arrows()[0]);
    auto& y = q.arrow(w.arrows()[1]);
    auto& row = x.tail < x.head ? x : y;
    auto& col = x.tail < x.head ? y : x;
    blocks[{row.tail, row.head}].c[{row.id, col.id}] += coeff;
  }
  auto order = [&](std::vector<ArrowId>& v) {
    std::sort(v.begin(), v.end(), [&](ArrowId a, ArrowId b) {
      bool fa = q.arrow(a).frozen, fb = q.arrow(b).frozen;
      return fa != fb ? !fa : a < b;
    });
  };
  for (auto& [ends, blk] : blocks) {
    for (auto& a : q.arrows()) {
      if (a.tail == ends.first && a.head == ends.second) blk.rows.push_back(a.id);
      if (a.tail == ends.second && a.head == ends.first) blk.cols.push_back(a.id);
    }
    order(blk.rows);
    order(blk.cols);
    auto& C = blk.c;
    auto get = [&](ArrowId r, ArrowId c) {
      auto it = C.find({r, c});
      return it == C.end() ? Rational(0) : it->second;
    };
    auto set = [&](ArrowId r, ArrowId c, const Rational& v) {
      if (v == 0) C.erase({r, c});
      else C[{r, c}] = v;
    };
    // row b += λ·row a, realised by a ↦ a + λ·b
    auto row_op = [&](ArrowId a, ArrowId b, const Rational& lambda) {
      for (auto c : blk.cols) set(b, c, get(b, c) + lambda * get(a, c));
      change.add(a, b, lambda);
    };
    auto col_op = [&](ArrowId a, ArrowId b, const Rational& lambda) {
      for (auto r : blk.rows) set(r, b, get(r, b) + lambda * get(r, a));
      change.add(a, b, lambda);
    };
    std::set<ArrowId> used_cols;
    auto pivot_on = [&](ArrowId r, ArrowId c) {
      Rational p = get(r, c);
      for (auto r2 : blk.rows)
        if (r2 != r && get(r2, c) != 0) row_op(r, r2, -get(r2, c) / p);
      for (auto c2 : blk.cols)
        if (c2 != c && get(r, c2) != 0) col_op(c, c2, -get(r, c2) / p);
      used_cols.insert(c);
      bool fr = q.arrow(r).frozen, fc = q.arrow(c).frozen;
      ArrowPair pr = fr ? ArrowPair{c, r} : ArrowPair{r, c};
      change.scale(pr.alpha, Rational(1) / p);
      (fr || fc ? half : trivial).push_back(pr);
    };
    for (auto r : blk.rows) {
      if (q.arrow(r).frozen) continue;
      for (auto c : blk.cols)
        if (!used_cols.count(c) && get(r, c) != 0) {
          pivot_on(r, c);
          break;
        }
    }
    for (auto r : blk.rows) {
      if (!q.arrow(r).frozen) continue;
      for (auto c : blk.cols)
        if (!used_cols.count(c) && !q.arrow(c).frozen && get(r, c) != 0) {
          pivot_on(r, c);
          break;
        }
    }
  }
}

}  // namespace detail

/// Brings an irredundant potential into normal form by explicit right
/// equivalences: a linear change pairing the quadratic part, then for each
/// degree d = 3..n one substitution α ↦ α − q / β ↦ β − p removing every
/// term of degree d that still meets a pair arrow. Each step only creates
/// terms of higher degree, so the loop ends at the truncation bound.
inline NeatNormalForm neat_normal_form(const IceQuiver& q, const Potential& W, int n) {
  if (!is_irredundant(q, W)) throw PreconditionError("neat normal form needs an irredundant potential");
  if (auto r = potential_validate(q, W); !r.ok()) throw ValidationError(r.violations.front());

  NeatNormalForm out;
  out.sigma = Substitution(q, "identity");
  Potential cur = W.truncated(n);

  detail::LinearChange change(q);
  detail::pair_quadratic_part(q, cur, change, out.trivial, out.half_frozen);
  Substitution lin = change.substitution("linear");
  if (!lin.identity()) {
    cur = substitute(lin, cur, n);
    out.sigma = lin;
    out.log.push_back(lin);
  }
  detail::move_frozen_terms(q, cur, out.frozen_part);

  std::set<ArrowId> trivial_arrows, half_betas;
  std::map<ArrowId, const ArrowPair*> pair_of;
  for (auto& p : out.trivial) {
    trivial_arrows.insert({p.alpha, p.beta});
    pair_of[p.alpha] = pair_of[p.beta] = &p;
  }
  for (auto& p : out.half_frozen) {
    half_betas.insert(p.beta);
    pair_of[p.beta] = &p;
  }
  std::set<CyclicWord> pair_terms;
  for (auto& p : out.trivial) pair_terms.insert(CyclicWord({p.alpha, p.beta}));
  for (auto& p : out.half_frozen) pair_terms.insert(CyclicWord({p.alpha, p.beta}));

  for (int d = 3; d <= n; ++d) {
    std::map<ArrowId, NCPoly> shift;  // arrow ↦ arrow − shift[arrow]
    for (auto& [w, c] : cur.terms()) {
      if (static_cast<int>(w.degree()) != d) continue;
      auto& xs = w.arrows();
      std::optional<std::size_t> at;
      for (std::size_t i = 0; i < xs.size() && !at; ++i)
        if (half_betas.count(xs[i])) at = i;
      for (std::size_t i = 0; i < xs.size() && !at; ++i)
        if (trivial_arrows.count(xs[i])) at = i;
      if (!at) continue;
      ArrowId x = xs[*at];
      const ArrowPair& p = *pair_of.at(x);
      if (x == p.beta) {
        // w = q·β: α ↦ α − c·q
        auto rot = w.rotation((*at + 1) % xs.size());
        rot.pop_back();
        shift[p.alpha].add(make_path(q, rot), c);
      } else {
        // w = α·p: β ↦ β − c·p
        auto rot = w.rotation(*at);
        rot.erase(rot.begin());
        shift[p.beta].add(make_path(q, rot), c);
      }
    }
    if (shift.empty()) continue;
    Substitution step(q, "degree " + std::to_string(d));
    for (auto& [a, f] : shift) step.set(a, arrow_poly(q, a) - f);
    cur = substitute(step, cur, n);
    detail::move_frozen_terms(q, cur, out.frozen_part);
    out.sigma = compose(step, out.sigma, n);
    out.log.push_back(step);
  }
  out.sigma.label = "normal form";
  out.potential = cur;
  return out;
}

inline std::vector<ArrowPair> all_pairs(const NeatNormalForm& nf) {
  auto v = nf.trivial;
  v.insert(v.end(), nf.half_frozen.begin(), nf.half_frozen.end());
  return v;
}

/// Reduction: splits off the trivial part, then deletes each frozen β paired
/// with an unfrozen α and freezes α.
inline ReductionResult reduce(const IceQuiver& q, const Potential& W, int n) {
  if (auto r = validate(q); !r.ok()) throw ValidationError(r.violations.front());
  if (auto r = potential_validate(q, W); !r.ok()) throw ValidationError(r.violations.front());
  auto [mixed, frozen] = split_irredundant(q, W);
  NeatNormalForm nf = neat_normal_form(q, mixed, n);

  ReductionResult out;
  out.truncation = n;
  out.trivial_part = nf.trivial;
  out.equivalence_log = nf.log;
  out.frozen_residue = frozen.truncated(n);
  out.frozen_residue += nf.frozen_part;

  Potential rest = nf.potential;
  std::set<ArrowId> drop, freeze;
  for (auto& p : all_pairs(nf)) rest.add(CyclicWord({p.alpha, p.beta}), -1);
  for (auto& p : nf.trivial) drop.insert({p.alpha, p.beta});
  for (auto& p : nf.half_frozen) {
    drop.insert(p.beta);
    freeze.insert(p.alpha);
    out.frozen_deleted.push_back({p.beta, p.alpha, -cyclic_derivative(q, rest, p.alpha, n)});
    out.newly_frozen.push_back(p.alpha);
  }
  for (auto a : rest.support())
    if (drop.count(a)) throw std::logic_error("normal form left a paired arrow in the residual potential");

  out.quiver = q.without(drop).freezing(freeze);
  auto [red, fz] = split_irredundant(out.quiver, rest);
  out.potential = red;
  out.frozen_residue += fz;
  return out;
}

inline ReductionResult reduce(const IceQuiver& q, const Potential& W) { return reduce(q, W, default_truncation(W)); }

/// Composite of all logged right equivalences.
inline Substitution total_equivalence(const IceQuiver& q, const std::vector<Substitution>& log, int n) {
  Substitution total(q, "identity");
  for (auto& s : log) total = compose(s, total, n);
  return total;
}

}  // namespace iceqp
