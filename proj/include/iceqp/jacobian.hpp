#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iceqp/linalg.hpp"
#include "iceqp/potential.hpp"

namespace iceqp {

/// The frozen Jacobian algebra modulo paths of length > N. Columns are all
/// paths of length <= N ordered by degree; the relation span is the closure
/// of {∂_a W : a unfrozen} under multiplication by arrows on both sides.
/// Because pivots sit at the lowest-degree column of each row, dimensions of
/// Λ/𝔪^{M+1} are exact for every M <= N.
class TruncatedAlgebra {
 public:
  TruncatedAlgebra(const IceQuiver& q, const Potential& W, int n) : quiver_(q), potential_(W), n_(n) {
    if (auto r = validate(q); !r.ok()) throw ValidationError(r.violations.front());
    if (auto r = potential_validate(q, W); !r.ok()) throw ValidationError(r.violations.front());
    enumerate_paths();
    build_relations();
  }

  const IceQuiver& quiver() const { return quiver_; }
  const Potential& potential() const { return potential_; }
  int truncation() const { return n_; }
  const std::vector<Path>& columns() const { return columns_; }
  const Echelon& relations() const { return echelon_; }
  int max_relation_degree() const { return max_rel_degree_; }

  int column(const Path& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }

  /// dim e_j (Λ/𝔪^{M+1}) e_i for paths i -> j.
  int dim(int i, int j, int m) const {
    int d = 0;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      auto& p = columns_[c];
      if (p.source == i && p.target == j && static_cast<int>(p.degree()) <= m && !echelon_.is_pivot(c)) ++d;
    }
    return d;
  }
  int dim(int i, int j) const { return dim(i, j, n_); }

  int total_dim(int m) const {
    int d = 0;
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (static_cast<int>(columns_[c].degree()) <= m && !echelon_.is_pivot(c)) ++d;
    return d;
  }
  int total_dim() const { return total_dim(n_); }

  /// Residue-class representatives: the paths at non-pivot columns.
  std::vector<Path> basis(int i, int j) const {
    std::vector<Path> out;
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (columns_[c].source == i && columns_[c].target == j && !echelon_.is_pivot(c)) out.push_back(columns_[c]);
    return out;
  }

  SparseRow to_row(const NCPoly& f) const {
    std::map<int, Rational> m;
    for (auto& [p, c] : f.terms()) {
      if (static_cast<int>(p.degree()) > n_) continue;
      int k = column(p);
      if (k < 0) throw ValidationError("path '" + to_string(p) + "' is not a path of the quiver");
      m[k] += c;
    }
    return make_row(std::move(m));
  }

  NCPoly to_poly(const SparseRow& r) const {
    NCPoly f(n_);
    for (auto& [c, v] : r) f.add(columns_[c], v);
    return f;
  }

  /// Normal form modulo relations and paths of length > N.
  NCPoly normal_form(const NCPoly& f) const { return to_poly(echelon_.reduce(to_row(f))); }
  bool in_relations(const NCPoly& f) const { return echelon_.reduce(to_row(f)).empty(); }

  /// Index of the product arrow·path (side = left) or path·arrow, or -1.
  int multiply_column(int col, std::size_t arrow, bool left) const {
    return (left ? left_ : right_)[col][arrow];
  }

 private:
  void enumerate_paths() {
    std::vector<Path> layer;
    for (auto& v : quiver_.vertices()) layer.push_back(Path::idempotent(v.id));
    std::vector<Path> all = layer;
    for (int d = 1; d <= n_; ++d) {
      std::vector<Path> next;
      for (auto& p : layer)
        for (auto& a : quiver_.arrows())
          if (a.tail == p.target) next.push_back(concat(Path::of(a), p));
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::sort(all.begin(), all.end());
    columns_ = std::move(all);
    for (std::size_t i = 0; i < columns_.size(); ++i) index_[columns_[i]] = static_cast<int>(i);
    auto& arrows = quiver_.arrows();
    left_.assign(columns_.size(), std::vector<int>(arrows.size(), -1));
    right_.assign(columns_.size(), std::vector<int>(arrows.size(), -1));
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      auto& p = columns_[c];
      if (static_cast<int>(p.degree()) >= n_) continue;
      for (std::size_t k = 0; k < arrows.size(); ++k) {
        Path a = Path::of(arrows[k]);
        if (a.source == p.target) left_[c][k] = index_.at(concat(a, p));
        if (a.target == p.source) right_[c][k] = index_.at(concat(p, a));
      }
    }
  }

  SparseRow shifted(const SparseRow& r, std::size_t arrow, bool left) const {
    std::map<int, Rational> m;
    for (auto& [c, v] : r) {
      int k = (left ? left_ : right_)[c][arrow];
      if (k >= 0) m[k] += v;
    }
    return make_row(std::move(m));
  }

  void build_relations() {
    echelon_ = Echelon(static_cast<int>(columns_.size()));
    std::deque<int> queue;
    for (auto& a : quiver_.arrows()) {
      if (a.frozen) continue;
      NCPoly r = cyclic_derivative(quiver_, potential_, a.id);
      max_rel_degree_ = std::max<int>(max_rel_degree_, r.max_degree());
      int k = echelon_.insert(to_row(r));
      if (k >= 0) queue.push_back(k);
    }
    while (!queue.empty()) {
      int k = queue.front();
      queue.pop_front();
      SparseRow row = echelon_.rows()[k];
      for (std::size_t a = 0; a < quiver_.arrows().size(); ++a)
        for (bool left : {true, false}) {
          int j = echelon_.insert(shifted(row, a, left));
          if (j >= 0) queue.push_back(j);
        }
    }
  }

  IceQuiver quiver_;
  Potential potential_;
  int n_;
  std::vector<Path> columns_;
  std::map<Path, int> index_;
  std::vector<std::vector<int>> left_, right_;
  Echelon echelon_;
  int max_rel_degree_ = 0;
};

inline TruncatedAlgebra truncated_algebra(const IceQuiver& q, const Potential& W, int n) { return {q, W, n}; }

/// Dimension matrix: entry [i][j] = dim e_j (Λ/𝔪^{M+1}) e_i, rows and
/// columns indexed by sorted vertex ids.
struct HomDims {
  std::vector<int> vertices;
  std::vector<std::vector<int>> d;
  int truncation = 0;

  int at(int i, int j) const {
    auto pi = std::find(vertices.begin(), vertices.end(), i) - vertices.begin();
    auto pj = std::find(vertices.begin(), vertices.end(), j) - vertices.begin();
    return d.at(pi).at(pj);
  }
  int total() const {
    int t = 0;
    for (auto& row : d)
      for (int x : row) t += x;
    return t;
  }
  friend bool operator==(const HomDims& a, const HomDims& b) { return a.vertices == b.vertices && a.d == b.d; }
};

inline HomDims hom_dims(const TruncatedAlgebra& A, int m) {
  HomDims h;
  h.vertices = A.quiver().vertex_ids();
  h.truncation = m;
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < h.vertices.size(); ++i) pos[h.vertices[i]] = i;
  h.d.assign(h.vertices.size(), std::vector<int>(h.vertices.size(), 0));
  for (std::size_t c = 0; c < A.columns().size(); ++c) {
    auto& p = A.columns()[c];
    if (static_cast<int>(p.degree()) <= m && !A.relations().is_pivot(c)) ++h.d[pos[p.source]][pos[p.target]];
  }
  return h;
}

inline HomDims hom_dims(const TruncatedAlgebra& A) { return hom_dims(A, A.truncation()); }

/// Arrows spanning 𝔪/𝔪²: the arrows not eliminated by a relation with a
/// linear term. Frozen flags are copied from the input.
inline IceQuiver gabriel_quiver(const TruncatedAlgebra& A) {
  if (A.truncation() < 2 + A.max_relation_degree())
    throw PreconditionError("truncation " + std::to_string(A.truncation()) + " too small for the Gabriel quiver; need " +
                            std::to_string(2 + A.max_relation_degree()));
  IceQuiver g;
  for (auto& v : A.quiver().vertices()) g.add_vertex(v.id, v.frozen);
  for (auto& a : A.quiver().arrows()) {
    int c = A.column(Path::of(a));
    if (!A.relations().is_pivot(c)) g.add_arrow(a);
  }
  return g;
}

/// Rotation of a cyclic word based at its minimal vertex (ties broken
/// lexicographically); this is how witness cycles are displayed.
inline std::vector<ArrowId> based_rotation(const IceQuiver& q, const CyclicWord& w) {
  std::optional<std::pair<int, std::vector<ArrowId>>> best;
  for (std::size_t i = 0; i < w.degree(); ++i) {
    auto r = w.rotation(i);
    std::pair<int, std::vector<ArrowId>> key{q.arrow(r.back()).tail, r};
    if (!best || key < *best) best = key;
  }
  return best ? best->second : std::vector<ArrowId>{};
}

struct TraceSpace {
  int truncation = 0;
  std::vector<int> dims;  // dims[d-1] for degree d = 1..N
  std::optional<CyclicWord> witness;
  int witness_degree = 0;
};

/// Tr(Λ)/(S + frozen part) in degrees 1..N: cyclic words modulo the cyclic
/// images of the relation span and modulo words made only of frozen arrows.
inline TraceSpace trace_space(const TruncatedAlgebra& A) {
  const IceQuiver& q = A.quiver();
  std::vector<CyclicWord> classes;
  for (auto& p : A.columns())
    if (p.closed() && !p.arrows.empty()) classes.push_back(CyclicWord(p.arrows));
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::map<CyclicWord, int> cls;
  for (std::size_t i = 0; i < classes.size(); ++i) cls[classes[i]] = static_cast<int>(i);

  Echelon e(static_cast<int>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    bool frozen = true;
    for (auto a : classes[i].arrows()) frozen &= q.arrow(a).frozen;
    if (frozen) e.insert({{static_cast<int>(i), Rational(1)}});
  }
  for (auto& row : A.relations().rows()) {
    auto& p0 = A.columns()[row.front().first];
    if (!p0.closed()) continue;
    std::map<int, Rational> m;
    for (auto& [c, v] : row) {
      auto& p = A.columns()[c];
      if (p.arrows.empty()) continue;
      m[cls.at(CyclicWord(p.arrows))] += v;
    }
    e.insert(make_row(std::move(m)));
  }
  TraceSpace t;
  t.truncation = A.truncation();
  t.dims.assign(A.truncation(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (e.is_pivot(static_cast<int>(i))) continue;
    int d = static_cast<int>(classes[i].degree());
    ++t.dims[d - 1];
    if (!t.witness) {
      t.witness = classes[i];
      t.witness_degree = d;
    }
  }
  return t;
}

inline std::vector<int> trace_space_dims(const IceQuiver& q, const Potential& W, int n) {
  return trace_space(truncated_algebra(q, W, n)).dims;
}

struct Rigidity {
  bool rigid = false;  // true means "rigid up to `truncation`"
  int truncation = 0;
  std::vector<ArrowId> witness;  // surviving cycle, based at its minimal vertex
  int witness_degree = 0;
};

inline std::string witness_text(const std::vector<ArrowId>& w) {
  std::string s;
  for (auto a : w) s += a.str();
  return s;
}

inline Rigidity rigidity(const TruncatedAlgebra& A) {
  auto t = trace_space(A);
  Rigidity r;
  r.truncation = A.truncation();
  if (!t.witness) {
    r.rigid = true;
    return r;
  }
  r.witness = based_rotation(A.quiver(), *t.witness);
  r.witness_degree = t.witness_degree;
  return r;
}

inline Rigidity rigidity(const IceQuiver& q, const Potential& W, int n) { return rigidity(truncated_algebra(q, W, n)); }

}  // namespace iceqp
