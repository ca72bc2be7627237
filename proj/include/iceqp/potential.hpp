#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iceqp/path.hpp"

namespace iceqp {

/// A cycle up to rotation, stored as its lexicographically least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(std::vector<ArrowId> written) : arrows_(least_rotation(std::move(written))) {}

  const std::vector<ArrowId>& arrows() const { return arrows_; }
  std::size_t degree() const { return arrows_.size(); }

  bool contains(ArrowId a) const { return std::find(arrows_.begin(), arrows_.end(), a) != arrows_.end(); }

  /// The rotation whose leftmost written arrow is the i-th arrow of the
  /// canonical representative.
  std::vector<ArrowId> rotation(std::size_t i) const {
    std::vector<ArrowId> r(arrows_.begin() + i, arrows_.end());
    r.insert(r.end(), arrows_.begin(), arrows_.begin() + i);
    return r;
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
    if (a.arrows_.size() != b.arrows_.size()) return a.arrows_.size() < b.arrows_.size();
    return a.arrows_ < b.arrows_;
  }

  static std::vector<ArrowId> least_rotation(std::vector<ArrowId> w) {
    std::vector<ArrowId> best = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      if (w < best) best = w;
    }
    return best;
  }

 private:
  std::vector<ArrowId> arrows_;
};

inline std::string to_string(const CyclicWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.degree(); ++i) s += (i ? " " : "") + w.arrows()[i].str();
  return s;
}

/// Linear combination of cyclic words; zero coefficients are never stored.
class Potential {
 public:
  using Terms = std::map<CyclicWord, Rational>;

  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const CyclicWord& w, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(std::vector<ArrowId> written, const Rational& c) { add(CyclicWord(std::move(written)), c); }

  Rational coeff(const CyclicWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Potential& operator+=(const Potential& o) {
    for (auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  Potential& operator-=(const Potential& o) {
    for (auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend Potential operator+(Potential a, const Potential& b) { return a += b; }
  friend Potential operator-(Potential a, const Potential& b) { return a -= b; }

  Potential truncated(int n) const {
    Potential r;
    for (auto& [w, c] : terms_)
      if (static_cast<int>(w.degree()) <= n) r.add(w, c);
    return r;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (auto& [w, c] : terms_) d = std::max(d, w.degree());
    return d;
  }

  std::set<ArrowId> support() const {
    std::set<ArrowId> s;
    for (auto& [w, c] : terms_) s.insert(w.arrows().begin(), w.arrows().end());
    return s;
  }

  friend bool operator==(const Potential& a, const Potential& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline std::string to_string(const Potential& W) {
  if (W.zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : W.terms()) {
    if (!first) s += " + ";
    first = false;
    if (c != 1) s += to_string(c) + "*";
    s += to_string(w);
  }
  return s;
}

/// The linear path given by a cyclic word's canonical rotation.
inline Path as_path(const IceQuiver& q, const CyclicWord& w) { return make_path(q, w.arrows()); }

/// Image in the space of cyclic words. Non-closed paths and idempotents are
/// commutators or vertex terms there, and are dropped.
inline Potential cyclify(const NCPoly& f) {
  Potential W;
  for (auto& [p, c] : f.terms())
    if (p.closed() && !p.arrows.empty()) W.add(p.arrows, c);
  return W;
}

/// ∂_a W: for each occurrence of a, the cycle cut open at that occurrence.
inline NCPoly cyclic_derivative(const IceQuiver& q, const Potential& W, ArrowId a, int bound = kUnbounded) {
  const Arrow& arr = q.arrow(a);
  NCPoly r(bound);
  for (auto& [w, c] : W.terms()) {
    auto& xs = w.arrows();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] != a) continue;
      Path p{{}, arr.head, arr.tail};
      p.arrows.insert(p.arrows.end(), xs.begin() + i + 1, xs.end());
      p.arrows.insert(p.arrows.end(), xs.begin(), xs.begin() + i);
      r.add(p, c);
    }
  }
  return r;
}

/// Split off terms consisting only of frozen arrows: returns {irredundant, frozen-only}.
inline std::pair<Potential, Potential> split_irredundant(const IceQuiver& q, const Potential& W) {
  Potential mixed, frozen;
  for (auto& [w, c] : W.terms()) {
    bool all_frozen = std::all_of(w.arrows().begin(), w.arrows().end(), [&](ArrowId a) { return q.arrow(a).frozen; });
    (all_frozen ? frozen : mixed).add(w, c);
  }
  return {mixed, frozen};
}

inline bool is_irredundant(const IceQuiver& q, const Potential& W) { return split_irredundant(q, W).second.zero(); }

inline ValidationReport potential_validate(const IceQuiver& q, const Potential& W) {
  ValidationReport r;
  for (auto& [w, c] : W.terms()) {
    std::string name = "'" + to_string(w) + "'";
    bool known = true;
    for (auto a : w.arrows())
      if (!q.has_arrow(a)) {
        r.add("term " + name + " uses unknown arrow '" + a.str() + "'");
        known = false;
      }
    if (!known) continue;
    try {
      Path p = as_path(q, w);
      if (!p.closed()) r.add("term " + name + " is not a cycle");
    } catch (const Error& e) {
      r.add("term " + name + ": " + e.what());
      continue;
    }
    if (w.degree() < 2) r.add("term " + name + " has degree 1");
    bool loop = std::any_of(w.arrows().begin(), w.arrows().end(), [&](ArrowId a) {
      auto& arr = q.arrow(a);
      return arr.tail == arr.head;
    });
    if (loop && w.degree() == 2) r.add("loop term of degree 2: " + name);
  }
  return r;
}

/// Reduced: irredundant with no 2-cycle terms.
inline bool is_reduced(const IceQuiver& q, const Potential& W) {
  if (!is_irredundant(q, W)) return false;
  for (auto& [w, c] : W.terms())
    if (w.degree() == 2) return false;
  return true;
}

/// Default truncation bound max(4, 2·(max term degree) + 2).
inline int default_truncation(const Potential& W) {
  return std::max<int>(4, 2 * static_cast<int>(W.max_degree()) + 2);
}

}  // namespace iceqp
