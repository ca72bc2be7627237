#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "iceqp/quiver.hpp"
#include "iceqp/rational.hpp"

namespace iceqp {

/// A path written left to right and composed right to left: the last arrow of
/// `arrows` is applied first. An empty arrow list is the idempotent at
/// `source` (== `target`).
struct Path {
  std::vector<ArrowId> arrows;
  int source = 0;
  int target = 0;

  static Path idempotent(int v) { return {{}, v, v}; }
  static Path of(const Arrow& a) { return {{a.id}, a.tail, a.head}; }

  std::size_t degree() const { return arrows.size(); }
  bool closed() const { return source == target; }

  friend bool operator==(const Path&, const Path&) = default;
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  }
};

/// Concatenation p·q (q applied first); requires q.target == p.source.
inline Path concat(const Path& p, const Path& q) {
  Path r{p.arrows, q.source, p.target};
  r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
  return r;
}

inline std::string to_string(const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.source);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? " " : "") + p.arrows[i].str();
  return s;
}

/// Builds a path from a written arrow list, checking composability.
inline Path make_path(const IceQuiver& q, const std::vector<ArrowId>& written) {
  if (written.empty()) throw ValidationError("empty path needs an explicit vertex");
  Path p{written, q.arrow(written.back()).tail, q.arrow(written.front()).head};
  for (std::size_t i = 0; i + 1 < written.size(); ++i)
    if (q.arrow(written[i]).tail != q.arrow(written[i + 1]).head)
      throw ValidationError("arrows '" + written[i].str() + "' and '" + written[i + 1].str() + "' are not composable");
  return p;
}

inline constexpr int kUnbounded = INT_MAX / 4;

/// Truncated noncommutative series: finitely many paths of degree <= bound
/// with nonzero rational coefficients.
class NCPoly {
 public:
  using Terms = std::map<Path, Rational>;

  NCPoly() = default;
  explicit NCPoly(int bound) : bound_(bound) {}
  NCPoly(const Path& p, Rational c = 1, int bound = kUnbounded) : bound_(bound) { add(p, c); }

  int bound() const { return bound_; }
  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Path& p, const Rational& c) {
    if (c == 0 || static_cast<int>(p.degree()) > bound_) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  NCPoly& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Rational& s) { return a *= s; }
  friend NCPoly operator-(NCPoly a) { return a *= Rational(-1); }

  NCPoly truncated(int n) const {
    NCPoly r(std::min(n, bound_));
    for (auto& [p, c] : terms_) r.add(p, c);
    return r;
  }

  std::size_t min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
  std::size_t max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

 private:
  int bound_ = kUnbounded;
  Terms terms_;
};

inline std::string to_string(const NCPoly& f) {
  if (f.zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [p, c] : f.terms()) {
    if (!first) s += " + ";
    first = false;
    if (c != 1) s += to_string(c) + "*";
    s += to_string(p);
  }
  return s;
}

/// Concatenation product f·g truncated at n; g's paths are applied first.
inline NCPoly multiply(const NCPoly& f, const NCPoly& g, int n) {
  NCPoly r(n);
  for (auto& [p, c] : f.terms())
    for (auto& [q, d] : g.terms()) {
      if (q.target != p.source) continue;
      if (static_cast<int>(p.degree() + q.degree()) > n) continue;
      r.add(concat(p, q), c * d);
    }
  return r;
}

inline NCPoly multiply(const NCPoly& f, const NCPoly& g) { return multiply(f, g, std::min(f.bound(), g.bound())); }

inline NCPoly arrow_poly(const IceQuiver& q, ArrowId a) { return NCPoly(Path::of(q.arrow(a))); }

enum class Side { StripRightmost, StripLeftmost };

inline const char* to_string(Side s) { return s == Side::StripRightmost ? "strip-rightmost" : "strip-leftmost"; }

/// Edge derivative: removes `a` from the rightmost (first applied) or
/// leftmost (last applied) end of each path; other paths vanish.
inline NCPoly edge_derivative(const IceQuiver& q, const NCPoly& f, ArrowId a, Side side) {
  const Arrow& arr = q.arrow(a);
  NCPoly r(f.bound());
  for (auto& [p, c] : f.terms()) {
    if (p.arrows.empty()) continue;
    if (side == Side::StripRightmost) {
      if (p.arrows.back() != a) continue;
      Path s{{p.arrows.begin(), p.arrows.end() - 1}, arr.head, p.target};
      r.add(s, c);
    } else {
      if (p.arrows.front() != a) continue;
      Path s{{p.arrows.begin() + 1, p.arrows.end()}, p.source, arr.tail};
      r.add(s, c);
    }
  }
  return r;
}

/// One summand c·(left ⊗ right) of Δ_a.
struct Tensor {
  Rational coeff;
  Path left;
  Path right;
};

/// Δ_a(p) = Σ over occurrences of a in p of (part left of a) ⊗ (part right of a).
inline std::vector<Tensor> delta(const IceQuiver& q, const NCPoly& f, ArrowId a) {
  const Arrow& arr = q.arrow(a);
  std::vector<Tensor> out;
  for (auto& [p, c] : f.terms()) {
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
      if (p.arrows[i] != a) continue;
      Path left{{p.arrows.begin(), p.arrows.begin() + i}, arr.head, p.target};
      Path right{{p.arrows.begin() + i + 1, p.arrows.end()}, p.source, arr.tail};
      out.push_back({c, std::move(left), std::move(right)});
    }
  }
  return out;
}

/// (u ⊗ v) • g = v·g·u, truncated at n.
inline NCPoly bullet(const Tensor& t, const NCPoly& g, int n) {
  NCPoly r(n);
  for (auto& [p, c] : g.terms()) {
    if (p.source != t.left.target || p.target != t.right.source) continue;
    if (static_cast<int>(t.left.degree() + p.degree() + t.right.degree()) > n) continue;
    r.add(concat(concat(t.right, p), t.left), t.coeff * c);
  }
  return r;
}

inline NCPoly bullet(const std::vector<Tensor>& ts, const NCPoly& g, int n) {
  NCPoly r(n);
  for (auto& t : ts) r += bullet(t, g, n);
  return r;
}

}  // namespace iceqp
