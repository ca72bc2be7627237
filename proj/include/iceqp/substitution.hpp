#pragma once

#include <map>
#include <string>
#include <vector>

#include "iceqp/potential.hpp"

namespace iceqp {

/// Vertex-fixing continuous homomorphism K<<Q>> -> K<<Q>>, given on arrows.
/// Arrows without an explicit image are fixed.
struct Substitution {
  IceQuiver quiver;
  std::map<ArrowId, NCPoly> images;
  std::string label;

  Substitution() = default;
  explicit Substitution(IceQuiver q, std::string label = {}) : quiver(std::move(q)), label(std::move(label)) {}

  void set(ArrowId a, NCPoly image) { images[a] = std::move(image); }

  NCPoly image(ArrowId a) const {
    auto it = images.find(a);
    if (it != images.end()) return it->second;
    return arrow_poly(quiver, a);
  }

  bool identity() const {
    for (auto& [a, f] : images)
      if (!(f == arrow_poly(quiver, a))) return false;
    return true;
  }
};

/// Reports images whose endpoints disagree with their arrow.
inline ValidationReport check_endpoints(const Substitution& s) {
  ValidationReport r;
  for (auto& [a, f] : s.images) {
    auto* arr = s.quiver.find_arrow(a);
    if (!arr) {
      r.add("image given for unknown arrow '" + a.str() + "'");
      continue;
    }
    for (auto& [p, c] : f.terms())
      if (p.source != arr->tail || p.target != arr->head)
        r.add("image of '" + a.str() + "' contains path '" + to_string(p) + "' with wrong endpoints");
  }
  return r;
}

inline NCPoly substitute(const Substitution& s, const NCPoly& f, int n) {
  if (auto r = check_endpoints(s); !r.ok()) throw ValidationError(r.violations.front());
  std::map<ArrowId, NCPoly> cache;
  auto img = [&](ArrowId a) -> const NCPoly& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, s.image(a).truncated(n)).first;
    return it->second;
  };
  NCPoly out(n);
  for (auto& [p, c] : f.terms()) {
    NCPoly acc(Path::idempotent(p.source), c, n);
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend() && !acc.zero(); ++it) acc = multiply(img(*it), acc, n);
    out += acc;
  }
  return out;
}

/// Substitutes into the canonical linear representative of each term and
/// re-cyclifies.
inline Potential substitute(const Substitution& s, const Potential& W, int n) {
  NCPoly lin(n);
  for (auto& [w, c] : W.terms()) lin.add(as_path(s.quiver, w), c);
  return cyclify(substitute(s, lin, n));
}

/// (outer ∘ inner)(a) = outer(inner(a)).
inline Substitution compose(const Substitution& outer, const Substitution& inner, int n) {
  Substitution r(inner.quiver, outer.label + " o " + inner.label);
  for (auto& a : inner.quiver.arrows()) r.set(a.id, substitute(outer, inner.image(a.id), n));
  return r;
}

namespace detail {

inline bool invertible(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(m[piv], m[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return true;
}

}  // namespace detail

/// Checks the conditions for a substitution to be a right equivalence on its
/// quiver: images lie in the arrow ideal, the linear part is invertible, and
/// frozen arrows map onto the frozen subalgebra.
inline ValidationReport certify_right_equivalence(const Substitution& s) {
  ValidationReport r = check_endpoints(s);
  const IceQuiver& q = s.quiver;
  std::map<std::pair<int, int>, std::vector<ArrowId>> parallel, parallel_frozen;
  for (auto& a : q.arrows()) {
    parallel[{a.tail, a.head}].push_back(a.id);
    if (a.frozen) parallel_frozen[{a.tail, a.head}].push_back(a.id);
    NCPoly img = s.image(a.id);
    for (auto& [p, c] : img.terms()) {
      if (p.arrows.empty()) r.add("image of '" + a.id.str() + "' has a constant term");
      if (a.frozen)
        for (auto b : p.arrows)
          if (!q.arrow(b).frozen) r.add("image of frozen arrow '" + a.id.str() + "' uses unfrozen arrow '" + b.str() + "'");
    }
  }
  auto linear_block = [&](const std::vector<ArrowId>& arrows) {
    std::vector<std::vector<Rational>> m(arrows.size(), std::vector<Rational>(arrows.size()));
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      NCPoly img = s.image(arrows[i]);
      for (std::size_t j = 0; j < arrows.size(); ++j) m[i][j] = img.coeff(Path::of(q.arrow(arrows[j])));
    }
    return m;
  };
  for (auto& [ends, arrows] : parallel)
    if (!detail::invertible(linear_block(arrows)))
      r.add("linear part not invertible on arrows " + std::to_string(ends.first) + "->" + std::to_string(ends.second));
  for (auto& [ends, arrows] : parallel_frozen)
    if (!detail::invertible(linear_block(arrows)))
      r.add("frozen linear part not invertible on arrows " + std::to_string(ends.first) + "->" +
            std::to_string(ends.second));
  return r;
}

}  // namespace iceqp
