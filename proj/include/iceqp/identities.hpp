#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iceqp/mutation.hpp"

namespace iceqp {

/// Convention under which the mutation derivative identities hold.
inline constexpr Side kDefaultSide = Side::StripLeftmost;

/// [p]: replaces each written pair (out of k, into k) by its composite arrow.
inline NCPoly bracket(const IceQuiver& q, const Premutation& pm, const NCPoly& f) {
  NCPoly r(f.bound());
  for (auto& [p, c] : f.terms()) {
    Path s{{}, p.source, p.target};
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
      if (q.arrow(p.arrows[i]).tail == pm.vertex && i + 1 < p.arrows.size()) {
        s.arrows.push_back(pm.composites.at({p.arrows[i], p.arrows[i + 1]}));
        ++i;
      } else {
        s.arrows.push_back(p.arrows[i]);
      }
    }
    r.add(s, c);
  }
  return r;
}

struct IdentityCheck {
  std::string name;
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct DerivativeIdentityReport {
  int vertex = 0;
  Side side = kDefaultSide;
  std::array<IdentityCheck, 6> identities;  // (i) .. (vi)

  bool ok() const {
    for (auto& c : identities)
      if (!c.ok()) return false;
    return true;
  }
  /// (iii)–(v), the ones that single out a convention.
  bool core_ok() const { return identities[2].ok() && identities[3].ok() && identities[4].ok(); }
};

/// Evaluates the second-derivative identities for W′ = μ̃_k W. Here "out"
/// arrows leave k and "in" arrows enter k; [out,in] is their composite.
///  (i)   ∂_γ ∂_γ′ W′ = [∂_γ ∂_γ′ W]                   γ, γ′ not at k
///  (ii)  ∂_γ ∂_[o,i] W′ and ∂_[o,i] ∂_γ W′ equal the corresponding
///        iterated derivatives of W, with composites substituted; the order of
///        the inner strips follows the convention
///  (iii) ∂_[o,i] ∂_o* W′ = i*
///  (iv)  ∂_i* ∂_[o,i] W′ = o*
///  (v)   ∂_o* ∂_i* W′ = [o,i]
///  (vi)  every other ∂_δ ∂_δ′ W′ vanishes
inline DerivativeIdentityReport verify_derivative_identities(const IceQuiver& q, const Potential& W, int k, Side side) {
  auto pm = premutate(q, W, k);
  const IceQuiver& q2 = pm.quiver;
  DerivativeIdentityReport rep;
  rep.vertex = k;
  rep.side = side;
  const char* names[] = {"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"};
  for (int i = 0; i < 6; ++i) rep.identities[i].name = names[i];

  auto d1 = [&](const IceQuiver& quiver, const Potential& P, ArrowId a) { return cyclic_derivative(quiver, P, a); };
  auto e = [&](const IceQuiver& quiver, const NCPoly& f, ArrowId a) { return edge_derivative(quiver, f, a, side); };
  std::set<std::pair<ArrowId, ArrowId>> covered;  // (stripped, differentiated)
  auto check = [&](int idx, ArrowId strip, ArrowId diff, const NCPoly& lhs, const NCPoly& rhs) {
    covered.insert({strip, diff});
    auto& c = rep.identities[idx];
    ++c.checked;
    if (!(lhs == rhs))
      c.failures.push_back("∂" + strip.str() + " ∂" + diff.str() + ": " + to_string(lhs) + " ≠ " + to_string(rhs));
  };

  std::vector<ArrowId> surviving, outs, ins;
  for (auto& a : q.arrows()) {
    if (a.tail == k) outs.push_back(a.id);
    else if (a.head == k) ins.push_back(a.id);
    else surviving.push_back(a.id);
  }

  for (auto g : surviving)
    for (auto g2 : surviving)
      check(0, g, g2, e(q2, d1(q2, pm.potential, g2), g), bracket(q, pm, e(q, d1(q, W, g2), g)));

  for (auto o : outs)
    for (auto i : ins) {
      ArrowId comp = pm.composites.at({o, i});
      // the pair (o, i) is written "o i": o is the leftmost of the two
      auto [first, second] = side == Side::StripLeftmost ? std::pair{o, i} : std::pair{i, o};
      for (auto g : surviving) {
        // ∂_γ ∂_comp W′ versus ∂_γ ∂_(inner strip) ∂_(other) W
        ArrowId diff = side == Side::StripLeftmost ? o : i;
        ArrowId strip = side == Side::StripLeftmost ? i : o;
        check(1, g, comp, e(q2, d1(q2, pm.potential, comp), g), bracket(q, pm, e(q, e(q, d1(q, W, diff), strip), g)));
        check(1, comp, g, e(q2, d1(q2, pm.potential, g), comp), bracket(q, pm, e(q, e(q, d1(q, W, g), first), second)));
      }
      ArrowId os = pm.star_map.at(o), is = pm.star_map.at(i);
      check(2, comp, os, e(q2, d1(q2, pm.potential, os), comp), NCPoly(Path::of(q2.arrow(is))));
      check(3, is, comp, e(q2, d1(q2, pm.potential, comp), is), NCPoly(Path::of(q2.arrow(os))));
      check(4, os, is, e(q2, d1(q2, pm.potential, is), os), NCPoly(Path::of(q2.arrow(comp))));
    }

  for (auto& a : q2.arrows())
    for (auto& b : q2.arrows()) {
      if (covered.count({a.id, b.id})) continue;
      auto& c = rep.identities[5];
      ++c.checked;
      auto v = e(q2, d1(q2, pm.potential, b.id), a.id);
      if (!v.zero()) c.failures.push_back("∂" + a.id.str() + " ∂" + b.id.str() + " = " + to_string(v));
    }
  return rep;
}

/// The unique convention satisfying (iii)–(v) on (q, W, k), if exactly one does.
inline std::optional<Side> distinguishing_convention(const IceQuiver& q, const Potential& W, int k) {
  bool l = verify_derivative_identities(q, W, k, Side::StripLeftmost).core_ok();
  bool r = verify_derivative_identities(q, W, k, Side::StripRightmost).core_ok();
  if (l == r) return std::nullopt;
  return l ? Side::StripLeftmost : Side::StripRightmost;
}

}  // namespace iceqp
