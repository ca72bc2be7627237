#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iceqp/error.hpp"
#include "iceqp/symbol.hpp"

namespace iceqp {

using ArrowId = Symbol;

struct Vertex {
  int id = 0;
  bool frozen = false;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Arrow {
  ArrowId id;
  int tail = 0;
  int head = 0;
  bool frozen = false;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A list of human-readable violations; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

/// Quiver with a distinguished frozen subquiver. Insertion order of vertices
/// and arrows is preserved and is the serialization order.
class IceQuiver {
 public:
  IceQuiver() = default;

  void add_vertex(int id, bool frozen = false) {
    vertex_index_.emplace(id, vertices_.size());
    vertices_.push_back({id, frozen});
  }
  void add_arrow(ArrowId id, int tail, int head, bool frozen = false) {
    arrow_index_.emplace(id, arrows_.size());
    arrows_.push_back({id, tail, head, frozen});
  }
  void add_arrow(const Arrow& a) { add_arrow(a.id, a.tail, a.head, a.frozen); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  const Vertex* find_vertex(int id) const {
    auto it = vertex_index_.find(id);
    return it == vertex_index_.end() ? nullptr : &vertices_[it->second];
  }
  const Arrow* find_arrow(ArrowId id) const {
    auto it = arrow_index_.find(id);
    return it == arrow_index_.end() ? nullptr : &arrows_[it->second];
  }
  bool has_vertex(int id) const { return find_vertex(id) != nullptr; }
  bool has_arrow(ArrowId id) const { return find_arrow(id) != nullptr; }

  const Arrow& arrow(ArrowId id) const {
    if (auto* a = find_arrow(id)) return *a;
    throw ValidationError("unknown arrow '" + id.str() + "'");
  }
  const Vertex& vertex(int id) const {
    if (auto* v = find_vertex(id)) return *v;
    throw PreconditionError("unknown vertex " + std::to_string(id));
  }
  bool vertex_frozen(int id) const { return vertex(id).frozen; }

  std::vector<int> vertex_ids() const {
    std::vector<int> ids;
    for (auto& v : vertices_) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  /// Copy without the listed arrows.
  IceQuiver without(const std::set<ArrowId>& drop) const {
    IceQuiver q;
    for (auto& v : vertices_) q.add_vertex(v.id, v.frozen);
    for (auto& a : arrows_)
      if (!drop.count(a.id)) q.add_arrow(a);
    return q;
  }

  /// Copy with the listed arrows marked frozen.
  IceQuiver freezing(const std::set<ArrowId>& arrows) const {
    IceQuiver q;
    for (auto& v : vertices_) q.add_vertex(v.id, v.frozen);
    for (auto a : arrows_) {
      if (arrows.count(a.id)) a.frozen = true;
      q.add_arrow(a);
    }
    return q;
  }

  friend bool operator==(const IceQuiver& a, const IceQuiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Arrow> arrows_;
  std::map<int, std::size_t> vertex_index_;
  std::map<ArrowId, std::size_t> arrow_index_;
};

inline ValidationReport validate(const IceQuiver& q) {
  ValidationReport r;
  std::set<int> vids;
  for (auto& v : q.vertices()) {
    if (v.id < 0) r.add("negative vertex id " + std::to_string(v.id));
    if (!vids.insert(v.id).second) r.add("duplicate vertex id " + std::to_string(v.id));
  }
  std::set<ArrowId> aids;
  for (auto& a : q.arrows()) {
    if (a.id.empty()) r.add("arrow with empty id");
    if (!aids.insert(a.id).second) r.add("duplicate arrow id '" + a.id.str() + "'");
    bool tail_ok = vids.count(a.tail), head_ok = vids.count(a.head);
    if (!tail_ok || !head_ok) {
      r.add("arrow '" + a.id.str() + "' has dangling endpoint");
      continue;
    }
    if (a.frozen && (!q.vertex_frozen(a.tail) || !q.vertex_frozen(a.head)))
      r.add("frozen arrow endpoint mutable: '" + a.id.str() + "'");
  }
  return r;
}

/// Unordered pairs of arrows forming a 2-cycle (distinct endpoints), as
/// (smaller id, larger id), sorted.
inline std::vector<std::pair<ArrowId, ArrowId>> two_cycles(const IceQuiver& q) {
  std::vector<std::pair<ArrowId, ArrowId>> out;
  auto& as = q.arrows();
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = i + 1; j < as.size(); ++j)
      if (as[i].tail != as[i].head && as[i].tail == as[j].head && as[i].head == as[j].tail)
        out.emplace_back(std::min(as[i].id, as[j].id), std::max(as[i].id, as[j].id));
  std::sort(out.begin(), out.end());
  return out;
}

/// 2-cycles with at least one unfrozen arrow; these obstruct mutation.
inline std::vector<std::pair<ArrowId, ArrowId>> unfrozen_two_cycles(const IceQuiver& q) {
  std::vector<std::pair<ArrowId, ArrowId>> out;
  for (auto& c : two_cycles(q))
    if (!q.arrow(c.first).frozen || !q.arrow(c.second).frozen) out.push_back(c);
  return out;
}

inline bool mutability_check(const IceQuiver& q, int v) {
  if (q.vertex(v).frozen) return false;
  for (auto& a : q.arrows())
    if (a.tail == v && a.head == v) return false;
  for (auto& [x, y] : two_cycles(q)) {
    auto& a = q.arrow(x);
    if (a.tail == v || a.head == v) return false;
  }
  return true;
}

/// Name of the reversed arrow: a trailing '*' is dropped if present, so that
/// (a*)* = a.
inline std::string star_name(const std::string& id) {
  if (!id.empty() && id.back() == '*') return id.substr(0, id.size() - 1);
  return id + "*";
}

inline std::string composite_name(const std::string& out, const std::string& in) {
  return "[" + out + "," + in + "]";
}

namespace detail {

inline std::string fresh_name(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace detail

/// Extended Fomin–Zelevinsky mutation. Maximal collections of 2-cycles are
/// chosen greedily in (min id, max id) order.
inline IceQuiver fz_mutate(const IceQuiver& q, int v) {
  if (!mutability_check(q, v))
    throw PreconditionError("vertex " + std::to_string(v) + " is not mutable");

  std::vector<Arrow> arrows;
  std::set<std::string> taken;
  for (auto& a : q.arrows())
    if (a.tail != v && a.head != v) taken.insert(a.id.str());
  std::vector<Arrow> ins, outs;
  for (auto& a : q.arrows()) {
    if (a.head == v) ins.push_back(a);
    if (a.tail == v) outs.push_back(a);
  }
  for (auto& a : q.arrows()) {
    if (a.tail == v || a.head == v) {
      auto name = detail::fresh_name(star_name(a.id.str()), taken);
      taken.insert(name);
      arrows.push_back({name, a.head, a.tail, false});
    } else {
      arrows.push_back(a);
    }
  }
  for (auto& a : ins)
    for (auto& b : outs) {
      auto name = detail::fresh_name(composite_name(b.id.str(), a.id.str()), taken);
      taken.insert(name);
      arrows.push_back({name, a.tail, b.head, false});
    }

  IceQuiver mid;
  for (auto& x : q.vertices()) mid.add_vertex(x.id, x.frozen);
  for (auto& a : arrows) mid.add_arrow(a);

  std::set<ArrowId> removed;
  for (auto& [x, y] : two_cycles(mid)) {
    if (removed.count(x) || removed.count(y)) continue;
    if (!mid.arrow(x).frozen && !mid.arrow(y).frozen) removed.insert({x, y});
  }
  std::vector<Arrow> replacements;
  int counter = 0;
  for (auto& [x, y] : two_cycles(mid)) {
    if (removed.count(x) || removed.count(y)) continue;
    auto& a = mid.arrow(x);
    auto& b = mid.arrow(y);
    if (a.frozen == b.frozen) continue;
    auto& unfrozen = a.frozen ? b : a;
    removed.insert({x, y});
    auto name = detail::fresh_name("fz#" + std::to_string(++counter), taken);
    taken.insert(name);
    replacements.push_back({name, unfrozen.tail, unfrozen.head, true});
  }
  IceQuiver out = mid.without(removed);
  for (auto& a : replacements) out.add_arrow(a);
  return out;
}

}  // namespace iceqp
