#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iceqp/potential.hpp"

namespace iceqp {

enum class Colour { Black, White };

inline const char* to_string(Colour c) { return c == Colour::Black ? "black" : "white"; }

/// Dimer model with boundary. node_orders list the edges and half-edges at
/// each node counterclockwise; face walks list edges in traversal order with
/// the face on the left.
struct DimerModel {
  struct Node {
    std::string id;
    Colour colour = Colour::Black;
  };
  struct Edge {
    std::string id;
    std::string u, v;
  };
  struct HalfEdge {
    std::string id;
    std::string node;
  };
  struct Face {
    int id = 0;
    bool boundary = false;
    std::vector<std::string> walk;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<HalfEdge> half_edges;
  std::vector<Face> faces;
  std::map<std::string, std::vector<std::string>> node_orders;

  const Node* node(const std::string& id) const {
    for (auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
};

/// nodes − edges − half-edges + faces; 1 for a disk.
inline int euler_characteristic(const DimerModel& d) {
  return static_cast<int>(d.nodes.size()) - static_cast<int>(d.edges.size()) - static_cast<int>(d.half_edges.size()) +
         static_cast<int>(d.faces.size());
}

namespace detail {

// Edges and half-edges indexed together; a dart is an element with a direction.
// Full edge: dir 0 = u→v, 1 = v→u. Half-edge: dir 0 = outward, 1 = inward.
struct DimerIndex {
  struct Elem {
    std::string id;
    bool half = false;
    std::string a, b;  // endpoints; b empty for a half-edge
  };
  std::vector<Elem> elems;
  std::map<std::string, int> by_id;
  std::map<std::string, std::vector<int>> order;  // node -> element indices, ccw
  std::vector<std::string> problems;

  explicit DimerIndex(const DimerModel& d) {
    for (auto& e : d.edges) add({e.id, false, e.u, e.v});
    for (auto& h : d.half_edges) add({h.id, true, h.node, ""});
    for (auto& [n, ids] : d.node_orders) {
      auto& o = order[n];
      for (auto& id : ids) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
          problems.push_back("node_orders of '" + n + "' lists unknown edge '" + id + "'");
          continue;
        }
        o.push_back(it->second);
      }
    }
  }

  void add(Elem e) {
    if (!by_id.emplace(e.id, static_cast<int>(elems.size())).second) problems.push_back("duplicate edge id '" + e.id + "'");
    elems.push_back(std::move(e));
  }

  static int dart(int elem, int dir) { return 2 * elem + dir; }

  const std::string& arrival(int d) const {
    auto& e = elems[d / 2];
    return e.half ? e.a : (d % 2 == 0 ? e.b : e.a);
  }
  bool outward(int d) const { return elems[d / 2].half && d % 2 == 0; }

  // dart leaving node n along element x
  int leaving(int x, const std::string& n) const {
    if (elems[x].half) return dart(x, 0);
    return dart(x, elems[x].a == n ? 0 : 1);
  }

  // Successor of a dart that arrives at a node: leave along the clockwise
  // neighbour of the arrival edge. nullopt if the order is inconsistent.
  std::optional<int> turn(int d) const {
    auto& n = arrival(d);
    auto it = order.find(n);
    if (it == order.end()) return std::nullopt;
    auto& o = it->second;
    auto pos = std::find(o.begin(), o.end(), d / 2);
    if (pos == o.end()) return std::nullopt;
    std::size_t i = pos - o.begin();
    int y = o[(i + o.size() - 1) % o.size()];
    return leaving(y, n);
  }
};

// Dart cycles of the faces; after leaving through a half-edge the walk
// re-enters through the next half-edge in `boundary_order`.
inline std::vector<std::vector<int>> trace_darts(const DimerIndex& ix, const std::vector<std::string>& boundary_order) {
  std::map<int, int> next_half;
  for (std::size_t i = 0; i < boundary_order.size(); ++i)
    next_half[ix.by_id.at(boundary_order[i])] = ix.by_id.at(boundary_order[(i + 1) % boundary_order.size()]);
  std::vector<bool> seen(2 * ix.elems.size(), false);
  std::vector<std::vector<int>> faces;
  for (int s = 0; s < static_cast<int>(seen.size()); ++s) {
    if (seen[s]) continue;
    std::vector<int> walk;
    int dd = s;
    while (!seen[dd]) {
      seen[dd] = true;
      walk.push_back(dd);
      if (ix.outward(dd)) {
        auto it = next_half.find(dd / 2);
        if (it == next_half.end()) throw ValidationError("half-edge '" + ix.elems[dd / 2].id + "' missing from boundary order");
        dd = DimerIndex::dart(it->second, 1);
      } else {
        auto t = ix.turn(dd);
        if (!t) throw ValidationError("inconsistent node order at '" + ix.arrival(dd) + "'");
        dd = *t;
      }
    }
    if (dd != s) throw ValidationError("face tracing did not close");
    faces.push_back(std::move(walk));
  }
  return faces;
}

}  // namespace detail

/// Faces traced from node orders and a cyclic boundary order of half-edges,
/// as edge-id walks with the face on the left.
inline std::vector<std::vector<std::string>> trace_faces(const DimerModel& d,
                                                         const std::vector<std::string>& boundary_order) {
  detail::DimerIndex ix(d);
  std::vector<std::vector<std::string>> out;
  for (auto& w : detail::trace_darts(ix, boundary_order)) {
    std::vector<std::string> ids;
    for (int x : w) ids.push_back(ix.elems[x / 2].id);
    out.push_back(std::move(ids));
  }
  return out;
}

namespace detail {

// Assigns darts to the walks of the given faces, or reports why not.
struct DartAssignment {
  std::vector<std::vector<int>> darts;  // per face
  std::vector<int> face_of;             // dart -> face index, -1 if none
  std::vector<std::string> problems;
};

inline DartAssignment assign_darts(const DimerModel& d, const DimerIndex& ix) {
  DartAssignment out;
  out.face_of.assign(2 * ix.elems.size(), -1);
  std::vector<std::vector<std::vector<int>>> candidates(d.faces.size());
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    auto& walk = d.faces[f].walk;
    if (walk.empty()) {
      out.problems.push_back("face " + std::to_string(d.faces[f].id) + " has an empty walk");
      continue;
    }
    auto first = ix.by_id.find(walk[0]);
    if (first == ix.by_id.end()) continue;  // reported by validation
    for (int dir : {0, 1}) {
      int start = DimerIndex::dart(first->second, dir), dd = start;
      std::vector<int> ds;
      bool ok = true;
      for (std::size_t i = 0; i < walk.size() && ok; ++i) {
        auto it = ix.by_id.find(walk[i]);
        if (it == ix.by_id.end() || dd / 2 != it->second) {
          ok = false;
          break;
        }
        ds.push_back(dd);
        if (ix.outward(dd)) {
          auto nx = ix.by_id.find(walk[(i + 1) % walk.size()]);
          if (nx == ix.by_id.end() || !ix.elems[nx->second].half) ok = false;
          else dd = DimerIndex::dart(nx->second, 1);
        } else {
          auto t = ix.turn(dd);
          if (!t) ok = false;
          else dd = *t;
        }
      }
      if (ok && dd == start) candidates[f].push_back(ds);
    }
    if (candidates[f].empty())
      out.problems.push_back("face " + std::to_string(d.faces[f].id) + " walk is inconsistent with node_orders");
  }
  out.darts.assign(d.faces.size(), {});
  auto place = [&](std::size_t f, const std::vector<int>& ds) {
    for (int x : ds)
      if (out.face_of[x] >= 0) return false;
    for (int x : ds) out.face_of[x] = static_cast<int>(f);
    out.darts[f] = ds;
    return true;
  };
  for (int pass : {1, 2})
    for (std::size_t f = 0; f < d.faces.size(); ++f) {
      if (!out.darts[f].empty() || candidates[f].empty()) continue;
      if (pass == 1 && candidates[f].size() != 1) continue;
      bool placed = false;
      for (auto& c : candidates[f])
        if ((placed = place(f, c))) break;
      if (!placed) out.problems.push_back("face " + std::to_string(d.faces[f].id) + " reuses a side of an edge");
    }
  return out;
}

}  // namespace detail

/// Diagnostic check of a dimer model; `euler`, if given, is the expected
/// Euler characteristic (1 for a disk). A matching Euler characteristic is
/// necessary but not sufficient for the faces to be discs.
inline ValidationReport validate_dimer(const DimerModel& d, std::optional<int> euler = std::nullopt) {
  ValidationReport r;
  detail::DimerIndex ix(d);
  for (auto& p : ix.problems) r.add(p);
  std::map<std::string, Colour> colour;
  for (auto& n : d.nodes)
    if (!colour.emplace(n.id, n.colour).second) r.add("duplicate node id '" + n.id + "'");
  std::map<std::string, std::multiset<std::string>> incident;
  for (auto& e : d.edges) {
    if (!colour.count(e.u) || !colour.count(e.v)) {
      r.add("edge '" + e.id + "' has an unknown endpoint");
      continue;
    }
    if (colour[e.u] == colour[e.v]) r.add("edge '" + e.id + "' is not bipartite: both ends " + to_string(colour[e.u]));
    incident[e.u].insert(e.id);
    incident[e.v].insert(e.id);
  }
  for (auto& h : d.half_edges) {
    if (!colour.count(h.node)) r.add("half-edge '" + h.id + "' has an unknown node");
    incident[h.node].insert(h.id);
  }
  for (auto& n : d.nodes) {
    auto it = d.node_orders.find(n.id);
    std::multiset<std::string> listed;
    if (it != d.node_orders.end()) listed.insert(it->second.begin(), it->second.end());
    if (listed != incident[n.id]) r.add("node_orders of '" + n.id + "' do not match its incident edges");
  }
  for (auto& [n, o] : d.node_orders)
    if (!colour.count(n)) r.add("node_orders for unknown node '" + n + "'");

  std::set<int> face_ids;
  std::map<std::string, std::vector<int>> seen_in;
  std::set<std::string> halves;
  for (auto& h : d.half_edges) halves.insert(h.id);
  for (auto& f : d.faces) {
    if (!face_ids.insert(f.id).second) r.add("duplicate face id " + std::to_string(f.id));
    if (f.id < 0) r.add("negative face id " + std::to_string(f.id));
    for (auto& x : f.walk) {
      if (!ix.by_id.count(x)) r.add("face " + std::to_string(f.id) + " lists unknown edge '" + x + "'");
      seen_in[x].push_back(f.id);
      if (halves.count(x) && !f.boundary) r.add("half-edge '" + x + "' borders non-boundary face " + std::to_string(f.id));
    }
  }
  for (auto& e : ix.elems) {
    auto& fs = seen_in[e.id];
    if (fs.size() != 2 || fs[0] == fs[1])
      r.add("edge '" + e.id + "' must lie on exactly two distinct faces (found " + std::to_string(fs.size()) + ")");
  }
  if (r.ok()) {
    auto a = detail::assign_darts(d, ix);
    for (auto& p : a.problems) r.add(p);
  }
  if (euler && euler_characteristic(d) != *euler)
    r.add("Euler characteristic " + std::to_string(euler_characteristic(d)) + ", expected " + std::to_string(*euler));
  return r;
}

struct DualQuiver {
  IceQuiver quiver;
  std::map<std::string, ArrowId> arrow_of_edge;
};

/// One vertex per face (frozen iff boundary), one arrow per edge with the
/// black end on its left; arrows dual to half-edges are frozen.
inline DualQuiver dual_ice_quiver(const DimerModel& d) {
  if (auto r = validate_dimer(d); !r.ok()) throw ValidationError(r.violations.front());
  detail::DimerIndex ix(d);
  auto a = detail::assign_darts(d, ix);
  std::map<std::string, Colour> colour;
  for (auto& n : d.nodes) colour[n.id] = n.colour;
  auto face = [&](int dart) { return d.faces[a.face_of[dart]].id; };
  DualQuiver out;
  for (auto& f : d.faces) out.quiver.add_vertex(f.id, f.boundary);
  for (std::size_t i = 0; i < ix.elems.size(); ++i) {
    auto& e = ix.elems[i];
    int x = detail::DimerIndex::dart(static_cast<int>(i), 0), y = detail::DimerIndex::dart(static_cast<int>(i), 1);
    int tail, head;
    if (e.half) {
      // outward side is the head at a black node
      bool black = colour[e.a] == Colour::Black;
      head = face(black ? x : y);
      tail = face(black ? y : x);
    } else {
      // the face walking black → white is the head
      bool a_black = colour[e.a] == Colour::Black;
      head = face(a_black ? x : y);
      tail = face(a_black ? y : x);
    }
    out.quiver.add_arrow(e.id, tail, head, e.half);
    out.arrow_of_edge[e.id] = e.id;
  }
  return out;
}

/// Σ_black (clockwise cycle) − Σ_white (counterclockwise cycle).
inline Potential dimer_potential(const DimerModel& d) {
  auto q = dual_ice_quiver(d).quiver;
  Potential W;
  for (auto& n : d.nodes) {
    auto it = d.node_orders.find(n.id);
    if (it == d.node_orders.end() || it->second.empty()) continue;
    std::vector<ArrowId> w(it->second.begin(), it->second.end());
    if (n.colour == Colour::Black) std::reverse(w.begin(), w.end());
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (q.arrow(w[i]).tail != q.arrow(w[i + 1]).head)
        throw ValidationError("cycle around node '" + n.id + "' is not composable");
    if (q.arrow(w.back()).tail != q.arrow(w.front()).head)
      throw ValidationError("cycle around node '" + n.id + "' is not composable");
    W.add(CyclicWord(w), n.colour == Colour::Black ? 1 : -1);
  }
  return W;
}

/// Each unfrozen arrow in exactly one positive and one negative term, each
/// frozen arrow in exactly one term.
inline ValidationReport fterm_check(const IceQuiver& q, const Potential& W) {
  ValidationReport r;
  std::map<ArrowId, std::pair<int, int>> count;
  for (auto& [w, c] : W.terms())
    for (auto a : w.arrows()) (c > 0 ? count[a].first : count[a].second)++;
  for (auto& a : q.arrows()) {
    auto [pos, neg] = count[a.id];
    if (a.frozen ? pos + neg != 1 : pos != 1 || neg != 1)
      r.add("arrow '" + a.id.str() + "' occurs in " + std::to_string(pos) + " positive and " + std::to_string(neg) +
            " negative terms");
  }
  return r;
}

/// Removes a bivalent node. Between two full edges the neighbours are merged
/// (the first keeps its id); with one half-edge the neighbour receives the
/// half-edge in the slot of the deleted edge.
inline DimerModel remove_bivalent(const DimerModel& d, const std::string& id) {
  auto* node = d.node(id);
  if (!node) throw PreconditionError("unknown node '" + id + "'");
  auto& order = d.node_orders.at(id);
  if (order.size() != 2) throw PreconditionError("node '" + id + "' is not bivalent");
  std::vector<const DimerModel::Edge*> full;
  std::vector<const DimerModel::HalfEdge*> half;
  for (auto& x : order) {
    for (auto& e : d.edges)
      if (e.id == x) full.push_back(&e);
    for (auto& h : d.half_edges)
      if (h.id == x) half.push_back(&h);
  }
  if (half.size() == 2) throw PreconditionError("node '" + id + "' carries two half-edges");
  auto other = [&](const DimerModel::Edge* e) { return e->u == id ? e->v : e->u; };
  auto rotated_after = [](const std::vector<std::string>& o, const std::string& x) {
    auto i = std::find(o.begin(), o.end(), x) - o.begin();
    std::vector<std::string> r;
    for (std::size_t k = 1; k < o.size(); ++k) r.push_back(o[(i + k) % o.size()]);
    return r;
  };

  DimerModel out;
  std::set<std::string> gone{order.begin(), order.end()};
  if (half.empty()) {
    std::string u1 = other(full[0]), u2 = other(full[1]);
    if (u1 == u2) throw PreconditionError("node '" + id + "' joins the same node twice");
    for (auto& n : d.nodes)
      if (n.id != id && n.id != u2) out.nodes.push_back(n);
    for (auto& e : d.edges) {
      if (gone.count(e.id)) continue;
      auto f = e;
      if (f.u == u2) f.u = u1;
      if (f.v == u2) f.v = u1;
      out.edges.push_back(f);
    }
    for (auto& h : d.half_edges) {
      auto g = h;
      if (g.node == u2) g.node = u1;
      out.half_edges.push_back(g);
    }
    for (auto& [n, o] : d.node_orders)
      if (n != id && n != u2) out.node_orders[n] = o;
    auto merged = rotated_after(d.node_orders.at(u1), full[0]->id);
    auto s2 = rotated_after(d.node_orders.at(u2), full[1]->id);
    merged.insert(merged.end(), s2.begin(), s2.end());
    out.node_orders[u1] = merged;
  } else {
    const auto* e = full.at(0);
    const auto* h = half.at(0);
    std::string u = other(e);
    for (auto& n : d.nodes)
      if (n.id != id) out.nodes.push_back(n);
    for (auto& f : d.edges)
      if (f.id != e->id) out.edges.push_back(f);
    for (auto& g : d.half_edges)
      out.half_edges.push_back(g.id == h->id ? DimerModel::HalfEdge{h->id, u} : g);
    for (auto& [n, o] : d.node_orders) {
      if (n == id) continue;
      auto p = o;
      if (n == u) std::replace(p.begin(), p.end(), e->id, h->id);
      out.node_orders[n] = p;
    }
    gone = {e->id};
  }
  for (auto& f : d.faces) {
    auto g = f;
    g.walk.clear();
    for (auto& x : f.walk)
      if (!gone.count(x)) g.walk.push_back(x);
    out.faces.push_back(g);
  }
  return out;
}

/// Random disk dimer models, grown from a single edge by local moves that
/// keep every node at least trivalent; optionally with one planted bivalent
/// node (interior or on the boundary) whose two faces are distinct.
class DiskDimerBuilder {
 public:
  explicit DiskDimerBuilder(std::mt19937_64& rng) : rng_(rng) {}

  struct Result {
    DimerModel model;
    std::vector<std::string> boundary_order;
    std::string bivalent;  // empty if none planted
  };

  Result build(int moves, bool plant, bool boundary_plant) {
    reset();
    for (int i = 0; i < moves; ++i) {
      for (int attempt = 0; attempt < 20; ++attempt)
        if (random_move()) break;
    }
    Result r;
    if (plant) {
      for (int attempt = 0; attempt < 50 && r.bivalent.empty(); ++attempt)
        r.bivalent = boundary_plant ? plant_boundary() : plant_interior();
    }
    r.model = finish();
    r.boundary_order = boundary_;
    return r;
  }

 private:
  struct Corner {
    std::string node;
    std::string before;  // new edges go right after this one, counterclockwise
  };

  void reset() {
    nodes_.clear();
    edges_.clear();
    halves_.clear();
    order_.clear();
    boundary_.clear();
    counter_ = 0;
    add_node("b", Colour::Black);
    add_node("w", Colour::White);
    auto e = add_edge("b", "w");
    auto h1 = add_half("b"), h2 = add_half("b"), h3 = add_half("w"), h4 = add_half("w");
    order_["b"] = {e, h1, h2};
    order_["w"] = {e, h3, h4};
    boundary_ = {h2, h3, h4, h1};
    if (!consistent()) std::swap(boundary_[0], boundary_[2]);
  }

  std::string fresh(const std::string& p) { return p + std::to_string(++counter_); }
  void add_node(const std::string& id, Colour c) { nodes_.push_back({id, c}); }
  std::string add_edge(const std::string& u, const std::string& v) {
    auto id = "e" + std::to_string(++counter_);
    edges_.push_back({id, u, v});
    return id;
  }
  std::string add_half(const std::string& n) {
    auto id = "h" + std::to_string(++counter_);
    halves_.push_back({id, n});
    return id;
  }
  Colour colour(const std::string& n) const {
    for (auto& x : nodes_)
      if (x.id == n) return x.colour;
    return Colour::Black;
  }

  DimerModel skeleton() const {
    DimerModel d;
    d.nodes = nodes_;
    d.edges = edges_;
    d.half_edges = halves_;
    d.node_orders = order_;
    return d;
  }

  std::optional<std::vector<std::vector<int>>> faces() const {
    try {
      return detail::trace_darts(detail::DimerIndex(skeleton()), boundary_);
    } catch (const Error&) {
      return std::nullopt;
    } catch (const std::out_of_range&) {
      return std::nullopt;
    }
  }

  bool consistent() const {
    auto fs = faces();
    if (!fs) return false;
    auto d = skeleton();
    return euler_characteristic(d) + static_cast<int>(fs->size()) == 1;
  }

  // Corners of a traced face: at each node the walk passes through, new
  // edges go between the departing edge and the arrival edge.
  std::vector<Corner> corners(const std::vector<int>& walk) const {
    detail::DimerIndex ix(skeleton());
    std::vector<Corner> out;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      int d = walk[i];
      if (ix.outward(d)) continue;
      out.push_back({ix.arrival(d), ix.elems[walk[(i + 1) % walk.size()] / 2].id});
    }
    return out;
  }

  bool is_half(const std::string& x) const {
    for (auto& h : halves_)
      if (h.id == x) return true;
    return false;
  }

  void insert_after(const std::string& n, const std::string& before, const std::string& x) {
    auto& o = order_[n];
    auto it = std::find(o.begin(), o.end(), before);
    o.insert(it + 1, x);
  }

  // Position in boundary_ of the outward half-edge where the face leaves the disk.
  std::optional<std::size_t> boundary_gap(const std::vector<int>& walk) const {
    detail::DimerIndex ix(skeleton());
    for (int d : walk) {
      if (!ix.outward(d)) continue;
      auto& x = ix.elems[d / 2].id;
      return std::find(boundary_.begin(), boundary_.end(), x) - boundary_.begin();
    }
    return std::nullopt;
  }

  template <class F>
  bool attempt(F&& change) {
    auto saved = std::make_tuple(nodes_, edges_, halves_, order_, boundary_, counter_);
    if (change() && consistent()) return true;
    std::tie(nodes_, edges_, halves_, order_, boundary_, counter_) = saved;
    return false;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  bool random_move() {
    auto fs = faces();
    if (!fs) return false;
    auto& walk = pick(*fs);
    auto cs = corners(walk);
    if (cs.empty()) return false;
    int kind = std::uniform_int_distribution<int>(0, 2)(rng_);
    if (kind == 0) {
      // chord across a face between opposite colours
      std::vector<std::pair<Corner, Corner>> pairs;
      for (auto& a : cs)
        for (auto& b : cs)
          if (a.node < b.node && colour(a.node) != colour(b.node)) pairs.push_back({a, b});
      if (pairs.empty()) return false;
      auto [a, b] = pick(pairs);
      return attempt([&] {
        auto e = add_edge(a.node, b.node);
        insert_after(a.node, a.before, e);
        insert_after(b.node, b.before, e);
        return true;
      });
    }
    auto gap = boundary_gap(walk);
    if (!gap) return false;
    auto c = pick(cs);
    bool flip = std::bernoulli_distribution(0.5)(rng_);
    if (kind == 1) {
      // new trivalent node hanging into the boundary face
      return attempt([&] {
        auto y = fresh(colour(c.node) == Colour::Black ? "w" : "b");
        add_node(y, colour(c.node) == Colour::Black ? Colour::White : Colour::Black);
        auto e = add_edge(c.node, y);
        insert_after(c.node, c.before, e);
        auto h1 = add_half(y), h2 = add_half(y);
        order_[y] = {e, h1, h2};
        auto pos = boundary_.begin() + static_cast<long>(*gap) + 1;
        if (flip) std::swap(h1, h2);
        boundary_.insert(pos, {h1, h2});
        return true;
      });
    }
    // extra half-edge at a node on the boundary face
    return attempt([&] {
      auto h = add_half(c.node);
      insert_after(c.node, c.before, h);
      boundary_.insert(boundary_.begin() + static_cast<long>(*gap) + 1, h);
      return true;
    });
  }

  std::string plant_interior() {
    auto fs = faces();
    if (!fs) return {};
    auto& walk = pick(*fs);
    auto cs = corners(walk);
    std::vector<std::pair<Corner, Corner>> pairs;
    for (auto& a : cs)
      for (auto& b : cs)
        if (a.node < b.node && colour(a.node) == colour(b.node)) pairs.push_back({a, b});
    if (pairs.empty()) return {};
    auto [a, b] = pick(pairs);
    std::string v;
    bool ok = attempt([&] {
      Colour c = colour(a.node) == Colour::Black ? Colour::White : Colour::Black;
      v = fresh(c == Colour::Black ? "b" : "w");
      add_node(v, c);
      auto e1 = add_edge(a.node, v), e2 = add_edge(b.node, v);
      insert_after(a.node, a.before, e1);
      insert_after(b.node, b.before, e2);
      order_[v] = {e1, e2};
      return true;
    });
    return ok ? v : std::string{};
  }

  std::string plant_boundary() {
    auto fs = faces();
    if (!fs) return {};
    auto& walk = pick(*fs);
    auto gap = boundary_gap(walk);
    auto cs = corners(walk);
    if (!gap || cs.empty()) return {};
    auto c = pick(cs);
    std::string v;
    bool ok = attempt([&] {
      Colour col = colour(c.node) == Colour::Black ? Colour::White : Colour::Black;
      v = fresh(col == Colour::Black ? "b" : "w");
      add_node(v, col);
      auto e = add_edge(c.node, v);
      insert_after(c.node, c.before, e);
      auto h = add_half(v);
      order_[v] = {e, h};
      boundary_.insert(boundary_.begin() + static_cast<long>(*gap) + 1, h);
      return true;
    });
    return ok ? v : std::string{};
  }

  DimerModel finish() const {
    auto d = skeleton();
    int id = 1;
    for (auto& w : trace_faces(d, boundary_)) {
      bool boundary = std::any_of(w.begin(), w.end(), [&](auto& x) { return is_half(x); });
      d.faces.push_back({id++, boundary, w});
    }
    return d;
  }

  std::mt19937_64& rng_;
  std::vector<DimerModel::Node> nodes_;
  std::vector<DimerModel::Edge> edges_;
  std::vector<DimerModel::HalfEdge> halves_;
  std::map<std::string, std::vector<std::string>> order_;
  std::vector<std::string> boundary_;
  int counter_ = 0;
};

}  // namespace iceqp
