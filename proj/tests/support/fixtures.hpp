#pragma once

#include "iceqp/dimer.hpp"
#include "iceqp/potential.hpp"

namespace fixtures {

using namespace iceqp;

struct QP {
  IceQuiver q;
  Potential W;
};

// Vertices 1, 3 frozen; a1: 1->2, a2: 2->3, a3: 3->1 (frozen); W = a3 a2 a1.
inline QP triangle() {
  QP x;
  x.q.add_vertex(1, true);
  x.q.add_vertex(2);
  x.q.add_vertex(3, true);
  x.q.add_arrow("a1", 1, 2);
  x.q.add_arrow("a2", 2, 3);
  x.q.add_arrow("a3", 3, 1, true);
  x.W.add({"a3", "a2", "a1"}, 1);
  return x;
}

// g1: 2->1, g2: 3->2, g3: 1->3, g4: 3->1 (frozen); vertices 1, 3 frozen;
// W = g1 g2 g3 + g3 g4.
inline QP reduction_example() {
  QP x;
  x.q.add_vertex(1, true);
  x.q.add_vertex(2);
  x.q.add_vertex(3, true);
  x.q.add_arrow("g1", 2, 1);
  x.q.add_arrow("g2", 3, 2);
  x.q.add_arrow("g3", 1, 3);
  x.q.add_arrow("g4", 3, 1, true);
  x.W.add({"g1", "g2", "g3"}, 1);
  x.W.add({"g3", "g4"}, 1);
  return x;
}

// a: 1->2, b: 2->1, W = b a b a.
inline QP baba() {
  QP x;
  x.q.add_vertex(1);
  x.q.add_vertex(2);
  x.q.add_arrow("a", 1, 2);
  x.q.add_arrow("b", 2, 1);
  x.W.add({"b", "a", "b", "a"}, 1);
  return x;
}

// Disk dimer with two bivalent boundary nodes: 8 nodes, 9 edges, 5 half-edges, 7 faces.
inline iceqp::DimerModel disk_dimer() {
  using iceqp::Colour;
  iceqp::DimerModel d;
  d.nodes = {{"b6", Colour::Black}, {"w7", Colour::White}, {"b8", Colour::Black}, {"w9", Colour::White}, {"b10", Colour::Black}, {"w11", Colour::White}, {"b12", Colour::Black}, {"b13", Colour::Black}};
  d.edges = {{"e6_7", "b6", "w7"}, {"e6_11", "b6", "w11"}, {"e8_7", "b8", "w7"}, {"e8_9", "b8", "w9"}, {"e8_11", "b8", "w11"}, {"e10_9", "b10", "w9"}, {"e10_11", "b10", "w11"}, {"e12_7", "b12", "w7"}, {"e13_9", "b13", "w9"}};
  d.half_edges = {{"h1", "b6"}, {"h2", "b12"}, {"h3", "b8"}, {"h4", "b13"}, {"h5", "b10"}};
  d.faces = {
      {1, true, {"e12_7", "e8_7", "h3", "h2"}},
      {2, true, {"e13_9", "h4", "h3", "e8_9"}},
      {3, true, {"e10_9", "h5", "h4", "e13_9"}},
      {4, true, {"e10_11", "e6_11", "h1", "h5"}},
      {5, true, {"e12_7", "h2", "h1", "e6_7"}},
      {6, false, {"e6_11", "e8_11", "e8_7", "e6_7"}},
      {7, false, {"e10_11", "e10_9", "e8_9", "e8_11"}},
  };
  d.node_orders["b6"] = {"e6_7", "h1", "e6_11"};
  d.node_orders["w7"] = {"e12_7", "e6_7", "e8_7"};
  d.node_orders["b8"] = {"h3", "e8_7", "e8_11", "e8_9"};
  d.node_orders["w9"] = {"e8_9", "e10_9", "e13_9"};
  d.node_orders["b10"] = {"e10_9", "e10_11", "h5"};
  d.node_orders["w11"] = {"e8_11", "e6_11", "e10_11"};
  d.node_orders["b12"] = {"h2", "e12_7"};
  d.node_orders["b13"] = {"e13_9", "h4"};
  return d;
}

}  // namespace fixtures
