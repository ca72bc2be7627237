#include <gtest/gtest.h>

#include <random>

#include "iceqp/canonical.hpp"
#include "iceqp/dimer.hpp"
#include "iceqp/reduction.hpp"
#include "support/fixtures.hpp"

using namespace iceqp;

namespace {

// One black–white edge, two half-edges on each node.
DimerModel smallest_disk() {
  DimerModel d;
  d.nodes = {{"b", Colour::Black}, {"w", Colour::White}};
  d.edges = {{"e", "b", "w"}};
  d.half_edges = {{"h1", "b"}, {"h2", "b"}, {"h3", "w"}, {"h4", "w"}};
  d.node_orders["b"] = {"e", "h1", "h2"};
  d.node_orders["w"] = {"e", "h3", "h4"};
  int id = 1;
  for (auto& w : trace_faces(d, {"h1", "h2", "h3", "h4"})) d.faces.push_back({id++, true, w});
  return d;
}

int bivalent_nodes(const DimerModel& d) {
  int n = 0;
  for (auto& [id, o] : d.node_orders) n += o.size() == 2;
  return n;
}

}  // namespace

TEST(Dimer, SevenFaceDiskIsValidDisk) {
  auto d = fixtures::disk_dimer();
  auto r = validate_dimer(d, 1);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations.front());
  EXPECT_EQ(euler_characteristic(d), 1);
}

TEST(Dimer, SevenFaceDiskDualQuiverAndPotential) {
  auto d = fixtures::disk_dimer();
  auto q = dual_ice_quiver(d).quiver;
  EXPECT_TRUE(validate(q).ok());
  EXPECT_EQ(q.vertices().size(), 7u);
  EXPECT_EQ(q.arrows().size(), 14u);
  int fv = 0, fa = 0;
  for (auto& v : q.vertices()) fv += v.frozen;
  for (auto& a : q.arrows()) fa += a.frozen;
  EXPECT_EQ(fv, 5);
  EXPECT_EQ(fa, 5);
  auto W = dimer_potential(d);
  int pos = 0, neg = 0;
  for (auto& [w, c] : W.terms()) (c > 0 ? pos : neg)++;
  EXPECT_EQ(pos, 5);
  EXPECT_EQ(neg, 3);
  EXPECT_TRUE(potential_validate(q, W).ok());
  EXPECT_TRUE(fterm_check(q, W).ok());
  // term degree = valence
  for (auto& [n, o] : d.node_orders) {
    std::vector<ArrowId> w(o.begin(), o.end());
    if (d.node(n)->colour == Colour::Black) std::reverse(w.begin(), w.end());
    EXPECT_NE(W.coeff(CyclicWord(w)), 0) << n;
  }
}

TEST(Dimer, TracedFacesMatchSevenFaceDiskWalks) {
  auto d = fixtures::disk_dimer();
  auto traced = trace_faces(d, {"h3", "h2", "h1", "h5", "h4"});
  ASSERT_EQ(traced.size(), d.faces.size());
  for (auto& f : d.faces) {
    bool found = false;
    for (auto& t : traced) {
      if (t.size() != f.walk.size()) continue;
      for (std::size_t s = 0; s < t.size() && !found; ++s) {
        auto r = t;
        std::rotate(r.begin(), r.begin() + s, r.end());
        found = r == f.walk;
      }
    }
    EXPECT_TRUE(found) << f.id;
  }
}

TEST(Dimer, SmallestDiskHasFourFaces) {
  auto d = smallest_disk();
  EXPECT_TRUE(validate_dimer(d, 1).ok());
  EXPECT_EQ(d.faces.size(), 4u);
  auto q = dual_ice_quiver(d).quiver;
  EXPECT_EQ(q.arrows().size(), 5u);
  int frozen = 0;
  for (auto& a : q.arrows()) frozen += a.frozen;
  EXPECT_EQ(frozen, 4);
}

TEST(Dimer, NonBipartiteEdgeReported) {
  auto d = smallest_disk();
  d.nodes[1].colour = Colour::Black;
  auto r = validate_dimer(d);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.front().find("bipartite"), std::string::npos);
}

TEST(Dimer, InconsistentWalkReported) {
  auto d = fixtures::disk_dimer();
  std::swap(d.node_orders["b8"][1], d.node_orders["b8"][2]);
  EXPECT_FALSE(validate_dimer(d).ok());
  EXPECT_THROW(dual_ice_quiver(d), ValidationError);
}

TEST(Dimer, EulerMismatchReported) {
  EXPECT_FALSE(validate_dimer(fixtures::disk_dimer(), 2).ok());
}

TEST(Dimer, SwappingColoursReversesArrows) {
  auto d = fixtures::disk_dimer();
  auto q = dual_ice_quiver(d).quiver;
  for (auto& n : d.nodes) n.colour = n.colour == Colour::Black ? Colour::White : Colour::Black;
  auto q2 = dual_ice_quiver(d).quiver;
  for (auto& a : q.arrows()) {
    auto& b = q2.arrow(a.id);
    EXPECT_EQ(a.tail, b.head);
    EXPECT_EQ(a.head, b.tail);
  }
}

TEST(Dimer, ClosedSurfaceHasNoFrozenPart) {
  DimerModel d;
  d.nodes = {{"b", Colour::Black}, {"w", Colour::White}};
  d.edges = {{"x", "b", "w"}, {"y", "b", "w"}, {"z", "b", "w"}};
  d.node_orders["b"] = {"x", "y", "z"};
  d.node_orders["w"] = {"x", "z", "y"};
  int id = 1;
  for (auto& w : trace_faces(d, {})) d.faces.push_back({id++, false, w});
  EXPECT_EQ(d.faces.size(), 3u);
  EXPECT_TRUE(validate_dimer(d, 2).ok());
  auto q = dual_ice_quiver(d).quiver;
  for (auto& v : q.vertices()) EXPECT_FALSE(v.frozen);
  for (auto& a : q.arrows()) EXPECT_FALSE(a.frozen);
  // both nodes give the same 3-cycle with opposite signs
  EXPECT_TRUE(dimer_potential(d).zero());
}

TEST(Dimer, SingleBlackNodeWithThreeHalfEdges) {
  DimerModel d;
  d.nodes = {{"b", Colour::Black}};
  d.half_edges = {{"h1", "b"}, {"h2", "b"}, {"h3", "b"}};
  d.node_orders["b"] = {"h1", "h2", "h3"};
  int id = 1;
  for (auto& w : trace_faces(d, {"h1", "h2", "h3"})) d.faces.push_back({id++, true, w});
  EXPECT_TRUE(validate_dimer(d, 1).ok());
  auto W = dimer_potential(d);
  ASSERT_EQ(W.size(), 1u);
  EXPECT_EQ(W.terms().begin()->first.degree(), 3u);
  EXPECT_EQ(W.terms().begin()->second, 1);
}

TEST(RemoveBivalent, SevenFaceDiskBoundaryNodesMatchReduction) {
  auto d = fixtures::disk_dimer();
  auto q = dual_ice_quiver(d).quiver;
  auto r = reduce(q, dimer_potential(d));
  auto e = remove_bivalent(remove_bivalent(d, "b12"), "b13");
  EXPECT_TRUE(validate_dimer(e, 1).ok());
  auto qe = dual_ice_quiver(e).quiver;
  EXPECT_EQ(canonical_form(r.quiver), canonical_form(qe));
  EXPECT_EQ(qe.arrows().size(), 12u);
}

TEST(RemoveBivalent, RejectsTrivalentNode) {
  EXPECT_THROW(remove_bivalent(fixtures::disk_dimer(), "b8"), PreconditionError);
  EXPECT_THROW(remove_bivalent(fixtures::disk_dimer(), "nope"), PreconditionError);
}

TEST(RandomDimers, BuilderProducesValidDisks) {
  std::mt19937_64 rng(3);
  DiskDimerBuilder b(rng);
  for (int i = 0; i < 20; ++i) {
    auto r = b.build(12, false, false);
    auto v = validate_dimer(r.model, 1);
    EXPECT_TRUE(v.ok()) << v.violations.front();
    EXPECT_EQ(bivalent_nodes(r.model), 0);
    auto q = dual_ice_quiver(r.model).quiver;
    EXPECT_TRUE(fterm_check(q, dimer_potential(r.model)).ok());
  }
}

TEST(RandomDimers, BivalentMoveMatchesReduction) {
  std::mt19937_64 rng(19);
  DiskDimerBuilder b(rng);
  int checked[2] = {0, 0};
  for (int i = 0; i < 40; ++i) {
    bool boundary = i % 2;
    auto r = b.build(10, true, boundary);
    if (r.bivalent.empty()) continue;
    ASSERT_TRUE(validate_dimer(r.model, 1).ok());
    ASSERT_EQ(bivalent_nodes(r.model), 1);
    auto q = dual_ice_quiver(r.model).quiver;
    auto red = reduce(q, dimer_potential(r.model));
    auto moved = remove_bivalent(r.model, r.bivalent);
    auto v = validate_dimer(moved, 1);
    EXPECT_TRUE(v.ok()) << v.violations.front();
    EXPECT_EQ(canonical_form(red.quiver), canonical_form(dual_ice_quiver(moved).quiver));
    ++checked[boundary];
  }
  EXPECT_GE(checked[0], 10);
  EXPECT_GE(checked[1], 10);
}
