#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "iceqp/io.hpp"
#include "support/fixtures.hpp"

using namespace iceqp;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ICEQP_SAMPLES_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string where(const std::string& text) {
  try {
    parse_iqp(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST(ParseIqp, TriangleSampleIsFixture) {
  auto x = parse_iqp(slurp("triangle.json"));
  auto f = fixtures::triangle();
  EXPECT_EQ(x.quiver, f.q);
  EXPECT_EQ(x.potential, f.W);
}

TEST(ParseIqp, OtherSamples) {
  auto r = parse_iqp(slurp("reduction_example.json"));
  EXPECT_EQ(r.quiver, fixtures::reduction_example().q);
  EXPECT_EQ(r.potential, fixtures::reduction_example().W);
  auto b = parse_iqp(slurp("baba.json"));
  EXPECT_EQ(b.potential, fixtures::baba().W);
}

TEST(ParseIqp, EmptyDocument) {
  auto x = parse_iqp(R"({"vertices":[],"arrows":[],"potential":[]})");
  EXPECT_TRUE(x.quiver.vertices().empty());
  EXPECT_TRUE(x.quiver.arrows().empty());
  EXPECT_TRUE(x.potential.zero());
}

TEST(ParseIqp, NonComposableCycle) {
  std::string doc = R"({"vertices":[{"id":1},{"id":2},{"id":3}],
    "arrows":[{"id":"a1","tail":1,"head":2},{"id":"a2","tail":1,"head":3},{"id":"a3","tail":3,"head":1}],
    "potential":[{"coeff":"1","cycle":["a3","a2","a1"]}]})";
  EXPECT_THROW(parse_iqp(doc), ParseError);
  EXPECT_EQ(where(doc).rfind("/potential/0/cycle/", 0), 0u) << where(doc);
}

TEST(ParseIqp, ErrorsCarryPositions) {
  EXPECT_EQ(where(R"({"vertices": [)"), "byte 15");
  EXPECT_EQ(where(R"({"arrows":[]})"), "/");
  EXPECT_EQ(where(R"({"vertices":[{"id":"x"}],"arrows":[]})"), "/vertices/0/id");
  EXPECT_EQ(where(R"({"vertices":[{"id":1}],"arrows":[{"id":"a","tail":1}]})"), "/arrows/0");
  EXPECT_EQ(where(R"({"vertices":[{"id":1}],"arrows":[{"id":"a","tail":1,"head":1}],
                      "potential":[{"coeff":"1/0","cycle":["a"]}]})"),
            "/potential/0/coeff");
  EXPECT_EQ(where(R"({"vertices":[{"id":1}],"arrows":[],"potential":[{"coeff":"1","cycle":["z"]}]})"),
            "/potential/0/cycle/0");
}

TEST(ParseIqp, ValidationIsSeparate) {
  // frozen arrow between mutable vertices parses, then fails validation
  auto x = parse_iqp(R"({"vertices":[{"id":1},{"id":2}],"arrows":[{"id":"a","tail":1,"head":2,"frozen":true}]})");
  EXPECT_FALSE(validate(x.quiver).ok());
}

TEST(SerializeIqp, TriangleSampleIsCanonical) {
  auto f = fixtures::triangle();
  auto text = serialize_iqp(f.q, f.W);
  EXPECT_NE(text.find(R"("a3",
        "a2",
        "a1")"),
            std::string::npos)
      << text;
  EXPECT_EQ(serialize_iqp(parse_iqp(text).quiver, parse_iqp(text).potential), text);
}

TEST(SerializeIqp, RationalCoefficients) {
  auto f = fixtures::baba();
  Potential W;
  W.add({"b", "a", "b", "a"}, Rational(-3, 4));
  auto text = serialize_iqp(f.q, W);
  EXPECT_NE(text.find("\"-3/4\""), std::string::npos);
  EXPECT_EQ(parse_iqp(text).potential, W);
}

TEST(SerializeIqp, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto x = random_qp(rng);
    auto text = serialize_iqp(x.quiver, x.potential);
    auto y = parse_iqp(text);
    EXPECT_EQ(y.quiver, x.quiver);
    EXPECT_EQ(y.potential, x.potential);
    EXPECT_EQ(serialize_iqp(y.quiver, y.potential), text);
  }
}

TEST(Dimer, SampleMatchesFixture) {
  auto d = parse_dimer(slurp("disk_dimer.json"));
  auto f = fixtures::disk_dimer();
  EXPECT_EQ(serialize_dimer(d), serialize_dimer(f));
  EXPECT_EQ(serialize_dimer(d), slurp("disk_dimer.json"));
}

TEST(Dimer, ParseErrors) {
  try {
    parse_dimer(R"({"nodes":[{"id":"b","colour":"red"}],"edges":[],"half_edges":[],"faces":[],"node_orders":{}})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "/nodes/0/colour");
  }
  EXPECT_THROW(parse_dimer(R"({"nodes":[],"edges":[{"id":"e","endpoints":["x"]}]})"), ParseError);
}

TEST(Reports, RigidityJson) {
  auto b = fixtures::baba();
  auto j = rigidity_json(rigidity(b.q, b.W, 6));
  EXPECT_EQ(j["status"], "NotRigid");
  EXPECT_EQ(j["witness"], "ba");
  auto t = fixtures::triangle();
  EXPECT_EQ(rigidity_json(rigidity(t.q, t.W, 8))["status"], "RigidUpTo(8)");
}
