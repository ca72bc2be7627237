#include <gtest/gtest.h>

#include <thread>

#include "iceqp/server.hpp"
#include "support/fixtures.hpp"

using namespace iceqp;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::pair<int, json> post(const std::string& path, const json& body = json::object()) {
    auto r = client_->Post(path, body.dump(), "application/json");
    if (!r) return {0, nullptr};
    return {r->status, json::parse(r->body)};
  }
  std::pair<int, json> get(const std::string& path) {
    auto r = client_->Get(path);
    if (!r) return {0, nullptr};
    return {r->status, json::parse(r->body)};
  }
  std::string export_text(const std::string& id) {
    auto r = client_->Get("/sessions/" + id + "/export");
    return r ? r->body : "";
  }
  std::string open_triangle(int n = 6) {
    auto t = fixtures::triangle();
    auto [status, b] = post("/sessions", {{"iqp", iqp_json(t.q, t.W)}, {"truncate", n}});
    EXPECT_EQ(status, 201);
    return b["id"];
  }

  SessionStore store_;
  Server server_{store_};
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(ServerTest, CreateAndGet) {
  auto id = open_triangle();
  auto [status, s] = get("/sessions/" + id);
  EXPECT_EQ(status, 200);
  EXPECT_EQ(s["truncation"], 6);
  EXPECT_TRUE(s["history"].empty());
  EXPECT_EQ(s["diagnostics"]["mutable_vertices"], json::array({2}));
  auto t = fixtures::triangle();
  EXPECT_EQ(s["current"], iqp_json(t.q, t.W));
}

TEST_F(ServerTest, MutateMatchesLibraryAndUndoRestores) {
  auto id = open_triangle();
  auto before = export_text(id);
  auto [status, s] = post("/sessions/" + id + "/mutate", {{"vertex", 2}});
  ASSERT_EQ(status, 200);
  auto t = fixtures::triangle();
  auto m = mutate(t.q, t.W, 2, 6);
  EXPECT_EQ(export_text(id), serialize_iqp(m.quiver(), m.potential()));
  EXPECT_EQ(s["report"]["fz_agreement"], true);
  EXPECT_TRUE(s["report"]["two_cycles_created"].empty());
  EXPECT_EQ(s["history"].size(), 1u);

  EXPECT_EQ(post("/sessions/" + id + "/undo").first, 200);
  EXPECT_EQ(export_text(id), before);
  EXPECT_EQ(post("/sessions/" + id + "/redo").first, 200);
  EXPECT_EQ(export_text(id), serialize_iqp(m.quiver(), m.potential()));
}

TEST_F(ServerTest, ReplayReproducesCurrent) {
  auto id = open_triangle();
  for (int i = 0; i < 3; ++i) post("/sessions/" + id + "/mutate", {{"vertex", 2}});
  post("/sessions/" + id + "/undo");
  auto s = store_.get(id);
  auto r = replay(s->initial(), s->sequence(), s->truncation());
  EXPECT_EQ(serialize_iqp(r.quiver, r.potential), export_text(id));
  EXPECT_EQ(s->sequence().size(), 2u);
}

TEST_F(ServerTest, Analysis) {
  auto id = open_triangle(8);
  auto [status, a] = get("/sessions/" + id + "/analysis");
  ASSERT_EQ(status, 200);
  EXPECT_EQ(a["hom_dims"]["total"], 7);
  EXPECT_EQ(a["rigidity"]["status"], "RigidUpTo(8)");
  EXPECT_EQ(a["gabriel_quiver"]["arrows"].size(), 3u);
  EXPECT_EQ(a["reduced"]["reduction"]["trivial_pairs"].size(), 0u);
}

TEST_F(ServerTest, Errors) {
  auto [s1, e1] = get("/sessions/nope");
  EXPECT_EQ(s1, 404);
  EXPECT_EQ(e1["code"], "not_found");

  auto r = client_->Post("/sessions", "{\"iqp\": ", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  auto e2 = json::parse(r->body);
  EXPECT_EQ(e2["code"], "parse_error");
  EXPECT_TRUE(e2.contains("message") && e2.contains("detail"));

  auto [s3, e3] = post("/sessions", {{"iqp", {{"vertices", {{{"id", 1}}, {{"id", 2}}}},
                                              {"arrows", {{{"id", "a"}, {"tail", 1}, {"head", 2}, {"frozen", true}}}}}}});
  EXPECT_EQ(s3, 422);
  EXPECT_EQ(e3["code"], "validation_failed");

  auto id = open_triangle();
  auto [s4, e4] = post("/sessions/" + id + "/mutate", {{"vertex", 1}});
  EXPECT_EQ(s4, 409);
  EXPECT_EQ(e4["code"], "precondition_violated");
  EXPECT_EQ(post("/sessions/" + id + "/undo").first, 409);
  auto [s5, e5] = post("/sessions/" + id + "/mutate", {{"vertex", "two"}});
  EXPECT_EQ(s5, 400);
  EXPECT_EQ(e5["detail"], "/vertex");
}

TEST_F(ServerTest, ConcurrentSessions) {
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(open_triangle());
  std::vector<std::thread> ts;
  std::atomic<int> ok{0};
  for (auto& id : ids)
    ts.emplace_back([&, id] {
      httplib::Client c("127.0.0.1", port_);
      for (int i = 0; i < 4; ++i) {
        auto r = c.Post("/sessions/" + id + "/mutate", R"({"vertex":2})", "application/json");
        ok += r && r->status == 200;
      }
    });
  for (auto& t : ts) t.join();
  EXPECT_EQ(ok, 16);
  auto t = fixtures::triangle();
  // four mutations at the same vertex: back to the start up to relabelling
  for (auto& id : ids) EXPECT_EQ(store_.get(id)->sequence().size(), 4u);
}
