#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "iceqp/io.hpp"
#include "iceqp/mutation.hpp"

namespace iceqp {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-step diagnostics shown after a mutation.
inline json step_report(const IceQuiver& before, int k, const MutationStep& s, int n) {
  return {{"vertex", k},
          {"two_cycles_created", two_cycles_json(unfrozen_two_cycles(s.quiver()))},
          {"fz_agreement", canonical_form(s.quiver()) == canonical_form(fz_mutate(before, k))},
          {"rigidity", rigidity_json(rigidity(s.quiver(), s.potential(), n))}};
}

inline json diagnostics_json(const IceQuiver& q, const Potential& W) {
  json mut = json::array();
  for (int v : q.vertex_ids())
    if (mutability_check(q, v)) mut.push_back(v);
  auto vq = validate(q);
  auto vp = potential_validate(q, W);
  vq.merge(vp);
  return {{"valid", vq.ok()},
          {"violations", vq.violations},
          {"mutable_vertices", mut},
          {"two_cycles", two_cycles_json(unfrozen_two_cycles(q))},
          {"reduced", vq.ok() && is_reduced(q, W)}};
}

/// A mutation history over an initial ice quiver with potential. All steps
/// use the session truncation. Undone steps stay available for redo until
/// the next mutation.
class Session {
 public:
  struct Step {
    int vertex = 0;
    QuiverWithPotential state;
    json report;
  };

  Session(std::string id, QuiverWithPotential initial, int truncation)
      : id_(std::move(id)), initial_(std::move(initial)), truncation_(truncation) {}

  const std::string& id() const { return id_; }
  int truncation() const { return truncation_; }
  std::mutex& mutex() const { return mutex_; }

  const QuiverWithPotential& current() const { return cursor_ == 0 ? initial_ : steps_[cursor_ - 1].state; }
  const QuiverWithPotential& initial() const { return initial_; }
  std::vector<int> sequence() const {
    std::vector<int> s;
    for (std::size_t i = 0; i < cursor_; ++i) s.push_back(steps_[i].vertex);
    return s;
  }

  const Step& mutate(int k) {
    auto& c = current();
    if (!c.quiver.find_vertex(k)) throw PreconditionError("no vertex " + std::to_string(k));
    auto m = iceqp::mutate(c.quiver, c.potential, k, truncation_);
    Step s{k, {m.quiver(), m.potential()}, step_report(c.quiver, k, m, truncation_)};
    steps_.resize(cursor_);
    steps_.push_back(std::move(s));
    ++cursor_;
    return steps_.back();
  }
  void undo() {
    if (cursor_ == 0) throw PreconditionError("nothing to undo");
    --cursor_;
  }
  void redo() {
    if (cursor_ == steps_.size()) throw PreconditionError("nothing to redo");
    ++cursor_;
  }

  json history_json() const {
    json h = json::array();
    for (std::size_t i = 0; i < cursor_; ++i) h.push_back(steps_[i].report);
    return h;
  }

  json state_json() const {
    auto& c = current();
    return {{"id", id_},
            {"truncation", truncation_},
            {"current", iqp_json(c.quiver, c.potential)},
            {"history", history_json()},
            {"can_undo", cursor_ > 0},
            {"can_redo", cursor_ < steps_.size()},
            {"diagnostics", diagnostics_json(c.quiver, c.potential)}};
  }

  json analysis_json() const {
    auto& c = current();
    auto A = truncated_algebra(c.quiver, c.potential, truncation_);
    json g;
    try {
      g = quiver_json(gabriel_quiver(A));
    } catch (const PreconditionError& e) {
      g = {{"unavailable", e.what()}};
    }
    auto r = reduce(c.quiver, c.potential, truncation_);
    json red = iqp_json(r.quiver, r.potential);
    red["reduction"] = reduction_json(r);
    return {{"hom_dims", hom_dims_json(hom_dims(A))},
            {"gabriel_quiver", g},
            {"rigidity", rigidity_json(rigidity(A))},
            {"reduced", red}};
  }

 private:
  std::string id_;
  QuiverWithPotential initial_;
  int truncation_;
  std::vector<Step> steps_;
  std::size_t cursor_ = 0;
  mutable std::mutex mutex_;
};

/// Replays a mutation sequence from the initial state.
inline QuiverWithPotential replay(const QuiverWithPotential& initial, const std::vector<int>& seq, int n) {
  QuiverWithPotential s = initial;
  for (int k : seq) {
    auto m = mutate(s.quiver, s.potential, k, n);
    s = {m.quiver(), m.potential()};
  }
  return s;
}

class SessionStore {
 public:
  std::shared_ptr<Session> create(QuiverWithPotential qp, std::optional<int> truncation) {
    if (auto r = validate(qp.quiver); !r.ok()) throw ValidationError(r.violations.front());
    if (auto r = potential_validate(qp.quiver, qp.potential); !r.ok()) throw ValidationError(r.violations.front());
    int n = truncation.value_or(default_truncation(qp.potential));
    if (n < 1) throw PreconditionError("truncation must be positive");
    std::lock_guard lock(mutex_);
    auto id = fresh_id();
    auto s = std::make_shared<Session>(id, std::move(qp), n);
    sessions_[id] = s;
    return s;
  }

  std::shared_ptr<Session> get(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
    return it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

 private:
  std::string fresh_id() {
    static const char* hex = "0123456789abcdef";
    for (;;) {
      std::string id;
      for (int i = 0; i < 16; ++i) id += hex[rng_() % 16];
      if (!sessions_.count(id)) return id;
    }
  }

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace iceqp
