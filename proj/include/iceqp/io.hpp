#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "iceqp/dimer.hpp"
#include "iceqp/jacobian.hpp"
#include "iceqp/random.hpp"
#include "iceqp/reduction.hpp"

namespace iceqp {

using json = nlohmann::ordered_json;

namespace detail {

// Typed field access with JSON-pointer locations in the errors.
class Reader {
 public:
  static const json& field(const json& obj, const std::string& key, const std::string& at) {
    if (!obj.is_object()) throw ParseError("expected an object", at.empty() ? "/" : at);
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing field '" + key + "'", at.empty() ? "/" : at);
    return *it;
  }
  static const json& array(const json& obj, const std::string& key, const std::string& at) {
    auto& v = field(obj, key, at);
    if (!v.is_array()) throw ParseError("expected an array", at + "/" + key);
    return v;
  }
  static std::string string(const json& v, const std::string& at) {
    if (!v.is_string()) throw ParseError("expected a string", at);
    return v.get<std::string>();
  }
  static int integer(const json& v, const std::string& at) {
    if (!v.is_number_integer()) throw ParseError("expected an integer", at);
    return v.get<int>();
  }
  static bool boolean(const json& v, const std::string& at) {
    if (!v.is_boolean()) throw ParseError("expected a boolean", at);
    return v.get<bool>();
  }
};

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto p = msg.find("] ");
    throw ParseError(p == std::string::npos ? msg : msg.substr(p + 2), "byte " + std::to_string(e.byte));
  }
}

}  // namespace detail

// ---- ice quivers with potential ---------------------------------------------

inline QuiverWithPotential iqp_from_json(const json& doc, const std::string& at = "") {
  using R = detail::Reader;
  QuiverWithPotential out;
  auto& vs = R::array(doc, "vertices", at);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto p = at + "/vertices/" + std::to_string(i);
    bool frozen = vs[i].is_object() && vs[i].contains("frozen") ? R::boolean(vs[i]["frozen"], p + "/frozen") : false;
    out.quiver.add_vertex(R::integer(R::field(vs[i], "id", p), p + "/id"), frozen);
  }
  auto& as = R::array(doc, "arrows", at);
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto p = at + "/arrows/" + std::to_string(i);
    auto id = R::string(R::field(as[i], "id", p), p + "/id");
    if (id.empty()) throw ParseError("empty arrow id", p + "/id");
    bool frozen = as[i].contains("frozen") ? R::boolean(as[i]["frozen"], p + "/frozen") : false;
    out.quiver.add_arrow(id, R::integer(R::field(as[i], "tail", p), p + "/tail"),
                         R::integer(R::field(as[i], "head", p), p + "/head"), frozen);
  }
  if (!doc.contains("potential")) return out;
  auto& ts = R::array(doc, "potential", at);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto p = at + "/potential/" + std::to_string(i);
    Rational c;
    try {
      c = parse_rational(R::string(R::field(ts[i], "coeff", p), p + "/coeff"));
    } catch (const ParseError& e) {
      if (!e.where().empty()) throw;
      throw ParseError(e.what(), p + "/coeff");
    }
    auto& cyc = R::array(ts[i], "cycle", p);
    if (cyc.empty()) throw ParseError("empty cycle", p + "/cycle");
    std::vector<ArrowId> w;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      auto id = R::string(cyc[j], p + "/cycle/" + std::to_string(j));
      if (!out.quiver.has_arrow(id)) throw ParseError("unknown arrow '" + id + "'", p + "/cycle/" + std::to_string(j));
      w.push_back(id);
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto& left = out.quiver.arrow(w[j]);
      auto& right = out.quiver.arrow(w[(j + 1) % w.size()]);
      if (left.tail != right.head)
        throw ParseError("cycle is not composable: '" + left.id.str() + "' cannot follow '" + right.id.str() + "'",
                         p + "/cycle/" + std::to_string(j));
    }
    out.potential.add(CyclicWord(w), c);
  }
  return out;
}

inline QuiverWithPotential parse_iqp(std::string_view text) { return iqp_from_json(detail::parse_text(text)); }

inline json quiver_json(const IceQuiver& q) {
  json vs = json::array(), as = json::array();
  for (auto& v : q.vertices()) vs.push_back({{"id", v.id}, {"frozen", v.frozen}});
  for (auto& a : q.arrows()) as.push_back({{"id", a.id.str()}, {"tail", a.tail}, {"head", a.head}, {"frozen", a.frozen}});
  return {{"vertices", vs}, {"arrows", as}};
}

inline json words_json(const std::vector<ArrowId>& w) {
  json c = json::array();
  for (auto a : w) c.push_back(a.str());
  return c;
}

// Terms in potential order; each cycle is written starting from the
// rotation based at its least vertex.
inline json potential_json(const IceQuiver& q, const Potential& W) {
  json ts = json::array();
  for (auto& [w, c] : W.terms()) {
    bool known = true;
    for (auto a : w.arrows()) known &= q.has_arrow(a);
    ts.push_back({{"coeff", to_string(c)}, {"cycle", words_json(known ? based_rotation(q, w) : w.arrows())}});
  }
  return ts;
}

inline json iqp_json(const IceQuiver& q, const Potential& W) {
  json d = quiver_json(q);
  d["potential"] = potential_json(q, W);
  return d;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string serialize_iqp(const IceQuiver& q, const Potential& W) { return dump(iqp_json(q, W)); }

// ---- dimer models -----------------------------------------------------------

inline DimerModel dimer_from_json(const json& doc, const std::string& at = "") {
  using R = detail::Reader;
  DimerModel d;
  auto& ns = R::array(doc, "nodes", at);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto p = at + "/nodes/" + std::to_string(i);
    auto c = R::string(R::field(ns[i], "colour", p), p + "/colour");
    if (c != "black" && c != "white") throw ParseError("colour must be \"black\" or \"white\"", p + "/colour");
    d.nodes.push_back({R::string(R::field(ns[i], "id", p), p + "/id"), c == "black" ? Colour::Black : Colour::White});
  }
  auto& es = R::array(doc, "edges", at);
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto p = at + "/edges/" + std::to_string(i);
    auto& ends = R::array(es[i], "endpoints", p);
    if (ends.size() != 2) throw ParseError("an edge has two endpoints", p + "/endpoints");
    d.edges.push_back({R::string(R::field(es[i], "id", p), p + "/id"), R::string(ends[0], p + "/endpoints/0"),
                       R::string(ends[1], p + "/endpoints/1")});
  }
  auto& hs = R::array(doc, "half_edges", at);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    auto p = at + "/half_edges/" + std::to_string(i);
    d.half_edges.push_back(
        {R::string(R::field(hs[i], "id", p), p + "/id"), R::string(R::field(hs[i], "node", p), p + "/node")});
  }
  auto& fs = R::array(doc, "faces", at);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto p = at + "/faces/" + std::to_string(i);
    DimerModel::Face f;
    f.id = R::integer(R::field(fs[i], "id", p), p + "/id");
    f.boundary = R::boolean(R::field(fs[i], "boundary", p), p + "/boundary");
    auto& w = R::array(fs[i], "walk", p);
    for (std::size_t j = 0; j < w.size(); ++j) f.walk.push_back(R::string(w[j], p + "/walk/" + std::to_string(j)));
    d.faces.push_back(std::move(f));
  }
  auto& os = R::field(doc, "node_orders", at);
  if (!os.is_object()) throw ParseError("expected an object", at + "/node_orders");
  for (auto& [n, ids] : os.items()) {
    auto p = at + "/node_orders/" + n;
    if (!ids.is_array()) throw ParseError("expected an array", p);
    auto& o = d.node_orders[n];
    for (std::size_t j = 0; j < ids.size(); ++j) o.push_back(R::string(ids[j], p + "/" + std::to_string(j)));
  }
  return d;
}

inline DimerModel parse_dimer(std::string_view text) { return dimer_from_json(detail::parse_text(text)); }

inline json dimer_json(const DimerModel& d) {
  json ns = json::array(), es = json::array(), hs = json::array(), fs = json::array(), os = json::object();
  for (auto& n : d.nodes) ns.push_back({{"id", n.id}, {"colour", to_string(n.colour)}});
  for (auto& e : d.edges) es.push_back({{"id", e.id}, {"endpoints", {e.u, e.v}}});
  for (auto& h : d.half_edges) hs.push_back({{"id", h.id}, {"node", h.node}});
  for (auto& f : d.faces) fs.push_back({{"id", f.id}, {"boundary", f.boundary}, {"walk", f.walk}});
  for (auto& [n, o] : d.node_orders) os[n] = o;
  return {{"nodes", ns}, {"edges", es}, {"half_edges", hs}, {"faces", fs}, {"node_orders", os}};
}

inline std::string serialize_dimer(const DimerModel& d) { return dump(dimer_json(d)); }

// ---- reports ----------------------------------------------------------------

inline json hom_dims_json(const HomDims& h) {
  return {{"truncation", h.truncation}, {"vertices", h.vertices}, {"dims", h.d}, {"total", h.total()}};
}

inline std::string rigidity_status(const Rigidity& r) {
  return r.rigid ? "RigidUpTo(" + std::to_string(r.truncation) + ")" : "NotRigid";
}

inline json rigidity_json(const Rigidity& r) {
  json j = {{"status", rigidity_status(r)}, {"rigid", r.rigid}, {"truncation", r.truncation}};
  if (!r.rigid) {
    j["witness"] = witness_text(r.witness);
    j["witness_cycle"] = words_json(r.witness);
    j["witness_degree"] = r.witness_degree;
  }
  return j;
}

inline json reduction_json(const ReductionResult& r) {
  json trivial = json::array(), deleted = json::array(), frozen = json::array();
  for (auto& p : r.trivial_part) trivial.push_back({p.alpha.str(), p.beta.str()});
  for (auto& f : r.frozen_deleted)
    deleted.push_back({{"arrow", f.beta.str()}, {"paired_with", f.alpha.str()}, {"image", to_string(f.replacement)}});
  for (auto a : r.newly_frozen) frozen.push_back(a.str());
  return {{"truncation", r.truncation},
          {"trivial_pairs", trivial},
          {"deleted_frozen", deleted},
          {"newly_frozen", frozen},
          {"frozen_residue", to_string(r.frozen_residue)}};
}

inline json two_cycles_json(const std::vector<std::pair<ArrowId, ArrowId>>& cs) {
  json j = json::array();
  for (auto& [a, b] : cs) j.push_back({a.str(), b.str()});
  return j;
}

}  // namespace iceqp
