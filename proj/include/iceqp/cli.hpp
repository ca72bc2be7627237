#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iceqp/identities.hpp"
#include "iceqp/io.hpp"
#include "iceqp/server.hpp"

namespace iceqp {

namespace cli {

struct Options {
  std::string input;
  std::optional<int> truncate;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::optional<int> at;
  std::vector<int> seq;
  std::string seq_text;
  int depth = 2;
  int samples = 0;
  std::string host = "127.0.0.1";
  int port = 8080;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream s;
  if (path.empty() || path == "-") {
    s << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read '" + path + "'");
    s << f.rdbuf();
  }
  return s.str();
}

inline std::string text_iqp(const IceQuiver& q, const Potential& W) {
  std::ostringstream o;
  o << "vertices:";
  for (auto& v : q.vertices()) o << " " << v.id << (v.frozen ? "*" : "");
  o << "\narrows:\n";
  for (auto& a : q.arrows()) o << "  " << a.id << ": " << a.tail << " -> " << a.head << (a.frozen ? " (frozen)" : "") << "\n";
  o << "potential:";
  if (W.zero()) o << " 0";
  bool first = true;
  for (auto& [w, c] : W.terms()) {
    Rational a = abs(c);
    o << (first ? (c < 0 ? " -" : " ") : (c < 0 ? " - " : " + "));
    first = false;
    if (a != 1) o << to_string(a) << "*";
    auto r = based_rotation(q, w);
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? " " : "") << r[i];
  }
  o << "\n";
  return o.str();
}

inline std::string text_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Key/value lines; IQP-shaped sub-documents are rendered as quivers.
inline std::string text_report(const json& j, const std::string& indent = "") {
  std::ostringstream o;
  for (auto& [k, v] : j.items()) {
    if (v.is_object() && v.contains("vertices") && v.contains("arrows")) {
      auto qp = iqp_from_json(v);
      o << indent << k << ":\n";
      std::istringstream lines(text_iqp(qp.quiver, qp.potential));
      for (std::string l; std::getline(lines, l);) o << indent << "  " << l << "\n";
    } else if (v.is_object()) {
      o << indent << k << ":\n" << text_report(v, indent + "  ");
    } else {
      o << indent << k << ": " << text_value(v) << "\n";
    }
  }
  return o.str();
}

inline void emit(std::ostream& out, const Options& o, const json& doc) {
  if (o.format == "text") {
    if (doc.contains("vertices") && doc.contains("arrows")) {
      auto qp = iqp_from_json(doc);
      out << text_iqp(qp.quiver, qp.potential);
      json rest = doc;
      rest.erase("vertices");
      rest.erase("arrows");
      rest.erase("potential");
      out << text_report(rest);
    } else {
      out << text_report(doc);
    }
  } else {
    out << dump(doc);
  }
}

inline QuiverWithPotential load(const Options& o, std::istream& in) {
  auto qp = parse_iqp(read_input(o.input, in));
  if (auto r = validate(qp.quiver); !r.ok()) throw ValidationError(r.violations.front());
  if (auto r = potential_validate(qp.quiver, qp.potential); !r.ok()) throw ValidationError(r.violations.front());
  return qp;
}

inline int truncation(const Options& o, const Potential& W) { return o.truncate.value_or(default_truncation(W)); }

inline json involution_json(const InvolutionReport& r) {
  json m = json::object();
  for (auto& [a, b] : r.relabelling)
    if (a != b) m[a.str()] = b.str();
  return {{"vertex", r.vertex},
          {"truncation", r.truncation},
          {"quiver_match", r.quiver_match},
          {"dims_match", r.dims_match},
          {"potential_match", r.potential_match},
          {"relabelling", m}};
}

// Involution over pseudo-random reduced samples.
inline json involution_suite(const Options& o) {
  std::mt19937_64 rng(o.seed);
  int n = o.truncate.value_or(5), done = 0, qm = 0, dm = 0, pm = 0;
  json failures = json::array();
  while (done < o.samples) {
    auto x = random_qp(rng);
    auto k = random_mutable_vertex(rng, x.quiver);
    if (!k) continue;
    auto r = check_involution(x.quiver, x.potential, *k, n);
    ++done;
    qm += r.quiver_match;
    dm += r.dims_match;
    pm += r.potential_match;
    if (!r.quiver_match || !r.dims_match) {
      auto f = iqp_json(x.quiver, x.potential);
      f["vertex"] = *k;
      failures.push_back(f);
    }
  }
  return {{"samples", done},   {"seed", o.seed},       {"truncation", n}, {"quiver_match", qm},
          {"dims_match", dm},  {"potential_match", pm}, {"failures", failures}};
}

inline int dispatch(const std::string& cmd, Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (cmd == "validate") {
    auto qp = parse_iqp(read_input(o.input, in));
    auto r = validate(qp.quiver);
    r.merge(potential_validate(qp.quiver, qp.potential));
    json doc = {{"valid", r.ok()}, {"violations", r.violations}};
    if (r.ok()) {
      doc["reduced"] = is_reduced(qp.quiver, qp.potential);
      json mut = json::array();
      for (int v : qp.quiver.vertex_ids())
        if (mutability_check(qp.quiver, v)) mut.push_back(v);
      doc["mutable_vertices"] = mut;
    }
    emit(out, o, doc);
    return r.ok() ? 0 : 1;
  }
  if (cmd == "dimer-import") {
    auto d = parse_dimer(read_input(o.input, in));
    if (auto r = validate_dimer(d); !r.ok()) {
      emit(out, o, {{"valid", false}, {"violations", r.violations}});
      return 1;
    }
    auto q = dual_ice_quiver(d).quiver;
    auto doc = iqp_json(q, dimer_potential(d));
    doc["euler_characteristic"] = euler_characteristic(d);
    emit(out, o, doc);
    return 0;
  }
  if (cmd == "involution" && o.samples > 0) {
    auto doc = involution_suite(o);
    emit(out, o, doc);
    return doc["failures"].empty() ? 0 : 1;
  }
  if (cmd == "serve") {
    SessionStore store;
    Server server(store);
    int port = server.bind(o.host, o.port);
    if (port < 0) throw PreconditionError("cannot bind " + o.host + ":" + std::to_string(o.port));
    err << "listening on http://" << o.host << ":" << port << "\n";
    server.listen();
    return 0;
  }

  auto qp = load(o, in);
  auto& q = qp.quiver;
  auto& W = qp.potential;
  if (cmd == "reduce") {
    auto r = reduce(q, W, truncation(o, W));
    auto doc = iqp_json(r.quiver, r.potential);
    doc["reduction"] = reduction_json(r);
    emit(out, o, doc);
  } else if (cmd == "mutate") {
    if (o.at) o.seq = {*o.at};
    std::stringstream ss(o.seq_text);
    for (std::string t; std::getline(ss, t, ',');) {
      try {
        std::size_t used = 0;
        o.seq.push_back(std::stoi(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::logic_error&) {
        throw ParseError("--seq expects comma-separated vertex ids, got '" + o.seq_text + "'");
      }
    }
    if (o.seq.empty()) throw ParseError("mutate needs --at or --seq");
    int n = truncation(o, W);
    auto steps = mutate_sequence(q, W, o.seq, n);
    emit(out, o, iqp_json(steps.back().quiver(), steps.back().potential()));
  } else if (cmd == "fz") {
    if (!mutability_check(q, *o.at)) throw PreconditionError("vertex " + std::to_string(*o.at) + " is not mutable");
    auto doc = quiver_json(fz_mutate(q, *o.at));
    doc["fz_agreement"] = fz_agreement(q, W, *o.at, truncation(o, W));
    emit(out, o, doc);
  } else if (cmd == "jacobian") {
    emit(out, o, hom_dims_json(hom_dims(truncated_algebra(q, W, truncation(o, W)))));
  } else if (cmd == "rigid") {
    emit(out, o, rigidity_json(rigidity(q, W, truncation(o, W))));
  } else if (cmd == "involution") {
    auto r = check_involution(q, W, *o.at, o.truncate.value_or(5));
    emit(out, o, involution_json(r));
    return r.quiver_match && r.dims_match ? 0 : 1;
  } else if (cmd == "nondeg") {
    auto r = nondegeneracy_search(q, W, o.depth, truncation(o, W));
    json doc = {{"depth", r.depth},
                {"ok_to_depth", r.ok_to_depth},
                {"mutations", r.admissible},
                {"explored", r.explored},
                {"failing_sequence", r.failing_sequence ? json(*r.failing_sequence) : json(nullptr)}};
    emit(out, o, doc);
  }
  return 0;
}

}  // namespace cli

/// Runs the command line; returns the exit code (0 success, 1 validation
/// failure, 2 parse error, 3 precondition violation).
inline int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  cli::Options o;
  CLI::App app{"Ice quivers with potential: reduction, mutation, truncated Jacobian algebras"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  auto global = [&](CLI::App* sub) {
    sub->add_option("--truncate", o.truncate, "Truncation degree N")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", o.seed, "Seed for sample harnesses");
  };
  global(&app);
  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "Document path, or - for stdin"); };

  std::vector<CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    auto s = app.add_subcommand(name, help);
    global(s);
    subs.push_back(s);
    return s;
  };
  input(add("validate", "Check a document"));
  input(add("reduce", "Split off the trivial part and remove half-frozen 2-cycles"));
  auto mu = add("mutate", "Mutate at a vertex or along a sequence");
  input(mu);
  auto at_opt = mu->add_option("--at", o.at, "Vertex");
  mu->add_option("--seq", o.seq_text, "Comma-separated vertices")->excludes(at_opt);
  auto fz = add("fz", "Quiver-only (Fomin-Zelevinsky) mutation");
  input(fz);
  fz->add_option("--at", o.at, "Vertex")->required();
  input(add("jacobian", "Dimensions of the truncated frozen Jacobian algebra"));
  input(add("rigid", "Rigidity up to the truncation"));
  auto inv = add("involution", "Check that mutating twice gives back the input");
  input(inv);
  auto inv_at = inv->add_option("--at", o.at, "Vertex");
  inv->add_option("--samples", o.samples, "Run on this many random samples instead")->excludes(inv_at);
  auto nd = add("nondeg", "Search mutation sequences for unfrozen 2-cycles");
  input(nd);
  nd->add_option("--depth", o.depth, "Maximum sequence length")->check(CLI::NonNegativeNumber);
  input(add("dimer-import", "Ice quiver with potential of a dimer model"));
  auto sv = add("serve", "Run the HTTP session service");
  sv->add_option("--host", o.host);
  sv->add_option("--port", o.port);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string cmd;
  for (auto s : subs)
    if (s->parsed()) cmd = s->get_name();
  if (cmd == "involution" && !o.at && o.samples <= 0) {
    err << "error: involution needs --at or --samples\n";
    return 2;
  }
  try {
    return cli::dispatch(cmd, o, in, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }
}

}  // namespace iceqp
