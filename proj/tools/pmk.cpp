#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmk/decompose.hpp"
#include "pmk/embedding.hpp"
#include "pmk/generate.hpp"
#include "pmk/io.hpp"
#include "pmk/median.hpp"
#include "pmk/nesting.hpp"
#include "pmk/squares.hpp"

using nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - t0_).count();
    t0_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

using Phases = std::vector<std::pair<std::string, double>>;

struct Input {
  pmk::ParsedGraph pg;
  std::string digest;
};

Input load_input(const std::string& path, Phases& phases) {
  Stopwatch sw;
  std::string bytes = pmk::slurp_file(path);
  std::istringstream in(bytes);
  Input r{pmk::read_edge_list(in), pmk::fnv1a_hex(bytes)};
  phases.emplace_back("parse", sw.lap_ms());
  return r;
}

ordered_json input_block(const std::string& path, const Input& in) {
  ordered_json b;
  b["path"] = path;
  b["digest"] = in.digest;
  b["n"] = in.pg.g.order();
  b["m"] = in.pg.g.size();
  if (in.pg.named) b["names"] = in.pg.names;
  return b;
}

ordered_json timing_block(const Phases& phases) {
  ordered_json t;
  for (const auto& [name, ms] : phases) t[name] = ms;
  return t;
}

void emit_json(const std::string& command, const ordered_json& input,
               ordered_json payload, const Phases& phases, int exit_code) {
  ordered_json doc;
  doc["command"] = command;
  if (!input.is_null()) doc["input"] = input;
  for (auto& [k, v] : payload.items()) doc[k] = v;
  doc["timings_ms"] = timing_block(phases);
  doc["exit"] = exit_code;
  std::cout << doc.dump(2) << "\n";
}

void emit_timings_human(const Phases& phases) {
  std::cout << "timings:";
  for (const auto& [name, ms] : phases) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << ms;
    std::cout << " " << name << "=" << os.str() << "ms";
  }
  std::cout << "\n";
}

int run_check(const std::string& path, bool json, bool oracle, bool cube_free) {
  Phases phases;
  Input in = load_input(path, phases);
  const pmk::Graph& g = in.pg.g;

  Stopwatch sw;
  pmk::PlanarCheck pc = pmk::planar_embed(g);
  phases.emplace_back("planarity", sw.lap_ms());
  if (!pc.planar()) {
    ordered_json payload;
    payload["planar"] = false;
    payload["median"] = false;
    payload["kuratowski"] = pc.kuratowski;
    if (json) {
      emit_json("check", input_block(path, in), payload, phases, 3);
    } else {
      std::cout << "not planar; subdivision edges:";
      for (auto [u, v] : pc.kuratowski) std::cout << " " << u << "-" << v;
      std::cout << "\n";
      emit_timings_human(phases);
    }
    return 3;
  }

  pmk::MedianVerdict v;
  std::string mode = oracle ? "oracle" : cube_free ? "cube-free" : "characterization";
  ordered_json witness;
  if (cube_free) {
    v.median = pmk::is_cube_free_median_planar(g);
    if (!v.median) {
      pmk::MedianVerdict base = pmk::is_median_planar(g);
      if (!base.median) {
        v.witness = base.witness;
      } else if (auto cube = pmk::find_cube_subgraph(g)) {
        witness = ordered_json::parse(pmk::forbidden_json(*cube));
      }
    }
  } else if (oracle) {
    v = pmk::is_median_oracle(g);
  } else {
    v = pmk::is_median_planar(g);
  }
  phases.emplace_back("median", sw.lap_ms());
  if (v.witness) witness = ordered_json::parse(pmk::witness_json(*v.witness));

  int rc = v.median ? 0 : 1;
  if (json) {
    ordered_json payload;
    payload["mode"] = mode;
    payload["planar"] = true;
    payload["median"] = v.median;
    payload["witness"] = witness.is_null() ? ordered_json(nullptr) : witness;
    emit_json("check", input_block(path, in), payload, phases, rc);
  } else {
    std::cout << "n=" << g.order() << " m=" << g.size() << " (" << mode << ")\n";
    std::cout << (cube_free ? "cube-free planar median: " : "planar median: ")
              << (v.median ? "yes" : "no") << "\n";
    if (!witness.is_null()) std::cout << "witness: " << witness.dump() << "\n";
    emit_timings_human(phases);
  }
  return rc;
}

int run_decompose(const std::string& path, bool json, bool verify, bool forest,
                  const std::string& out_path) {
  Phases phases;
  Input in = load_input(path, phases);
  const pmk::Graph& g = in.pg.g;

  Stopwatch sw;
  pmk::DecomposeResult res = pmk::decompose(g);
  phases.emplace_back("decomposition", sw.lap_ms());

  if (const auto* rej = std::get_if<pmk::Rejection>(&res)) {
    ordered_json payload = ordered_json::parse(pmk::rejection_json(*rej));
    if (json) {
      emit_json("decompose", input_block(path, in), payload, phases, 1);
    } else {
      std::cout << "rejected: " << payload.dump() << "\n";
      emit_timings_human(phases);
    }
    return 1;
  }

  const auto& f = std::get<pmk::Factorization>(res);
  std::string fjson = pmk::factorization_json(f);
  ordered_json payload;
  payload["factorization"] = ordered_json::parse(fjson);

  if (verify) {
    sw.lap_ms();
    std::string issue = pmk::factorization_issue(f);
    phases.emplace_back("verify", sw.lap_ms());
    payload["verified"] = issue.empty();
    if (!issue.empty()) payload["issue"] = issue;
  }

  std::string dot;
  if (forest) {
    sw.lap_ms();
    pmk::PlanarCheck pc = pmk::planar_embed(g);
    phases.emplace_back("planarity", sw.lap_ms());
    pmk::NestingForest nf = pmk::nesting_forest(g, *pc.embedding);
    phases.emplace_back("forest", sw.lap_ms());
    payload["forest"] = ordered_json::parse(pmk::forest_json(nf));
    dot = pmk::forest_dot(nf);
  }

  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) throw pmk::error("cannot write " + out_path);
    os << fjson << "\n";
  }

  if (json) {
    emit_json("decompose", input_block(path, in), payload, phases, 0);
  } else {
    std::cout << "n=" << g.order() << " m=" << g.size() << "\n";
    if (f.degenerate) std::cout << "degenerate: ";
    std::cout << f.factors.size() << " factor(s):";
    for (const auto& fac : f.factors)
      std::cout << " " << pmk::factor_kind_name(fac.kind) << "("
                << fac.g.order() << "v," << fac.g.size() << "e)";
    std::cout << "\n";
    if (verify)
      std::cout << "verified: "
                << (payload["verified"].get<bool>() ? "round trip ok"
                                                    : payload["issue"].dump())
                << "\n";
    if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
    if (forest) std::cout << dot;
    emit_timings_human(phases);
  }
  return 0;
}

int run_gen(uint64_t seed, int k, const std::string& out_base, bool json) {
  Phases phases;
  Stopwatch sw;
  pmk::Generated gen = pmk::generate_qs(seed, k);
  phases.emplace_back("generate", sw.lap_ms());

  std::string fedges = out_base + ".edges";
  std::string ffact = out_base + ".factorization.json";
  std::string fembed = out_base + ".embedding.json";
  {
    std::ofstream os(fedges);
    if (!os) throw pmk::error("cannot write " + fedges);
    pmk::write_edge_list(os, gen.graph);
  }
  {
    std::ofstream os(ffact);
    if (!os) throw pmk::error("cannot write " + ffact);
    os << pmk::factorization_json(gen.factorization) << "\n";
  }
  {
    std::ofstream os(fembed);
    if (!os) throw pmk::error("cannot write " + fembed);
    os << pmk::embedding_json(gen.embedding) << "\n";
  }
  phases.emplace_back("write", sw.lap_ms());

  ordered_json payload;
  payload["seed"] = seed;
  payload["factors"] = k;
  payload["n"] = gen.graph.order();
  payload["m"] = gen.graph.size();
  payload["degenerate"] = gen.factorization.degenerate;
  payload["files"] = {fedges, ffact, fembed};

  if (json) {
    emit_json("gen", nullptr, payload, phases, 0);
  } else {
    std::cout << "seed " << seed << ", " << k << " block(s): n="
              << gen.graph.order() << " m=" << gen.graph.size() << "\n";
    std::cout << "wrote " << fedges << ", " << ffact << ", " << fembed << "\n";
    emit_timings_human(phases);
  }
  return 0;
}

int run_hull(const std::string& path, const std::vector<std::string>& verts,
             bool json) {
  Phases phases;
  Input in = load_input(path, phases);
  const pmk::Graph& g = in.pg.g;

  std::vector<int> seed_labels;
  for (const std::string& tok : verts) {
    int label = -1;
    if (in.pg.named) {
      for (size_t i = 0; i < in.pg.names.size(); ++i)
        if (in.pg.names[i] == tok) label = static_cast<int>(i);
    } else {
      try {
        label = std::stoi(tok);
      } catch (const std::exception&) {
        label = -1;
      }
      if (label >= 0 && !g.has_vertex(label)) label = -1;
    }
    if (label < 0) {
      std::cerr << "unknown vertex '" << tok << "'\n";
      return 2;
    }
    seed_labels.push_back(label);
  }

  Stopwatch sw;
  pmk::DistanceOracle d(g);
  pmk::Graph hull = pmk::convex_hull(g, d, seed_labels);
  phases.emplace_back("hull", sw.lap_ms());

  if (json) {
    ordered_json payload;
    std::vector<std::string> vnames;
    for (int i = 0; i < hull.order(); ++i) {
      int label = hull.label_of(i);
      vnames.push_back(in.pg.named ? in.pg.names[label] : std::to_string(label));
    }
    payload["seed_vertices"] = verts;
    payload["hull_vertices"] = vnames;
    ordered_json edges = ordered_json::array();
    for (auto [u, v] : hull.edge_list()) {
      if (in.pg.named)
        edges.push_back({in.pg.names[u], in.pg.names[v]});
      else
        edges.push_back({u, v});
    }
    payload["hull_edges"] = edges;
    emit_json("hull", input_block(path, in), payload, phases, 0);
  } else {
    pmk::write_edge_list(std::cout, hull, in.pg.named ? &in.pg.names : nullptr);
    emit_timings_human(phases);
  }
  return 0;
}

int run_stats(const std::string& path, bool json) {
  Phases phases;
  Input in = load_input(path, phases);
  const pmk::Graph& g = in.pg.g;

  Stopwatch sw;
  pmk::PlanarCheck pc = pmk::planar_embed(g);
  phases.emplace_back("planarity", sw.lap_ms());

  bool median = false;
  ordered_json witness;
  if (pc.planar()) {
    pmk::MedianVerdict v = pmk::is_median_planar(g);
    median = v.median;
    if (v.witness) witness = ordered_json::parse(pmk::witness_json(*v.witness));
  }
  phases.emplace_back("median", sw.lap_ms());

  std::vector<pmk::Square> squares = pmk::enumerate_squares(g);
  phases.emplace_back("squares", sw.lap_ms());

  ordered_json face_squares;   // null unless planar
  ordered_json forest_depth;   // null unless the forest applies
  if (pc.planar()) {
    int fs = 0;
    for (const auto& w : pc.embedding->face_walk)
      if (w.size() == 4) ++fs;
    face_squares = fs;
    try {
      pmk::NestingForest nf = pmk::nesting_forest(g, *pc.embedding);
      forest_depth = nf.max_level;
    } catch (const pmk::error&) {
      // squares straddle; the nesting order is undefined here
    }
  }
  phases.emplace_back("forest", sw.lap_ms());

  pmk::DecomposeResult res = pmk::decompose(g);
  phases.emplace_back("decomposition", sw.lap_ms());

  ordered_json payload;
  payload["planar"] = pc.planar();
  payload["median"] = median;
  if (!witness.is_null()) payload["witness"] = witness;
  payload["squares"] = squares.size();
  payload["face_squares"] = face_squares;
  payload["forest_depth"] = forest_depth;
  if (const auto* f = std::get_if<pmk::Factorization>(&res)) {
    payload["factors"] = f->factors.size();
    payload["degenerate"] = f->degenerate;
  } else {
    payload["factors"] = nullptr;
  }

  if (json) {
    emit_json("stats", input_block(path, in), payload, phases, 0);
  } else {
    std::cout << "n=" << g.order() << " m=" << g.size()
              << " planar=" << (pc.planar() ? "yes" : "no")
              << " median=" << (median ? "yes" : "no") << "\n";
    std::cout << "squares=" << squares.size();
    if (!face_squares.is_null())
      std::cout << " face_squares=" << face_squares.dump();
    if (!forest_depth.is_null())
      std::cout << " forest_depth=" << forest_depth.dump();
    if (payload["factors"].is_number())
      std::cout << " factors=" << payload["factors"].dump();
    std::cout << "\n";
    emit_timings_human(phases);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar median graphs: recognition, decomposition, generation"};
  app.require_subcommand(1);

  std::string path, out_path;
  std::vector<std::string> verts;
  bool json = false, oracle = false, cube_free = false;
  bool verify = false, forest = false;
  uint64_t seed = 1;
  int factors = 1;

  auto* check = app.add_subcommand("check", "recognize a planar median graph");
  check->add_option("file", path, "edge-list file")->required();
  check->add_flag("--json", json, "machine-readable report");
  check->add_flag("--oracle", oracle, "brute-force median definition");
  check->add_flag("--cube-free", cube_free, "cube-free variant of the test");

  auto* dec = app.add_subcommand("decompose", "factor into basic pieces");
  dec->add_option("file", path, "edge-list file")->required();
  dec->add_flag("--json", json, "machine-readable report");
  dec->add_flag("--verify", verify, "recompose and re-check every factor");
  dec->add_flag("--forest", forest, "emit the square-nesting forest");
  dec->add_option("--out", out_path, "write the factorization JSON here");

  auto* gen = app.add_subcommand("gen", "generate a random composition");
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("--factors", factors, "number of blocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--out", out_path, "output base path")->required();
  gen->add_flag("--json", json, "machine-readable report");

  auto* hull = app.add_subcommand("hull", "convex hull of a vertex set");
  hull->add_option("file", path, "edge-list file")->required();
  hull->add_option("vertices", verts, "seed vertices")->required();
  hull->add_flag("--json", json, "machine-readable report");

  auto* stats = app.add_subcommand("stats", "size, squares, faces, forest depth");
  stats->add_option("file", path, "edge-list file")->required();
  stats->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(path, json, oracle, cube_free);
    if (dec->parsed()) return run_decompose(path, json, verify, forest, out_path);
    if (gen->parsed()) return run_gen(seed, factors, out_path, json);
    if (hull->parsed()) return run_hull(path, verts, json);
    if (stats->parsed()) return run_stats(path, json);
  } catch (const pmk::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pmk::not_planar_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pmk::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
