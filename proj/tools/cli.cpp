#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "afembed/ck_verify.hpp"
#include "afembed/embedding.hpp"
#include "afembed/graph_io.hpp"
#include "afembed/loops.hpp"
#include "afembed/numeric_rep.hpp"

namespace afembed::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr const char* kOutDirEnv = "AFEMBED_OUT_DIR";

struct Config {
  std::string command;
  std::string input;
  std::size_t depth = 6;
  std::string mult = "2";
  std::string format = "text";
  std::string map_path;
  std::string out_dir;
  std::string target = "E";
  double tol_alg = 1e-12;
  double tol_spec = 1e-10;

  bool structured() const { return format == "json" || format == "json-like"; }
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

Graph load_graph(const Config& cfg) {
  const std::string text = read_file(cfg.input);
  try {
    return parse_graph(text);
  } catch (const ParseError& e) {
    throw InputError(cfg.input + ":" + e.what());
  }
}

std::string sci(double x) {
  std::ostringstream ss;
  ss << std::setprecision(3) << std::scientific << x;
  return ss.str();
}

ojson edge_list(const std::vector<EdgeId>& edges) {
  ojson a = ojson::array();
  for (const EdgeId& e : edges) a.push_back(e.str());
  return a;
}

ojson vertex_list(const std::vector<VertexId>& vs) {
  ojson a = ojson::array();
  for (const VertexId& v : vs) a.push_back(v.str());
  return a;
}

void emit(std::ostream& out, const ojson& record) { out << record.dump() << '\n'; }

void report_witness(const Config& cfg, const Graph& g, const EntranceWitness& w,
                    std::ostream& out) {
  const InfinitenessStatement st = witness_infinite(g, w);
  if (cfg.structured()) {
    ojson r;
    r["record"] = "witness";
    r["entry_vertex"] = w.entry_vertex.str();
    r["entry_edge"] = w.entry_edge.str();
    r["loop"] = edge_list(w.loop.edges());
    r["alpha"] = edge_list(st.alpha.edges());
    r["beta"] = edge_list(st.beta.edges());
    r["isometry"] = st.isometry;
    r["chain"] = st.chain;
    emit(out, r);
    return;
  }
  out << "entrance: vertex " << w.entry_vertex.str() << ", edge " << w.entry_edge.str() << '\n'
      << "loop: " << w.loop.to_string() << '\n'
      << "alpha: " << st.alpha.to_string() << '\n'
      << "beta: " << st.beta.to_string() << '\n'
      << "isometry: " << st.isometry << '\n'
      << "chain: " << st.chain << '\n';
}

// ---------------------------------------------------------------------------

int cmd_classify(const Config& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const Classification c = classify(g);
  if (cfg.structured()) {
    ojson r;
    r["record"] = "classification";
    r["verdict"] = to_string(c.verdict);
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    r["loops"] = ojson::array();
    for (const SimpleLoop& l : c.loops) r["loops"].push_back(edge_list(l.edges()));
    emit(out, r);
  } else {
    out << "verdict: " << to_string(c.verdict) << '\n';
    if (c.verdict == Verdict::AF) out << "no loops\n";
    if (c.verdict == Verdict::AFEmbeddableNotAF) {
      out << "loops: " << c.loops.size() << '\n';
      for (std::size_t i = 0; i < c.loops.size(); ++i)
        out << "loop " << i + 1 << ": " << c.loops[i].to_string() << '\n';
    }
  }
  if (c.witness) {
    report_witness(cfg, g, *c.witness, out);
    return kNotFinite;
  }
  return kOk;
}

int cmd_loops(const Config& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const auto cyc = cycle_vertices(g);
  const auto ent = entrance_violation(g);
  if (cfg.structured()) {
    ojson r;
    r["record"] = "cycle_vertices";
    r["vertices"] = vertex_list(cyc);
    emit(out, r);
  } else {
    out << "cycle vertices:";
    for (const VertexId& v : cyc) out << ' ' << v.str();
    out << (cyc.empty() ? " none\n" : "\n");
  }
  if (ent) {
    report_witness(cfg, g, *find_entrance_witness(g), out);
    return kNotFinite;
  }
  const auto loops = disjoint_simple_loops(g);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (cfg.structured()) {
      ojson r;
      r["record"] = "loop";
      r["edges"] = edge_list(loops[i].edges());
      r["vertices"] = vertex_list(loops[i].vertices());
      emit(out, r);
    } else {
      out << "loop " << i + 1 << ": edges " << loops[i].to_string() << "; vertices";
      for (const VertexId& v : loops[i].vertices()) out << ' ' << v.str();
      out << '\n';
    }
  }
  return kOk;
}

fs::path output_dir(const Config& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

int cmd_embed(const Config& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  Embedding emb;
  try {
    emb = embed(g, MultiplicitySeq::parse(cfg.mult));
  } catch (const EntranceError& e) {
    report_witness(cfg, g, e.witness(), out);
    return kNotFinite;
  }
  const Graph f = materialize(emb.spec, cfg.depth);
  const fs::path dir = output_dir(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());

  const std::string stem = "F" + std::to_string(cfg.depth);
  const std::vector<std::pair<fs::path, std::string>> files{
      {dir / "spec.json", spec_to_json(emb.spec)},
      {dir / "map.txt", map_to_table(emb.map)},
      {dir / (stem + ".graph"), serialize_graph(f)},
      {dir / (stem + ".dot"), export_dot(f, stem)},
  };
  for (const auto& [path, text] : files) write_file(path, text);

  if (cfg.format == "dot") {
    out << export_dot(f, stem);
    return kOk;
  }
  if (cfg.structured()) {
    for (const LoopReplacement& r : emb.spec.replacements) {
      ojson row;
      row["record"] = "replacement";
      row["loop"] = edge_list(r.loop.edges());
      row["namespace"] = r.tail.ns;
      row["sink"] = r.tail.sink().str();
      row["mult"] = r.tail.mult.to_string();
      emit(out, row);
    }
    ojson fr;
    fr["record"] = "materialized";
    fr["depth"] = cfg.depth;
    fr["vertices"] = f.vertex_count();
    fr["edges"] = f.edge_count();
    emit(out, fr);
    for (const auto& [path, text] : files) {
      ojson w;
      w["record"] = "file";
      w["path"] = path.string();
      emit(out, w);
    }
    return kOk;
  }
  out << "replacements: " << emb.spec.replacements.size() << '\n';
  for (const LoopReplacement& r : emb.spec.replacements)
    out << "loop " << r.loop.to_string() << " -> tail " << r.tail.ns << " (sink "
        << r.tail.sink().str() << ", mult " << r.tail.mult.to_string() << ")\n";
  out << "F_" << cfg.depth << ": " << f.vertex_count() << " vertices, " << f.edge_count()
      << " edges\n";
  for (const auto& [path, text] : files) out << "wrote " << path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyOutcome {
  std::vector<std::string> failures;
};

void report_relations(const Config& cfg, const std::string& section, const RelationReport& rep,
                      VerifyOutcome& outcome, std::ostream& out) {
  for (const RelationEntry& e : rep.entries)
    if (e.status == RelationStatus::Failed) outcome.failures.push_back(e.id);
  if (cfg.structured()) {
    for (const RelationEntry& e : rep.entries) {
      ojson r;
      r["record"] = "relation";
      r["section"] = section;
      r["id"] = e.id;
      r["status"] = to_string(e.status);
      if (e.status == RelationStatus::Failed) r["difference"] = e.difference.to_string();
      if (!e.note.empty()) r["note"] = e.note;
      emit(out, r);
    }
    return;
  }
  if (cfg.format == "csv") {
    for (const RelationEntry& e : rep.entries)
      out << section << ',' << e.id << ',' << to_string(e.status) << ','
          << (e.status == RelationStatus::Failed ? e.difference.to_string() : "") << '\n';
    return;
  }
  out << section << ": " << rep.count(RelationStatus::Proved) << " proved, "
      << rep.count(RelationStatus::Failed) << " failed";
  if (auto n = rep.count(RelationStatus::Delegated)) out << ", " << n << " delegated";
  if (auto n = rep.count(RelationStatus::Recorded)) out << ", " << n << " recorded";
  out << '\n';
  for (const RelationEntry& e : rep.entries) {
    if (e.status == RelationStatus::Failed)
      out << "  failed " << e.id << ": difference " << e.difference.to_string() << '\n';
    if (e.status == RelationStatus::Delegated) out << "  delegated " << e.id << ": " << e.note << '\n';
  }
}

void report_numeric(const Config& cfg, const TruncatedRep& rep, const ResidualReport& res,
                    VerifyOutcome& outcome, std::ostream& out) {
  std::size_t over = 0;
  for (const ResidualRow& row : res.relations)
    if (!(row.residual <= cfg.tol_alg)) {
      outcome.failures.push_back(row.name);
      ++over;
    }
  if (cfg.structured()) {
    for (const ResidualRow& row : res.relations) {
      ojson r;
      r["record"] = "residual";
      r["name"] = row.name;
      r["residual"] = row.residual;
      r["ok"] = row.residual <= cfg.tol_alg;
      emit(out, r);
    }
    for (const ResidualRow& row : res.boundary_defects) {
      ojson r;
      r["record"] = "boundary_defect";
      r["name"] = row.name;
      r["defect"] = row.residual;
      emit(out, r);
    }
    return;
  }
  if (cfg.format == "csv") {
    for (const ResidualRow& row : res.relations)
      out << "residual," << row.name << ',' << (row.residual <= cfg.tol_alg ? "ok" : "failed")
          << ',' << row.residual << '\n';
    for (const ResidualRow& row : res.boundary_defects)
      out << "boundary," << row.name << ",recorded," << row.residual << '\n';
    return;
  }
  out << "numeric: depth " << rep.depth() << ", dimension " << rep.dimension() << ", "
      << res.relations.size() << " relation instances, max interior residual "
      << sci(res.max_residual()) << " (tolerance " << sci(cfg.tol_alg) << ")\n";
  if (over)
    for (const ResidualRow& row : res.relations)
      if (!(row.residual <= cfg.tol_alg))
        out << "  failed " << row.name << ": residual " << sci(row.residual) << '\n';
  double boundary = 0;
  for (const ResidualRow& row : res.boundary_defects) boundary = std::max(boundary, row.residual);
  out << "boundary defect of the summation relation on vertex vectors: " << boundary << " ("
      << res.boundary_defects.size() << " vertices)\n";
}

void report_spectrum(const Config& cfg, const SimpleLoop& loop, const SpectrumReport& s,
                     VerifyOutcome& outcome, std::ostream& out) {
  const bool modulus_ok = s.max_modulus_defect <= cfg.tol_spec;
  const bool net_ok = s.hausdorff_to_circle <= s.net_bound + cfg.tol_spec;
  const bool closed_ok = s.closed_form_deviation <= cfg.tol_spec;
  const std::string name = "spectrum " + loop.to_string();
  if (!(modulus_ok && net_ok && closed_ok)) outcome.failures.push_back(name);
  if (cfg.structured()) {
    ojson r;
    r["record"] = "spectrum";
    r["loop"] = edge_list(loop.edges());
    r["nonzero"] = s.eigenvalues.size();
    r["zero"] = s.zero_count;
    r["max_modulus_defect"] = s.max_modulus_defect;
    r["hausdorff"] = s.hausdorff_to_circle;
    r["bound"] = s.net_bound;
    r["closed_form_deviation"] = s.closed_form_deviation;
    r["ok"] = modulus_ok && net_ok && closed_ok;
    ojson ev = ojson::array();
    for (const Complex& z : s.eigenvalues) ev.push_back({z.real(), z.imag()});
    r["eigenvalues"] = std::move(ev);
    emit(out, r);
    return;
  }
  if (cfg.format == "csv") {
    out << "spectrum," << loop.to_string() << ',' << (modulus_ok && net_ok && closed_ok ? "ok" : "failed")
        << ',' << s.hausdorff_to_circle << '\n';
    for (const Complex& z : s.eigenvalues)
      out << "eigenvalue," << loop.to_string() << ',' << z.real() << ',' << z.imag() << '\n';
    return;
  }
  out << name << ": " << s.eigenvalues.size() << " nonzero eigenvalues, max ||l|-1| "
      << sci(s.max_modulus_defect) << ", distance to circle <= " << sci(s.hausdorff_to_circle)
      << " (bound " << sci(s.net_bound) << "), closed-form deviation "
      << sci(s.closed_form_deviation) << (modulus_ok && net_ok && closed_ok ? "" : "  FAILED")
      << '\n';
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  if (auto w = find_entrance_witness(g)) {
    report_witness(cfg, g, *w, out);
    VerifyOutcome ignored;
    report_relations(cfg, "witness", verify_witness(*w, CKContext(g)), ignored, out);
    return kNotFinite;
  }
  const Embedding emb = embed(g, MultiplicitySeq::parse(cfg.mult));
  const CKContext ctx = make_context(emb.spec, cfg.depth);
  GeneratorMap map = emb.map;
  if (!cfg.map_path.empty()) {
    try {
      map = map_from_table(read_file(cfg.map_path), g, ctx);
    } catch (const Error& e) {
      throw InputError(cfg.map_path + ":" + e.what());
    }
  }

  VerifyOutcome outcome;
  report_relations(cfg, "symbolic", verify_ck_family(map, ctx), outcome, out);
  report_relations(cfg, "loop identities", verify_loop_identities(emb.spec, map, ctx), outcome,
                   out);
  if (cfg.depth == 0) {
    if (!cfg.structured()) out << "numeric: skipped at depth 0\n";
  } else {
    const TruncatedRep rep = build_rep(emb.spec, cfg.depth);
    report_numeric(cfg, rep, relation_residuals(rep, map), outcome, out);
    for (const LoopReplacement& r : emb.spec.replacements)
      report_spectrum(cfg, r.loop, loop_spectrum(rep, emb.spec, r.loop, map), outcome, out);
  }

  const bool ok = outcome.failures.empty();
  if (cfg.structured()) {
    ojson r;
    r["record"] = "summary";
    r["ok"] = ok;
    r["failures"] = outcome.failures;
    emit(out, r);
  } else if (cfg.format == "csv") {
    out << "summary,result," << (ok ? "ok" : "failed") << "," << outcome.failures.size() << '\n';
  } else if (ok) {
    out << "result: ok\n";
  } else {
    out << "result: FAILED (" << outcome.failures.size() << "):";
    for (const std::string& f : outcome.failures) out << ' ' << '[' << f << ']';
    out << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_export(const Config& cfg, std::ostream& out) {
  Graph g = load_graph(cfg);
  std::string name = "E";
  if (cfg.target == "F") {
    try {
      g = materialize(embed(g, MultiplicitySeq::parse(cfg.mult)).spec, cfg.depth);
      name = "F" + std::to_string(cfg.depth);
    } catch (const EntranceError& e) {
      report_witness(cfg, load_graph(cfg), e.witness(), out);
      return kNotFinite;
    }
  }
  if (cfg.format == "dot")
    out << export_dot(g, name);
  else if (cfg.structured())
    out << serialize_graph_json(g);
  else
    out << serialize_graph(g);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finiteness classification and AF-embedding of graph C*-algebras", "afembed"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "graph document (text or JSON)")->required();
    sub->add_option("--depth,-d", cfg.depth, "truncation depth")->capture_default_str();
    sub->add_option("--mult", cfg.mult, "multiplicities as prefix;tail, e.g. 3,1;2")
        ->capture_default_str();
    sub->add_option("--format,-f", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json-like", "json", "dot", "csv"}))
        ->capture_default_str();
    sub->add_option("--tol-alg", cfg.tol_alg, "tolerance for relation residuals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol-spec", cfg.tol_spec, "tolerance for spectral checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto* classify_cmd = app.add_subcommand("classify", "classify the graph algebra");
  auto* loops_cmd = app.add_subcommand("loops", "list cycle vertices and disjoint loops");
  auto* embed_cmd = app.add_subcommand("embed", "construct F and the generator map");
  auto* verify_cmd = app.add_subcommand("verify", "check the embedding symbolically and numerically");
  auto* export_cmd = app.add_subcommand("export", "write the graph or F_d");
  for (auto* sub : {classify_cmd, loops_cmd, embed_cmd, verify_cmd, export_cmd}) add_common(sub);
  embed_cmd->add_option("--out-dir,-o", cfg.out_dir,
                        std::string("artifact directory (default $") + kOutDirEnv + " or .)");
  verify_cmd->add_option("--map", cfg.map_path, "generator map table to check instead of the constructed one");
  export_cmd->add_option("--target", cfg.target, "E for the input, F for F_d")
      ->check(CLI::IsMember({"E", "F"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (loops_cmd->parsed()) return cmd_loops(cfg, out);
    if (embed_cmd->parsed()) return cmd_embed(cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out);
    if (export_cmd->parsed()) return cmd_export(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace afembed::cli
