#include "nse/cli.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nse/certificate_io.hpp"
#include "nse/gmatrix.hpp"
#include "nse/graph.hpp"
#include "nse/line1d.hpp"
#include "nse/plane2d.hpp"

namespace nse {

namespace {

std::string slurp(const std::string& input) {
  if (input == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(input, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open input file: " + input);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& input) {
  const std::string text = slurp(input);
  return parse_edge_list(text);
}

std::string with_svg_extension(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  const std::size_t dot = path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return path.substr(0, dot) + ".svg";
  return path + ".svg";
}

bool write_file(const std::string& path, const std::string& content,
                std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "cannot open output file: " << path << "\n";
    return false;
  }
  f << content;
  return bool(f);
}

// Writes the JSON and (when available and requested) SVG artifacts.
bool emit_artifacts(const RunConfig& cfg, const Certificate& cert,
                    std::ostream& out, std::ostream& err) {
  const std::string json = certificate_to_json(cert);
  const bool want_json =
      cfg.format == OutputFormat::Json || cfg.format == OutputFormat::Both;
  const bool want_svg =
      cfg.format == OutputFormat::Svg || cfg.format == OutputFormat::Both;
  std::string svg;
  if (want_svg) {
    if (cert.embedding.size() > 0) {
      svg = certificate_to_svg(cert);
    } else {
      err << "matrix certificate has no drawing; emitting JSON only\n";
    }
  }
  if (cfg.output.empty()) {
    if (want_json || svg.empty()) out << json;
    if (!svg.empty()) out << svg;
    return true;
  }
  if (want_json || svg.empty()) {
    if (!write_file(cfg.output, json, err)) return false;
  }
  if (!svg.empty()) {
    const std::string svg_path = cfg.format == OutputFormat::Svg
                                     ? cfg.output
                                     : with_svg_extension(cfg.output);
    if (!write_file(svg_path, svg, err)) return false;
  }
  return true;
}

int kind_exit_code(const Certificate& cert) {
  return cert.kind == CertificateKind::HighCorankMatrix ? 2 : 0;
}

// First articulation node (1-based) of a connected non-2-connected graph.
int first_cut_node(const Graph& g) {
  std::vector<int> seen(g.node_count(), 0);
  for (const auto& block : blocks(g))
    for (int v : block) ++seen[v];
  for (int v = 0; v < g.node_count(); ++v)
    if (seen[v] >= 2) return v + 1;
  return -1;
}

struct Tally {
  long graphs = 0;
  long embeddings = 0;
  long matrices = 0;
  long disagreements = 0;
  long verify_failures = 0;
  long errors = 0;
};

// Runs `job` over 0..count-1 on a small worker pool; workers accumulate
// into their own tally, merged afterwards (order-independent counts).
Tally parallel_tally(int count,
                     const std::function<void(int, Tally&)>& job) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      std::max(1, std::min<int>(count, hw ? static_cast<int>(hw) : 4));
  std::vector<Tally> parts(workers);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        job(i, parts[w]);
    });
  }
  for (auto& t : pool) t.join();
  Tally total;
  for (const Tally& p : parts) {
    total.graphs += p.graphs;
    total.embeddings += p.embeddings;
    total.matrices += p.matrices;
    total.disagreements += p.disagreements;
    total.verify_failures += p.verify_failures;
    total.errors += p.errors;
  }
  return total;
}

}  // namespace

int cmd_embed1d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Graph g;
  try {
    g = load_graph(cfg.input);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  if (g.node_count() == 0 || !is_connected(g)) {
    err << "graph is not connected\n";
    return 1;
  }
  LineOptions opts;
  opts.tol_scale = cfg.tol;
  opts.seed = cfg.seed;
  Certificate cert;
  try {
    cert = embed_line(g, opts);
  } catch (const std::exception& e) {
    err << "embedding failed: " << e.what() << "\n";
    return 1;
  }
  if (!emit_artifacts(cfg, cert, out, err)) return 1;
  err << certificate_kind_name(cert.kind) << " (corank " << cert.eigen.corank
      << ")\n";
  return kind_exit_code(cert);
}

int cmd_embed2d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Graph g;
  try {
    g = load_graph(cfg.input);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  if (g.node_count() < 3) {
    err << "graph must have at least 3 nodes\n";
    return 1;
  }
  if (!is_connected(g)) {
    err << "graph is disconnected\n";
    return 1;
  }
  if (!is_biconnected(g)) {
    err << "graph is not 2-connected: cut node " << first_cut_node(g) << "\n";
    return 1;
  }
  PlaneOptions opts;
  opts.tol_scale = cfg.tol;
  opts.seed = cfg.seed;
  Certificate cert;
  try {
    cert = embed_plane(g, opts);
  } catch (const std::exception& e) {
    err << "embedding failed: " << e.what() << "\n";
    return 1;
  }
  if (!emit_artifacts(cfg, cert, out, err)) return 1;
  err << certificate_kind_name(cert.kind) << " (corank " << cert.eigen.corank
      << ")\n";
  return kind_exit_code(cert);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ParsedCertificate parsed;
  try {
    parsed = certificate_from_json(slurp(cfg.input));
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  const Certificate& cert = parsed.cert;
  const Graph& g = cert.matrix.graph;

  VerificationReport rep = verify_certificate(cert, g, cfg.tol);
  // The sparse form cannot carry off-support entries; any deviation of the
  // parsed dense matrix is surfaced as its own failing check.
  const double support_tol =
      spectral_tolerance(cert.matrix.to_dense(), cfg.tol);
  VerificationCheck support{"matrix support", parsed.off_support <= support_tol,
                            parsed.off_support, ""};
  rep.checks.insert(rep.checks.begin(), support);
  rep.ok = rep.ok && support.pass;

  for (const VerificationCheck& c : rep.checks) {
    out << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name;
    if (c.residual != 0.0) out << " (residual " << c.residual << ")";
    if (!c.detail.empty()) out << " — " << c.detail;
    out << "\n";
  }
  out << (rep.ok ? "certificate valid" : "certificate INVALID") << "\n";
  return rep.ok ? 0 : 3;
}

int cmd_crosscheck(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.cap < 1 || cfg.cap > 9) {
    err << "size cap must be between 1 and 9\n";
    return 1;
  }
  long bad = 0;

  if (cfg.dim == 0 || cfg.dim == 1) {
    for (int n = 1; n <= cfg.cap; ++n) {
      const std::vector<Graph> graphs = connected_graphs(n);
      Tally t = parallel_tally(
          static_cast<int>(graphs.size()), [&](int i, Tally& tl) {
            const Graph& g = graphs[i];
            ++tl.graphs;
            LineOptions opts;
            opts.tol_scale = cfg.tol;
            opts.seed = cfg.seed;
            try {
              Certificate cert = embed_line(g, opts);
              const bool embedded = cert.kind == CertificateKind::PathEmbedding;
              (embedded ? tl.embeddings : tl.matrices) += 1;
              if (embedded != path_order(g).has_value()) ++tl.disagreements;
              if (!verify_certificate(cert, g, cfg.tol).ok)
                ++tl.verify_failures;
            } catch (const std::exception&) {
              ++tl.errors;
            }
          });
      out << "1-D n=" << n << " graphs=" << t.graphs << " paths="
          << t.embeddings << " matrices=" << t.matrices << " disagree="
          << t.disagreements << " vfail=" << t.verify_failures << " errors="
          << t.errors << "\n";
      bad += t.disagreements + t.verify_failures + t.errors;
    }
  }

  if (cfg.dim == 0 || cfg.dim == 2) {
    for (int n = 3; n <= cfg.cap; ++n) {
      const std::vector<Graph> graphs = biconnected_graphs(n);
      Tally t = parallel_tally(
          static_cast<int>(graphs.size()), [&](int i, Tally& tl) {
            const Graph& g = graphs[i];
            ++tl.graphs;
            PlaneOptions opts;
            opts.tol_scale = cfg.tol;
            opts.seed = cfg.seed;
            try {
              Certificate cert = embed_plane(g, opts);
              const bool embedded =
                  cert.kind == CertificateKind::OuterplanarEmbedding;
              (embedded ? tl.embeddings : tl.matrices) += 1;
              if (embedded != is_outerplanar(g)) ++tl.disagreements;
              if (!verify_certificate(cert, g, cfg.tol).ok)
                ++tl.verify_failures;
            } catch (const std::exception&) {
              ++tl.errors;
            }
          });
      out << "2-D n=" << n << " graphs=" << t.graphs << " outerplanar="
          << t.embeddings << " matrices=" << t.matrices << " disagree="
          << t.disagreements << " vfail=" << t.verify_failures << " errors="
          << t.errors << "\n";
      bad += t.disagreements + t.verify_failures + t.errors;
    }
  }

  out << (bad == 0 ? "all drivers agree with the oracles"
                   : "disagreements detected")
      << "\n";
  return bad == 0 ? 0 : 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"line and circle embedding certificates for graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  const std::map<std::string, OutputFormat> format_map{
      {"json", OutputFormat::Json},
      {"svg", OutputFormat::Svg},
      {"both", OutputFormat::Both}};

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("input", cfg.input,
                      "edge-list or certificate path ('-' for stdin)")
          ->required();
    sub->add_option("--tol", cfg.tol, "tolerance scale")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed (0 = deterministic)");
    sub->add_option("--format", format, "artifact format")
        ->check(CLI::IsMember({"json", "svg", "both"}));
    sub->add_option("--out", cfg.output, "artifact output path");
  };

  CLI::App* e1 = app.add_subcommand("embed1d",
                                    "line embedding or matrix witness");
  add_common(e1, true);
  CLI::App* e2 = app.add_subcommand("embed2d",
                                    "circle embedding or matrix witness");
  add_common(e2, true);
  CLI::App* ve = app.add_subcommand("verify", "re-check a certificate");
  add_common(ve, true);
  CLI::App* cc = app.add_subcommand("crosscheck",
                                    "exhaustive driver-vs-oracle comparison");
  add_common(cc, false);
  cc->add_option("--cap", cfg.cap, "largest node count to enumerate");
  cc->add_option("--dim", cfg.dim, "restrict to one driver (1 or 2)")
      ->check(CLI::IsMember({0, 1, 2}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.format = format_map.at(format);

  if (e1->parsed()) return cmd_embed1d(cfg, out, err);
  if (e2->parsed()) return cmd_embed2d(cfg, out, err);
  if (ve->parsed()) return cmd_verify(cfg, out, err);
  return cmd_crosscheck(cfg, out, err);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace nse
