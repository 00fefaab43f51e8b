#include "stonework/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "stonework/audit.hpp"
#include "stonework/fermion.hpp"

namespace stonework {

namespace {

void append(Report& rep, std::vector<Check> cs) {
  for (Check& c : cs) rep.add(std::move(c));
}

bool want(const RunConfig& cfg, const char* suite) {
  return cfg.suites.empty() ||
         std::find(cfg.suites.begin(), cfg.suites.end(), suite) != cfg.suites.end();
}

/// Suite crashes become fail records; config errors are thrown before any
/// suite starts.
template <class F>
void guarded(Report& rep, const std::string& name, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rep.add(Check::fail(name + "-crash", "suite aborted by an exception", e.what()));
  }
}

std::shared_ptr<const FeasibleSpace> make_space_checked(const std::string& name) {
  try {
    return make_space(name);
  } catch (const std::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

std::string render_lines(const Report& rep) {
  std::ostringstream os;
  int pass = 0, fail = 0, open = 0;
  for (const Check& c : rep.checks) {
    const char* tag = "open";
    if (c.status == "pass") {
      tag = "pass";
      ++pass;
    } else if (c.status == "fail") {
      tag = "FAIL";
      ++fail;
    } else {
      ++open;
    }
    os << "[" << tag << "] " << c.name << ": " << c.law << " (" << c.evidence
       << ")\n";
  }
  os << "checks " << rep.checks.size() << ": " << pass << " passed, " << fail
     << " failed, " << open << " open\n";
  return os.str();
}

RunResult finish(Report rep, std::string prefix = "") {
  RunResult r;
  r.rendered = rep.to_json();
  r.printout = prefix + render_lines(rep);
  r.exit_code = rep.all_passed() ? 0 : 1;
  r.report = std::move(rep);
  return r;
}

void validate(const RunConfig& cfg) {
  static const std::set<std::string> commands = {
      "verify", "reparam", "zaction", "groupoid", "tower", "space-audit"};
  if (!commands.count(cfg.command))
    throw std::invalid_argument("unknown command: " + cfg.command);
  if (cfg.mode != "exact" && cfg.mode != "float")
    throw std::invalid_argument("mode must be exact or float");
  auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(cfg.depth, 1, 10))
    throw std::invalid_argument("depth out of range [1,10]");
  if (cfg.command == "reparam" && !in(cfg.depth, 1, 5))
    throw std::invalid_argument("reparam depth out of range [1,5]");
  if (!in(cfg.n, 1, 8)) throw std::invalid_argument("n out of range [1,8]");
  if ((cfg.command == "verify" || cfg.command == "zaction") && !in(cfg.n, 1, 5))
    throw std::invalid_argument("n out of range [1,5] for tower construction");
  if (cfg.command == "groupoid" && !in(cfg.n, 1, 4))
    throw std::invalid_argument("n out of range [1,4] for the window algebra");
  if (!in(cfg.max_n, 1, 6))
    throw std::invalid_argument("max-n out of range [1,6]");

  static const std::map<std::string, std::set<std::string>> allowed = {
      {"verify",
       {"core", "space", "images", "ergodicity", "tower", "zaction", "groupoid",
        "normalizer", "fermion", "saturation"}},
      {"groupoid", {"laws", "normalizer"}},
      {"tower", {"afd"}},
      {"space-audit", {"space", "images", "ergodicity"}},
      {"reparam", {}},
      {"zaction", {}}};
  const std::set<std::string>& ok = allowed.at(cfg.command);
  for (const std::string& s : cfg.suites)
    if (!ok.count(s))
      throw std::invalid_argument("unknown suite for " + cfg.command + ": " + s);
}

std::string word_bits(uint32_t w, int n) {
  std::string s(static_cast<size_t>(n), '0');
  for (int j = 1; j <= n; ++j)
    if ((w >> (j - 1)) & 1u) s[static_cast<size_t>(j) - 1] = '1';
  return s;
}

RunResult run_verify(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  auto space = make_space_checked(cfg.space);
  Rng root(cfg.seed);

  if (want(cfg, "core"))
    guarded(rep, "core", [&] { append(rep, audit_core(cfg.depth)); });
  if (want(cfg, "space"))
    guarded(rep, "space", [&] {
      append(rep, audit_space(*space, 20, 10000, 100, root.fork("space")));
    });
  if (want(cfg, "images"))
    guarded(rep, "images", [&] {
      append(rep, audit_images(*space, 2000, root.fork("images")).checks);
    });
  if (want(cfg, "ergodicity"))
    guarded(rep, "ergodicity", [&] {
      append(rep, audit_ergodicity(*space, 40, cfg.depth, root.fork("ergodicity")));
    });

  InvolutionTower tw;
  bool have_tower = false;
  if (want(cfg, "tower") || want(cfg, "zaction"))
    guarded(rep, "tower-build", [&] {
      tw = build_tower(space, cfg.n, default_neighborhoods(cfg.n),
                       std::max(cfg.depth, cfg.n + 3));
      have_tower = true;
    });
  if (want(cfg, "tower") && have_tower)
    guarded(rep, "tower", [&] { append(rep, audit_tower(tw)); });
  if (want(cfg, "zaction") && have_tower)
    guarded(rep, "zaction", [&] { append(rep, audit_zaction(build_zaction(tw))); });

  if (want(cfg, "groupoid"))
    guarded(rep, "groupoid", [&] {
      // Rational arithmetic cost grows steeply with the window, so the sweep
      // caps the exact run one stage lower; the groupoid command goes deeper.
      if (cfg.mode == "exact")
        append(rep,
               audit_groupoid_laws<GaussRat>(OrbitWindow(std::min(cfg.n, 3)),
                                             50, 0.0,
                                             root.fork("groupoid-laws")));
      else
        append(rep, audit_groupoid_laws<std::complex<double>>(
                        OrbitWindow(std::min(cfg.n, 4)), 50, 1e-9,
                        root.fork("groupoid-laws")));
    });
  if (want(cfg, "normalizer"))
    guarded(rep, "normalizer", [&] {
      append(rep, audit_normalizer(OrbitWindow(std::min(cfg.n, 4)), 50, 1e-9,
                                   root.fork("normalizer")));
    });
  if (want(cfg, "fermion"))
    guarded(rep, "fermion", [&] { append(rep, afd_audit(cfg.max_n, cfg.seed)); });
  if (want(cfg, "saturation"))
    guarded(rep, "saturation", [&] { append(rep, audit_saturation(space, 3, 5)); });
  return finish(std::move(rep));
}

RunResult run_space_audit(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  auto space = make_space_checked(cfg.space);
  Rng root(cfg.seed);
  if (want(cfg, "space"))
    guarded(rep, "space", [&] {
      append(rep, audit_space(*space, 50, 10000, 200, root.fork("space")));
    });
  if (want(cfg, "images"))
    guarded(rep, "images", [&] {
      append(rep, audit_images(*space, 5000, root.fork("images")).checks);
    });
  if (want(cfg, "ergodicity"))
    guarded(rep, "ergodicity", [&] {
      append(rep, audit_ergodicity(*space, 40, cfg.depth, root.fork("ergodicity")));
    });
  return finish(std::move(rep));
}

RunResult run_zaction(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  auto space = make_space_checked(cfg.space);
  InvolutionTower tw = build_tower(space, cfg.n, default_neighborhoods(cfg.n),
                                   std::max(cfg.depth, cfg.n + 3));
  ZActionMap z = build_zaction(tw);
  guarded(rep, "zaction", [&] { append(rep, audit_zaction(z)); });

  std::ostringstream orbit;
  orbit << "orbit:";
  FinSet x;
  orbit << " " << x.str();
  for (uint32_t j = 1; j < (1u << cfg.n); ++j) {
    if (!z.forward_defined(x)) break;
    x = z.forward(x);
    orbit << " " << x.str();
  }
  orbit << "\n";
  return finish(std::move(rep), orbit.str());
}

RunResult run_groupoid(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  Rng root(cfg.seed);
  OrbitWindow win(cfg.n);
  if (want(cfg, "laws"))
    guarded(rep, "laws", [&] {
      if (cfg.mode == "exact")
        append(rep, audit_groupoid_laws<GaussRat>(win, 50, 0.0,
                                                  root.fork("groupoid-laws")));
      else
        append(rep, audit_groupoid_laws<std::complex<double>>(
                        win, 50, 1e-9, root.fork("groupoid-laws")));
    });
  if (want(cfg, "normalizer"))
    guarded(rep, "normalizer", [&] {
      append(rep, audit_normalizer(win, 100, 1e-9, root.fork("normalizer")));
    });
  return finish(std::move(rep));
}

RunResult run_tower(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  guarded(rep, "afd", [&] { append(rep, afd_audit(cfg.max_n, cfg.seed)); });

  bool ind_ok = true;
  for (int n = 1; n <= cfg.max_n; ++n)
    if (!independence_check(stage(n)).all_rank_one) ind_ok = false;
  rep.add(Check::of(ind_ok, "stage-independence",
                    "all signed diagonal products are rank-one projections",
                    "stages 1.." + std::to_string(cfg.max_n)));

  std::string dims = "dimensions (";
  bool dims_ok = true;
  for (int n = 1; n <= std::min(4, cfg.max_n); ++n) {
    SpanReport sr = full_matrix_check(stage(n));
    if (!sr.full_matrix_algebra) dims_ok = false;
    dims += (n > 1 ? "," : "") + std::to_string(sr.dimension);
  }
  dims += ")";
  rep.add(Check::of(dims_ok, "stage-dimensions",
                    "generated span dimensions reach the full matrix algebra",
                    dims));

  RunResult r = finish(std::move(rep), dims + "\n");
  if (cfg.dump) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.rendered);
    nlohmann::ordered_json mats = nlohmann::ordered_json::array();
    for (int n = 1; n <= cfg.max_n; ++n) {
      TowerStage st = stage(n);
      for (int k = 1; k <= n; ++k) {
        nlohmann::ordered_json e;
        e["stage"] = n;
        e["name"] = "e" + std::to_string(k);
        e["entries"] = st.e_dense(k);
        mats.push_back(e);
        nlohmann::ordered_json u;
        u["stage"] = n;
        u["name"] = "u" + std::to_string(k);
        u["entries"] = st.u_dense(k);
        mats.push_back(u);
      }
    }
    j["matrices"] = mats;
    r.rendered = j.dump(2) + "\n";
  }
  return r;
}

RunResult run_reparam(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  auto space = make_space_checked(cfg.space);
  int n = cfg.depth;
  std::vector<ClopenPtr> nbhd = default_neighborhoods(n);
  InvolutionTower tw = build_tower(space, n, nbhd, std::max(n + 3, 8));
  guarded(rep, "tower", [&] { append(rep, audit_tower(tw)); });
  guarded(rep, "zaction", [&] { append(rep, audit_zaction(build_zaction(tw))); });

  // Force every map across the window so the piece tables are complete for
  // window points before serialization.
  for (int j = 1; j <= n; ++j)
    for (uint32_t x = 0; x < (1u << n); ++x)
      tw.map(j).apply(FinSet::from_mask(x), tw.scan_cap());

  nlohmann::ordered_json base = nlohmann::ordered_json::parse(rep.to_json());
  nlohmann::ordered_json j;
  j["schema"] = "stonework/tree/1";
  j["command"] = cfg.command;
  j["config"] = base["config"];
  nlohmann::ordered_json nb = nlohmann::ordered_json::array();
  for (const ClopenPtr& d : nbhd) nb.push_back(serialize(d));
  j["neighborhoods"] = nb;
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (int p = 1; p <= n; ++p) {
    nlohmann::ordered_json lvl;
    lvl["level"] = p;
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (uint32_t w = 0; w < (1u << p); ++w) nodes.push_back(serialize(tw.node(p, w)));
    lvl["nodes"] = nodes;
    levels.push_back(lvl);
  }
  j["levels"] = levels;
  nlohmann::ordered_json maps = nlohmann::ordered_json::array();
  for (int k = 1; k <= n; ++k) {
    nlohmann::ordered_json mj;
    mj["index"] = k;
    mj["complete"] = tw.map(k).exhausted();
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (const Piece& pc : tw.map(k).forced_pieces()) {
      nlohmann::ordered_json pj;
      pj["region"] = serialize(pc.region);
      pj["move"] = pc.move.support().str();
      pieces.push_back(pj);
    }
    mj["pieces"] = pieces;
    maps.push_back(mj);
  }
  j["maps"] = maps;
  nlohmann::ordered_json orbit = nlohmann::ordered_json::array();
  for (uint32_t w = 0; w < (1u << n); ++w) {
    nlohmann::ordered_json oj;
    oj["word"] = word_bits(w, n);
    oj["point"] = tw.transport(n, w, FinSet()).str();
    orbit.push_back(oj);
  }
  j["orbit"] = orbit;
  j["summary"] = base["summary"];
  j["checks"] = base["checks"];

  RunResult r;
  r.rendered = j.dump(2) + "\n";
  r.printout = render_lines(rep);
  r.exit_code = rep.all_passed() ? 0 : 1;
  r.report = std::move(rep);
  return r;
}

}  // namespace

RunResult run(const RunConfig& config) {
  validate(config);
  if (config.command == "verify") return run_verify(config);
  if (config.command == "reparam") return run_reparam(config);
  if (config.command == "zaction") return run_zaction(config);
  if (config.command == "groupoid") return run_groupoid(config);
  if (config.command == "tower") return run_tower(config);
  return run_space_audit(config);
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"stonework: finite verification of dyadic orbit machinery"};
  app.require_subcommand(1);
  auto add_command = [&](const std::string& name, const std::string& desc,
                         bool dumpable) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--depth", cfg.depth, "window depth for exhaustive sweeps");
    s->add_option("--n", cfg.n, "stage count / window exponent");
    s->add_option("--max-n", cfg.max_n, "largest tower stage");
    s->add_option("--seed", cfg.seed, "64-bit seed for sampled checks");
    s->add_option("--mode", cfg.mode, "scalar mode: exact | float");
    s->add_option("--space", cfg.space, "point space name");
    s->add_option("--out", cfg.out, "write the JSON document to this path");
    s->add_option("--suite", cfg.suites, "run only the named suites")
        ->delimiter(',');
    if (dumpable) s->add_flag("--dump", cfg.dump, "embed dense matrices");
    return s;
  };
  add_command("verify", "run every suite at the configured sizes", false);
  add_command("reparam", "build the involution tower, emit the tree manifest", false);
  add_command("zaction", "build the single generator and walk its orbit", false);
  add_command("groupoid", "window algebra laws and the normalizer split", false);
  add_command("tower", "stage relations, independence and span dimensions", true);
  add_command("space-audit", "space predicates, images and invariant sets", false);

  std::vector<const char*> argv;
  argv.push_back("stonework");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().at(0)->get_name();
  if (std::find(cfg.suites.begin(), cfg.suites.end(), "all") != cfg.suites.end())
    cfg.suites.clear();

  try {
    RunResult r = run(cfg);
    out << r.printout;
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "config error: cannot open " << cfg.out << "\n";
        return 2;
      }
      f << r.rendered;
      out << "wrote " << cfg.out << "\n";
    }
    return r.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stonework
