#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "levikit/asymptotics.hpp"
#include "levikit/chains.hpp"
#include "levikit/error.hpp"
#include "levikit/foliation.hpp"
#include "levikit/good_gamma.hpp"
#include "levikit/index_calculus.hpp"
#include "levikit/io.hpp"
#include "levikit/jet_normal.hpp"
#include "levikit/model_surfaces.hpp"
#include "svg.hpp"

namespace levikit::tools {

namespace {

void configure_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("levikit");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("LEVIKIT_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open file", path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, "invalid JSON", path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write file", path);
  f << content;
  spdlog::info("wrote {}", path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Sector outline of D+ or D- at the given radius.
std::vector<Complex> sector(double mu, double centre, double radius) {
  std::vector<Complex> pts{Complex(0.0, 0.0)};
  for (int k = 0; k <= 32; ++k) pts.push_back(std::polar(radius, centre - mu + 2.0 * mu * k / 32));
  return pts;
}

struct Options {
  std::string in, out, trace, chains;
  double tol = 1e-9;
  int samples = 256;
  double gamma = 2.0;
  double alpha1 = 0.0;
  long max_denominator = 50;
  double from = 1.1, to = 10.0, step = 0.1;
  int jobs = 1;
  int m_max = 4, k_max = 12;
  std::optional<int> maslov_k;
  std::string kind;
  std::vector<double> levels;
  double delta = 1e-2;
  int chain_k_max = 5;
  std::uint64_t seed = 0;
  bool allow_self_loops = false;
};

int classify_jet(const Options& o, std::ostream& out) {
  const LocalJet jet = jet_from_json(read_json_file(o.in));
  const CanonicalJet c = normalize_jet(jet, o.tol);
  SampledLoop loop;
  for (int j = 0; j < o.samples; ++j) loop.samples.push_back(dbar_field(jet, std::polar(1.0, 2.0 * kPi * j / o.samples)));
  Json j = to_json(c);
  j["winding"] = winding(loop);
  emit(o.out, dump(j), out);
  return 0;
}

int winding_cmd(const Options& o, std::ostream& out) {
  std::ifstream in(o.in);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open file", o.in);
  const SampledLoop loop = loop_from_csv(in);
  emit(o.out, dump(Json{{"samples", loop.samples.size()}, {"winding", winding(loop, o.tol)}}), out);
  return 0;
}

int maslov_cmd(const Options& o, std::ostream& out) {
  FrameLoop loop;
  if (!o.in.empty()) {
    loop = frames_from_json(read_json_file(o.in));
  } else {
    for (int j = 0; j < o.samples; ++j) {
      const double th = 2.0 * kPi * j / o.samples;
      loop.frames.push_back(Frame::scalar(std::polar(1.0, *o.maslov_k * th / 2.0)));
    }
  }
  emit(o.out, dump(Json{{"frames", loop.frames.size()}, {"maslov", maslov_of_frames(loop, o.tol)}}), out);
  return 0;
}

int gamma_test(const Options& o, std::ostream& out) {
  const GammaReport r = analyze_gamma(o.gamma, o.tol, o.max_denominator);
  emit(o.out, dump(to_json(r)), out);
  return 0;
}

int gamma_scan(const Options& o, std::ostream& out) {
  if (!(o.step > 0.0) || !(o.to >= o.from)) throw Error(ErrorCode::InvalidInput, "need step > 0 and to >= from");
  const auto n = static_cast<std::size_t>(std::floor((o.to - o.from) / o.step + 1e-9)) + 1;
  std::vector<std::string> rows(n);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(o.jobs));
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < n; i += static_cast<std::size_t>(o.jobs)) {
        const double g = o.from + static_cast<double>(i) * o.step;
        const GammaReport r = analyze_gamma(g, o.tol, o.max_denominator);
        std::string row = fmt_double(g) + ',' + fmt_double(r.angle / kPi) + ',' + (r.in_lambda ? "1" : "0") + ',';
        if (r.rational) {
          row += std::to_string(r.rational->first) + ',' + std::to_string(r.rational->second) + ',' +
                 std::to_string(*r.dihedral_order);
        } else {
          row += ",,";
        }
        rows[i] = row + '\n';
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < o.jobs; ++w) pool.emplace_back(work, static_cast<std::size_t>(w));
  work(0);
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  std::string csv = "gamma,angle_over_pi,in_Lambda,n,m,dihedral_order\n";
  for (const auto& r : rows) csv += r;
  emit(o.out, csv, out);
  return 0;
}

int foliation_portrait(const Options& o, std::ostream& out) {
  const FoliationField field{o.gamma, o.alpha1, {}};
  const LinearAnalysis la = linear_analysis(field);
  const double mu = admissible_mu(o.gamma);
  const double extent = 1.0;
  Svg svg(extent);
  // Omega regions: wedges between consecutive eigen-directions.
  const Complex dirs[] = {la.v_unstable, la.v_stable, -la.v_unstable, -la.v_stable};
  const char* shades[] = {"#fde0c5", "#d5e8d4", "#dae8fc", "#e1d5e7"};
  for (int k = 0; k < 4; ++k) {
    const double a0 = std::arg(dirs[k]);
    double a1 = std::arg(dirs[(k + 1) % 4]);
    while (a1 <= a0) a1 += 2.0 * kPi;
    std::vector<Complex> wedge{Complex(0.0, 0.0)};
    for (int s = 0; s <= 32; ++s) wedge.push_back(std::polar(3.0 * extent, a0 + (a1 - a0) * s / 32));
    svg.polygon(wedge, shades[k], 0.6);
    svg.text(std::polar(0.8 * extent, 0.5 * (a0 + a1)), "Omega" + std::to_string(k + 1));
  }
  svg.polygon(sector(mu, kPi / 2.0, 2.0 * extent), "#999999", 0.25);
  svg.polygon(sector(mu, -kPi / 2.0, 2.0 * extent), "#999999", 0.25);
  const double h = 0.05 / std::max(std::abs(la.lambda_unstable), std::abs(la.lambda_stable));
  const int leaves = std::max(16, o.samples / 8);
  for (int k = 0; k < leaves; ++k) {
    const Complex z0 = std::polar(0.95 * extent * std::sqrt(2.0), 2.0 * kPi * (k + 0.5) / leaves);
    for (double t1 : {2.0, -2.0}) {
      const Trajectory tr = integrate_leaf(field, z0, 0.0, t1, h);
      Curve leaf{{}, false};
      for (const auto& z : tr.z) {
        if (std::abs(z.real()) > 1.5 * extent || std::abs(z.imag()) > 1.5 * extent) break;
        leaf.points.push_back(z);
      }
      if (leaf.points.size() > 1) svg.polyline(leaf, "#444444", 0.8);
    }
  }
  svg.line(-2.0 * la.v_unstable, 2.0 * la.v_unstable, "#c0392b", 2.0);
  svg.line(-2.0 * la.v_stable, 2.0 * la.v_stable, "#2471a3", 2.0);
  emit(o.out, svg.str(), out);
  Json j{{"lambda_unstable", la.lambda_unstable},
         {"lambda_stable", la.lambda_stable},
         {"v_unstable", to_json(la.v_unstable)},
         {"v_stable", to_json(la.v_stable)},
         {"mu", mu}};
  if (!o.out.empty() && o.out != "-") out << dump(j);
  return 0;
}

int puiseux_fit(const Options& o, std::ostream& out) {
  std::ifstream in(o.in);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open file", o.in);
  const auto samples = samples_from_csv(in);
  emit(o.out, dump(to_json(fit_puiseux(samples, o.m_max, o.k_max))), out);
  return 0;
}

int model_discs(const Options& o, std::ostream& out) {
  const ModelQuadric q{o.gamma};
  std::string kind = o.kind;
  if (kind.empty()) kind = o.gamma < 1.0 ? "elliptic" : "hyperbolic";
  if (kind != "elliptic" && kind != "hyperbolic") throw Error(ErrorCode::InvalidInput, "kind must be elliptic or hyperbolic");
  std::vector<std::pair<double, std::vector<Curve>>> families;
  for (double t : o.levels) {
    if (kind == "elliptic") {
      families.push_back({t, {elliptic_disc_family(q, t, o.samples)}});
    } else {
      families.push_back({t, hyperbolic_section_family(q, t, o.samples)});
    }
  }
  if (ends_with(o.out, ".svg")) {
    double extent = 0.0;
    for (const auto& [t, cs] : families)
      for (const auto& c : cs)
        for (const auto& p : c.points) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
    Svg svg(std::max(1e-9, 1.1 * extent));
    for (const auto& [t, cs] : families)
      for (const auto& c : cs) svg.polyline(c, "#1f4e79", 1.2);
    emit(o.out, svg.str(), out);
    return 0;
  }
  std::string csv = "t,curve,index,re,im\n";
  for (const auto& [t, cs] : families) {
    for (std::size_t c = 0; c < cs.size(); ++c) {
      for (std::size_t i = 0; i < cs[c].points.size(); ++i) {
        csv += fmt_double(t) + ',' + std::to_string(c) + ',' + std::to_string(i) + ',' +
               fmt_double(cs[c].points[i].real()) + ',' + fmt_double(cs[c].points[i].imag()) + '\n';
      }
    }
  }
  emit(o.out, csv, out);
  return 0;
}

int glue_demo(const Options& o, std::ostream& out) {
  const ModelQuadric q{o.gamma};
  const GluingPerturbation pert{o.delta};
  const Curve glued = glued_boundary_curve(q, pert, o.samples);
  const auto limit = glued_limit(q, o.samples);
  const Curve one[] = {glued};
  double rmin = std::numeric_limits<double>::infinity();
  for (const auto& p : glued.points) rmin = std::min(rmin, std::abs(p));
  Json j{{"gamma", o.gamma},
         {"delta", o.delta},
         {"samples", glued.points.size()},
         {"hausdorff_to_limit", hausdorff_distance(one, limit)},
         {"min_radius_sampled", rmin},
         {"min_radius_exact", glued_min_radius(q, pert)}};
  if (!o.out.empty() && o.out != "-") {
    Svg svg(1.1);
    for (const auto& c : limit) svg.polyline(c, "#999999", 1.0);
    svg.polyline(glued, "#c0392b", 1.5);
    emit(o.out, svg.str(), out);
  }
  out << dump(j);
  return 0;
}

int chain_check(const Options& o, std::ostream& out) {
  emit(o.out, dump(to_json(check_chain_lemmas(o.chain_k_max))), out);
  return 0;
}

int fill_sim(const Options& o, std::ostream& out) {
  FillingConfig cfg;
  cfg.seed = o.seed;
  cfg.allow_self_loops = o.allow_self_loops;
  if (!o.chains.empty()) {
    const Json j = read_json_file(o.chains);
    std::vector<ChainGraph> chains;
    for (const auto& c : j.is_array() ? j : j.at("chains")) chains.push_back(chain_from_json(c));
    cfg.explicit_chains = std::move(chains);
  }
  const FillingTrace trace = run_filling(inventory_from_json(read_json_file(o.in)), cfg);
  const Json tj = to_json(trace);
  if (o.trace.empty() || o.trace == "-") {
    out << dump(tj);
    return 0;
  }
  emit(o.trace, dump(tj), out);
  std::size_t events = 0, glues = 0;
  for (const auto& r : trace.rounds) {
    events += r.events.size();
    glues += static_cast<std::size_t>(std::count_if(r.events.begin(), r.events.end(),
                                                    [](const FillingEvent& e) { return e.kind == EventKind::Glue; }));
  }
  out << dump(Json{{"rounds", trace.rounds.size()},
                   {"events", events},
                   {"glue_events", glues},
                   {"terminal_family", trace.terminal.family},
                   {"families", trace.terminal.families}});
  return 0;
}

int replay_cmd(const Options& o, std::ostream& out) {
  const FillingTrace t = trace_from_json(read_json_file(o.trace));
  if (!replay(t)) throw Error(ErrorCode::InvalidInput, "trace does not replay", o.trace);
  out << dump(Json{{"replay", true}});
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging();
  CLI::App app{"Complex points, indices and disc fillings of model surfaces", "levikit"};
  app.require_subcommand(1);
  Options o;
  const auto tol_check = CLI::PositiveNumber;
  const auto samples_check = CLI::Range(16, 1 << 22);

  std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&)>>> cmds;

  auto* cj = app.add_subcommand("classify-jet", "Normalize a second-order jet and report gamma and the point kind");
  cj->add_option("--in", o.in, "jet JSON {\"A\":[re,im],\"B\":...,\"C\":...}")->required()->check(CLI::ExistingFile);
  cj->add_option("--tol", o.tol, "relative degeneracy tolerance")->check(tol_check);
  cj->add_option("--samples", o.samples, "samples for the winding cross-check")->check(samples_check);
  cj->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(cj, classify_jet);

  auto* wd = app.add_subcommand("winding", "Winding number of a sampled loop (CSV columns re,im)");
  wd->add_option("--in", o.in, "loop CSV")->required()->check(CLI::ExistingFile);
  wd->add_option("--tol", o.tol, "angle-step tolerance")->check(tol_check);
  wd->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(wd, winding_cmd);

  auto* ms = app.add_subcommand("maslov", "Maslov index of a loop of totally real frames");
  auto* ms_in = ms->add_option("--in", o.in, "frames JSON")->check(CLI::ExistingFile);
  auto* ms_k = ms->add_option("--k", o.maslov_k, "use the model loop B(theta) = exp(i k theta / 2)");
  ms_in->excludes(ms_k);
  ms->add_option("--samples", o.samples, "samples of the model loop")->check(samples_check);
  ms->add_option("--tol", o.tol, "angle-step tolerance")->check(tol_check);
  ms->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(ms, maslov_cmd);

  auto* gt = app.add_subcommand("gamma-test", "Reflection-group test for a Bishop invariant gamma > 1");
  gt->add_option("--gamma", o.gamma, "Bishop invariant")->required();
  gt->add_option("--max-denominator", o.max_denominator, "largest m in the angle n pi / m")->check(CLI::Range(2L, 1000000L));
  gt->add_option("--tol", o.tol, "angle tolerance in units of pi")->check(tol_check);
  gt->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(gt, gamma_test);

  auto* gs = app.add_subcommand("gamma-scan", "CSV table of gamma-test over a range");
  gs->add_option("--from", o.from, "first gamma")->required();
  gs->add_option("--to", o.to, "last gamma")->required();
  gs->add_option("--step", o.step, "gamma step")->required()->check(tol_check);
  gs->add_option("--max-denominator", o.max_denominator, "largest m")->check(CLI::Range(2L, 1000000L));
  gs->add_option("--tol", o.tol, "angle tolerance")->check(tol_check);
  gs->add_option("--jobs", o.jobs, "worker threads; output order is fixed")->check(CLI::Range(1, 256));
  gs->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(gs, gamma_scan);

  auto* fp = app.add_subcommand("foliation-portrait", "SVG phase portrait of the characteristic foliation");
  fp->add_option("--gamma", o.gamma, "Bishop invariant (> 1)")->required();
  fp->add_option("--alpha1", o.alpha1, "coefficient alpha1 of the defining function");
  fp->add_option("--samples", o.samples, "controls the number of leaves")->check(samples_check);
  fp->add_option("--out", o.out, "SVG file")->required();
  cmds.emplace_back(fp, foliation_portrait);

  auto* pf = app.add_subcommand("puiseux-fit", "Fit a Puiseux series to samples (CSV z_re,z_im,w_re,w_im)");
  pf->add_option("--in", o.in, "samples CSV")->required()->check(CLI::ExistingFile);
  pf->add_option("--m-max", o.m_max, "largest ramification")->check(CLI::Range(1, 12));
  pf->add_option("--k-max", o.k_max, "largest exponent numerator")->check(CLI::Range(2, 64));
  pf->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(pf, puiseux_fit);

  auto* md = app.add_subcommand("model-discs", "Disc boundaries of an elliptic or hyperbolic model quadric");
  md->add_option("--gamma", o.gamma, "Bishop invariant")->required();
  md->add_option("--kind", o.kind, "elliptic or hyperbolic (default from gamma)");
  md->add_option("--t", o.levels, "levels t, comma separated")->required()->delimiter(',');
  md->add_option("--samples", o.samples, "samples per curve")->check(samples_check);
  md->add_option("--out", o.out, "output .csv or .svg (default CSV on stdout)");
  cmds.emplace_back(md, model_discs);

  auto* gd = app.add_subcommand("glue-demo", "Glued boundary curve at a hyperbolic point");
  gd->add_option("--gamma", o.gamma, "Bishop invariant (> 1)");
  gd->add_option("--delta", o.delta, "size of the perturbation")->check(tol_check);
  gd->add_option("--samples", o.samples, "samples on the curve")->check(samples_check);
  gd->add_option("--out", o.out, "SVG file (summary JSON always on stdout)");
  cmds.emplace_back(gd, glue_demo);

  auto* cc = app.add_subcommand("chain-check", "Exhaustive check of the chain counting lemmas");
  cc->add_option("--k-max", o.chain_k_max, "largest number of discs (<= 6)");
  cc->add_option("--out", o.out, "output file (default stdout)");
  cmds.emplace_back(cc, chain_check);

  auto* fs = app.add_subcommand("fill-sim", "Run the filling induction on a sphere inventory");
  fs->add_option("--inventory", o.in, "inventory JSON")->required()->check(CLI::ExistingFile);
  fs->add_option("--seed", o.seed, "seed for the chain topology");
  fs->add_option("--chains", o.chains, "explicit first-round chains JSON")->check(CLI::ExistingFile);
  fs->add_option("--trace", o.trace, "trace output file (default: trace on stdout)");
  fs->add_flag("--allow-self-loops", o.allow_self_loops, "permit positive self-loop contacts");
  cmds.emplace_back(fs, fill_sim);

  auto* rp = app.add_subcommand("replay", "Re-apply a recorded filling trace and verify it");
  rp->add_option("--trace", o.trace, "trace JSON")->required()->check(CLI::ExistingFile);
  cmds.emplace_back(rp, replay_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (ms->parsed() && o.in.empty() && !o.maslov_k) {
    err << "maslov: one of --in or --k is required\n";
    return 2;
  }

  for (const auto& [sub, run] : cmds) {
    if (!sub->parsed()) continue;
    try {
      return run(o, out);
    } catch (const Error& e) {
      err << error_json(e).dump() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace levikit::tools
