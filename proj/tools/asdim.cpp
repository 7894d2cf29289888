// Command-line front door. Subcommands: gen, witness, dmetric, wedge,
// factorize, verify, report. Exit codes: 0 success or all checks pass,
// 2 verification failure (report path printed), 64 usage, 65 bad data,
// 70 internal fault.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/factorize.hpp"
#include "asdim/json_io.hpp"
#include "asdim/oracle.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"
#include "asdim/wedge.hpp"

namespace {

using namespace asdim;

SpaceRef load_space(const std::string& path) {
  SpaceRef X = space_from_json(load_json_file(path));
  ValidationReport rep = validate_metric(*X);
  if (!rep.ok())
    throw DataError(path + " is not a metric space: " + rep.failures().front().name);
  return X;
}

ScheduleMode parse_mode(const std::string& s) {
  auto m = schedule_from_name(s);
  if (!m) throw ParamError("unknown mode " + s);
  return *m;
}

SplitterKind parse_splitter(const std::string& s) {
  auto k = splitter_from_name(s);
  if (!k) throw ParamError("unknown splitter " + s);
  return *k;
}

int parse_verify_level(const std::string& s) {
  if (s == "none") return 0;
  if (s == "daggers") return 1;
  if (s == "all") return 2;
  throw ParamError("unknown verification level " + s);
}

void merge_prefixed(ValidationReport& into, const ValidationReport& from,
                    const std::string& prefix) {
  for (const auto& c : from.checks()) into.add(prefix + c.name, c.pass, c.witness);
}

std::string report_path_or_default(const std::string& report, const std::string& emit) {
  if (!report.empty()) return report;
  if (!emit.empty()) return emit + ".report.json";
  return "report.json";
}

// writes the report, prints its path and the summary, picks the exit code
int finish_with_report(const ValidationReport& rep, const std::string& path) {
  save_json_file(path, report_to_json(rep));
  std::cout << rep.summary_line() << "\n";
  std::cout << "report: " << path << "\n";
  return rep.ok() ? 0 : 2;
}

struct GenConfig {
  std::string kind;
  long long k = 9;
  Dist step = 1;
  long long w = 4;
  long long h = 4;
  std::string norm = "linf";
  long long branching = 2;
  long long depth = 2;
  Dist diameter = 16;
  unsigned long long seed = 1;
  std::string emit;
};

int run_gen(const GenConfig& cfg) {
  FiniteMetricSpace X = [&] {
    if (cfg.kind == "path") return make_path(cfg.k, cfg.step);
    if (cfg.kind == "grid") {
      if (cfg.norm != "l1" && cfg.norm != "linf") throw ParamError("unknown norm " + cfg.norm);
      return make_grid(cfg.w, cfg.h, cfg.norm == "l1" ? GridNorm::l1 : GridNorm::linf);
    }
    if (cfg.kind == "tree") return make_tree(cfg.branching, cfg.depth);
    if (cfg.kind == "random") return make_random(cfg.k, cfg.diameter, cfg.seed);
    throw ParamError("unknown kind " + cfg.kind);
  }();
  save_json_file(cfg.emit, space_to_json(X));
  std::cout << "wrote " << cfg.emit << " (" << X.meta.id() << ")\n";
  return 0;
}

struct BuildConfig {
  std::string space;
  int n = 1;
  std::string mode = "strict_100";
  std::string splitter = "greedy";
  Dist r1 = 1;
  std::string emit;
  std::string verify = "none";
  std::string report;
};

GuidedSequence build_from_config(SpaceRef X, const BuildConfig& cfg) {
  WitnessOptions opt;
  opt.n = cfg.n;
  opt.mode = parse_mode(cfg.mode);
  opt.splitter = parse_splitter(cfg.splitter);
  opt.r1 = cfg.r1;
  return build_witnessing_sequence(X, opt);
}

int run_witness(const BuildConfig& cfg) {
  SpaceRef X = load_space(cfg.space);
  GuidedSequence seq = build_from_config(X, cfg);
  if (!cfg.emit.empty()) {
    save_json_file(cfg.emit, sequence_to_json(seq));
    std::cout << "wrote " << cfg.emit << " (" << seq.stored_levels() << " levels, n="
              << seq.n() << ")\n";
  }
  if (parse_verify_level(cfg.verify) == 0) return 0;
  ValidationReport rep = check_witnessing(seq);
  rep.merge(check_defining(seq));
  return finish_with_report(rep, report_path_or_default(cfg.report, cfg.emit));
}

struct DmetricConfig {
  std::string sequence;
  std::string emit;
  std::string profile;
  std::string scales;
};

int run_dmetric(const DmetricConfig& cfg) {
  GuidedSequence seq = sequence_from_json(load_json_file(cfg.sequence));
  std::vector<SplitCover> covers;
  for (const auto& lv : seq.levels) covers.push_back(lv.cover);
  const auto table = dF_table(*seq.space, covers);
  if (!cfg.emit.empty()) {
    Json j;
    j["schema_version"] = 1;
    j["space"] = seq.space->meta.id();
    j["table"] = table;
    save_json_file(cfg.emit, j);
    std::cout << "wrote " << cfg.emit << "\n";
  }
  if (!cfg.profile.empty()) {
    std::vector<Dist> scales;
    if (cfg.scales.empty()) {
      const Dist diam = seq.space->diameter();
      for (Dist s = 1; s < diam; s *= 2) scales.push_back(s);
      if (diam >= 1) scales.push_back(diam);
    } else {
      std::stringstream in(cfg.scales);
      std::string tok;
      while (std::getline(in, tok, ',')) scales.push_back(std::stoll(tok));
      if (!std::is_sorted(scales.begin(), scales.end()))
        throw ParamError("scales must be ascending");
    }
    std::ostringstream csv;
    csv << "scale,rho\n";
    for (Dist s : scales) {
      Dist rho = 0;
      for (Point x = 0; x < seq.space->size(); ++x)
        for (Point y = x + 1; y < seq.space->size(); ++y)
          if (seq.space->dist(x, y) <= s) rho = std::max(rho, table[x][y]);
      csv << s << ',' << rho << "\n";
    }
    std::ofstream out(cfg.profile);
    if (!out) throw DataError("cannot write " + cfg.profile);
    out << csv.str();
    std::cout << "wrote " << cfg.profile << "\n";
  }
  return 0;
}

struct WedgeConfig {
  std::vector<std::string> spaces;
  int n = 1;
  std::string mode = "strict_100";
  std::string splitter = "greedy";
  std::string emit;
};

int run_wedge(const WedgeConfig& cfg) {
  std::vector<WedgeConstituent> parts;
  for (const auto& path : cfg.spaces) {
    SpaceRef X = load_space(path);
    if (!X->base_point()) throw DataError(path + " has no base point");
    BuildConfig bc;
    bc.n = cfg.n;
    bc.mode = cfg.mode;
    bc.splitter = cfg.splitter;
    parts.push_back({X, build_from_config(X, bc)});
  }
  WedgeSpace w = build_wedge(parts);
  const auto combined = combine_sequences(w);
  ValidationReport rep = check_wedge(w, combined);

  Json j;
  j["schema_version"] = 1;
  j["points"] = w.points;
  Json origin = Json::array();
  for (const auto& [part, local] : w.origin) origin.push_back(Json::array({part, local}));
  j["origin"] = std::move(origin);
  Json covers = Json::array();
  for (const auto& sc : combined) covers.push_back(split_cover_to_json(sc));
  j["combined"] = std::move(covers);
  j["report"] = report_to_json(rep);
  save_json_file(cfg.emit, j);
  std::cout << rep.summary_line() << "\n";
  std::cout << "report: " << cfg.emit << "\n";
  return rep.ok() ? 0 : 2;
}

struct FactorizeConfig {
  std::string space;
  std::string target;
  std::string map;
  int n = 1;
  std::string mode = "strict_100";
  std::string splitter = "greedy";
  int horizon = -1;
  std::string emit;
  std::string verify = "none";
  std::string report;
};

int run_factorize(const FactorizeConfig& cfg) {
  const int level = parse_verify_level(cfg.verify);
  SpaceRef X = load_space(cfg.space);
  SpaceRef Y = load_space(cfg.target);
  if (!X->base_point()) throw DataError(cfg.space + " has no base point");
  CoarseMap f = map_from_json(load_json_file(cfg.map), X, Y);

  BuildConfig bc;
  bc.n = cfg.n;
  bc.mode = cfg.mode;
  bc.splitter = cfg.splitter;
  GuidedSequence seq = build_from_config(X, bc);

  FactorizationState st = init_factorization(f, seq, cfg.horizon);
  run_sweep(st);
  StabilizedLimit lim = stabilized_limit(st);
  Factorization zgh = extract_factorization(f, lim.levels);
  FactorizationResult res = exact_factorization(f, zgh);

  ValidationReport bounds;
  {
    const Dist c = closeness_radius(f, compose(res.h, res.g));
    const Dist cap = mesh(*Y, st.targets[0].members);
    std::ostringstream w;
    w << "value=" << c << " bound=" << cap;
    bounds.add("closeness_bound", c <= cap, w.str());
  }
  for (int i = 1; i <= seq.stored_levels(); ++i) {
    bool ok = true;
    std::string wtn;
    for (const auto& fam : seq.cover_at(i).families)
      for (const auto& m : fam) {
        Dist diam = 0;
        for (Point a : m.items())
          for (Point b : m.items()) diam = std::max(diam, res.Z->dist(res.g(a), res.g(b)));
        if (diam > i + 1 && ok) {
          ok = false;
          wtn = "member " + format_points(m) + " spreads to " + std::to_string(diam);
        }
      }
    bounds.add("L" + std::to_string(i) + "_retraction_diam", ok, wtn);
  }
  {
    const int zsize = res.Z_points.size();
    const int members1 = lim.levels[0].member_count();
    const int cap = (lim.levels[0].n() + 1) * Y->size();
    std::ostringstream w;
    w << "|Z|=" << zsize << " level1=" << members1 << " cap=" << cap;
    bounds.add("size_caps", zsize <= members1 && members1 <= cap, w.str());
  }
  for (int i = 1; i <= seq.stored_levels(); ++i) {
    const Dist cap = mesh(*Y, st.targets[i - 1].members);
    bool ok = true;
    std::string wtn;
    for (const auto& m : lim.levels[i - 1].all_members()) {
      const Dist diam = set_diameter(*Y, f.image(m));
      if (diam > cap) {
        ok = false;
        wtn = "image diameter " + std::to_string(diam) + " over " + std::to_string(cap);
        break;
      }
    }
    bounds.add("L" + std::to_string(i) + "_image_diam", ok, wtn);
  }

  ValidationReport checks;
  checks.merge(lim.certificate);
  if (level >= 1) checks.merge(oracle::check_all_daggers(st));
  if (level >= 2) {
    checks.merge(check_defining(X->size(), lim.levels));
    checks.merge(oracle::check_claim_family(st, lim.levels));
    bool exact = true;
    for (Point x = 0; x < X->size(); ++x)
      if (res.hprime(res.gprime(x)) != f(x)) exact = false;
    checks.add("exact_composition", exact);
    ValidationReport zrep = validate_metric(*res.Zprime);
    merge_prefixed(checks, zrep, "Zprime_");
    for (int i = 1; i <= static_cast<int>(lim.levels.size()); ++i) {
      SplitCover zc = restrict_to_subset(lim.levels[i - 1], res.Z_points);
      merge_prefixed(checks, check_pi_containment(res, zc.all_members()),
                     "L" + std::to_string(i) + "_");
    }
  }

  if (!cfg.emit.empty()) {
    Json j = factorization_result_to_json(res, f);
    j["horizon"] = st.m_max;
    j["p_star"] = lim.p_star;
    j["certificate"] = report_to_json(lim.certificate);
    j["bounds"] = report_to_json(bounds);
    j["checks"] = report_to_json(checks);
    save_json_file(cfg.emit, j);
    std::cout << "wrote " << cfg.emit << " (|Z|=" << res.Z_points.size()
              << ", |Z'|=" << res.Zprime->size() << ")\n";
  }

  ValidationReport all;
  all.merge(bounds);
  all.merge(checks);
  return finish_with_report(all, report_path_or_default(cfg.report, cfg.emit));
}

struct VerifyConfig {
  std::string space;
  std::string sequence;
  std::string map;
  std::string target;
  std::string report = "report.json";
};

int run_verify(const VerifyConfig& cfg) {
  if (cfg.space.empty() && cfg.sequence.empty() && cfg.map.empty())
    throw ParamError("nothing to verify; pass --space, --sequence or --map");
  ValidationReport rep;
  if (!cfg.space.empty()) {
    SpaceRef X = space_from_json(load_json_file(cfg.space));
    merge_prefixed(rep, validate_metric(*X), "space_");
    merge_prefixed(rep, oracle::triple_scan_triangle(*X), "space_oracle_");
  }
  if (!cfg.sequence.empty()) {
    GuidedSequence seq = sequence_from_json(load_json_file(cfg.sequence));
    rep.merge(check_witnessing(seq));
    rep.merge(check_defining(seq));
  }
  if (!cfg.map.empty()) {
    if (cfg.space.empty() || cfg.target.empty())
      throw ParamError("--map needs --space and --target");
    SpaceRef X = space_from_json(load_json_file(cfg.space));
    SpaceRef Y = space_from_json(load_json_file(cfg.target));
    CoarseMap f = map_from_json(load_json_file(cfg.map), X, Y);
    merge_prefixed(rep, check_map(f), "map_");
  }
  return finish_with_report(rep, cfg.report);
}

int run_report(const std::string& in) {
  Json j = load_json_file(in);
  try {
    for (const auto& c : j.at("checks")) {
      std::cout << (c.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
                << c.at("name").get<std::string>();
      const std::string w = c.at("witness").get<std::string>();
      if (!w.empty()) std::cout << "  (" << w << ")";
      std::cout << "\n";
    }
    const bool ok = j.at("ok").get<bool>();
    std::cout << (ok ? "ok\n" : "FAIL\n");
    return ok ? 0 : 2;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"coarse cover sequences, level metrics and map factorization"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "thread count (0 = library default)");

  GenConfig gen;
  auto* cgen = app.add_subcommand("gen", "generate a space file");
  cgen->add_option("--kind", gen.kind, "path | grid | tree | random")->required();
  cgen->add_option("--k", gen.k, "point count (path, random)");
  cgen->add_option("--step", gen.step, "edge length (path)");
  cgen->add_option("--width", gen.w, "grid width");
  cgen->add_option("--height", gen.h, "grid height");
  cgen->add_option("--norm", gen.norm, "l1 | linf (grid)");
  cgen->add_option("--branching", gen.branching, "tree branching");
  cgen->add_option("--depth", gen.depth, "tree depth");
  cgen->add_option("--diameter", gen.diameter, "edge weight cap (random)");
  cgen->add_option("--seed", gen.seed, "random seed");
  cgen->add_option("--emit", gen.emit, "output space file")->required();

  BuildConfig wit;
  auto* cwit = app.add_subcommand("witness", "build a witnessing sequence");
  cwit->add_option("--space", wit.space, "input space file")->required();
  cwit->add_option("--n", wit.n, "family count minus one");
  cwit->add_option("--mode", wit.mode, "strict_100 | lax_2");
  cwit->add_option("--splitter", wit.splitter, "brick | greedy | exact");
  cwit->add_option("--r1", wit.r1, "first scale");
  cwit->add_option("--emit", wit.emit, "output sequence file");
  cwit->add_option("--verify", wit.verify, "none | daggers | all");
  cwit->add_option("--report", wit.report, "report file");

  DmetricConfig dm;
  auto* cdm = app.add_subcommand("dmetric", "level metric table and profile");
  cdm->add_option("--sequence", dm.sequence, "input sequence file")->required();
  cdm->add_option("--emit", dm.emit, "output table file");
  cdm->add_option("--profile", dm.profile, "output profile CSV");
  cdm->add_option("--scales", dm.scales, "comma-separated scales for the profile");

  WedgeConfig wed;
  auto* cwed = app.add_subcommand("wedge", "combine pointed spaces at their base points");
  cwed->add_option("--spaces", wed.spaces, "input space files")->required();
  cwed->add_option("--n", wed.n, "family count minus one");
  cwed->add_option("--mode", wed.mode, "strict_100 | lax_2");
  cwed->add_option("--splitter", wed.splitter, "brick | greedy | exact");
  cwed->add_option("--emit", wed.emit, "output wedge file")->required();

  FactorizeConfig fac;
  auto* cfac = app.add_subcommand("factorize", "factorize a map through a small space");
  cfac->add_option("--space", fac.space, "source space file")->required();
  cfac->add_option("--target", fac.target, "target space file")->required();
  cfac->add_option("--map", fac.map, "map file")->required();
  cfac->add_option("--n", fac.n, "family count minus one");
  cfac->add_option("--mode", fac.mode, "strict_100 | lax_2");
  cfac->add_option("--splitter", fac.splitter, "brick | greedy | exact");
  cfac->add_option("--horizon", fac.horizon, "sweep horizon (-1 = certified default)");
  cfac->add_option("--emit", fac.emit, "output result file");
  cfac->add_option("--verify", fac.verify, "none | daggers | all");
  cfac->add_option("--report", fac.report, "report file");

  VerifyConfig ver;
  auto* cver = app.add_subcommand("verify", "check files against the invariants");
  cver->add_option("--space", ver.space, "space file");
  cver->add_option("--sequence", ver.sequence, "sequence file");
  cver->add_option("--map", ver.map, "map file");
  cver->add_option("--target", ver.target, "target space file for --map");
  cver->add_option("--report", ver.report, "report file");

  std::string report_in;
  auto* crep = app.add_subcommand("report", "print a report file");
  crep->add_option("--in", report_in, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#endif

  if (cgen->parsed()) return run_gen(gen);
  if (cwit->parsed()) return run_witness(wit);
  if (cdm->parsed()) return run_dmetric(dm);
  if (cwed->parsed()) return run_wedge(wed);
  if (cfac->parsed()) return run_factorize(fac);
  if (cver->parsed()) return run_verify(ver);
  if (crep->parsed()) return run_report(report_in);
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const asdim::ParamError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const asdim::HorizonError& e) {
    std::cerr << "data error: " << e.what() << " (needed horizon " << e.needed << ")\n";
    return 65;
  } catch (const asdim::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  } catch (const asdim::ContractError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  } catch (const asdim::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
