// torelli-lab: batch front end for the surface / IVHS / recovery pipeline.
// Exit codes: 0 ok, 1 computation error, 2 usage error.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "torelli_lab/io.hpp"

using namespace torelli;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_file(path, j);
  }
}

void require_h(int h) {
  if (h < 3) throw UsageError("--h must be >= 3 (the genus bound h >= q + 3 with q = 0)");
  if (h > 12) throw UsageError("--h above 12 is outside the supported range");
}

std::vector<ExactRational> parse_points(const std::string& list) {
  std::vector<ExactRational> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const DomainError&) {
      throw UsageError("--i2: cannot parse point '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--i2 needs at least one point");
  return out;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TORELLI_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("TORELLI_LAB_THREADS must be a positive integer");
    }
  }
  return n;
}

// Runs body(i) for i in [0, n) on up to thread_cap() workers.
template <class F>
void parallel_for(std::size_t n, F body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

Json genericity_json(const GeneralityReport& g) {
  return {{"is_general", g.general()},
          {"all_I1", g.all_I1},
          {"z_reduced", g.z_reduced},
          {"z_disjoint_from_delta", g.z_disjoint_from_delta},
          {"failed_clauses", g.failed_clauses()},
          {"warnings", g.warnings}};
}

// ---- commands ----

struct GenerateArgs {
  int h = 3;
  std::uint64_t seed = 1;
  std::string i2;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  require_h(a.h);
  std::optional<std::vector<ExactRational>> pts;
  if (!a.i2.empty()) {
    pts = parse_points(a.i2);
    if (pts->size() > 4) throw UsageError("--i2 takes at most 4 points");
  }
  const WeierstrassSurface s = pts ? make_with_I2(a.h, *pts, a.seed) : make_random_general(a.h, a.seed);
  emit(io::surface_to_json(s), a.out);
  return 0;
}

int cmd_analyze(const std::string& path, const std::string& out) {
  const WeierstrassSurface s = io::surface_from_json(io::read_file(path));
  Json r;
  r["invariants"] = io::invariants_to_json(invariants(s));
  r["fibers"] = io::fibers_to_json(classify_fibers(s));
  const RamificationDivisor z = ramification_divisor(s);
  r["Z"] = io::divisor_to_json(z.divisor);
  r["genericity"] = genericity_json(is_general(s));
  const SchottkyDegrees d = schottky_degrees(s.h());
  r["schottky"] = {{"deg_z", d.deg_z},
                   {"deg_10L_plus_K", d.deg_10L_plus_K},
                   {"ramification_degree", z.total_degree},
                   {"consistent", schottky_degree_check(s)}};
  r["timestamp"] = timestamp();
  emit(r, out);
  return 0;
}

struct IvhsArgs {
  std::string surface;
  std::uint64_t seed = 1;
  std::string out;
  std::string truth;
  double lambda_min = 0.1, lambda_max = 10.0, mixer_cond = 100.0;
};

int cmd_ivhs(const IvhsArgs& a) {
  if (!(a.lambda_min > 0 && a.lambda_min <= a.lambda_max)) throw UsageError("need 0 < --lambda-min <= --lambda-max");
  if (!(a.mixer_cond >= 1)) throw UsageError("--mixer-cond must be >= 1");
  const WeierstrassSurface s = io::surface_from_json(io::read_file(a.surface));
  SynthesisOptions opts;
  opts.lambda_min = a.lambda_min;
  opts.lambda_max = a.lambda_max;
  opts.mixer_cond = a.mixer_cond;
  const auto [w, truth] = synthesize(s, a.seed, opts);
  emit(io::presentation_to_json(w), a.out);
  if (!a.truth.empty()) io::write_file(a.truth, io::truth_to_json(truth));
  return 0;
}

int cmd_recover(const std::string& path, const std::string& truth_path, std::uint64_t seed,
                const std::string& out) {
  const IVHSPresentation w = io::presentation_from_json(io::read_file(path));
  std::vector<RankOneFactor> factors;
  try {
    factors = extract_rank_ones(w, seed);
  } catch (const Error& e) {
    throw StageError("extract", e.what());
  }
  RecoveredGeometry g = recover_geometry(factors, w.h);
  if (!truth_path.empty()) {
    const GroundTruth t = io::truth_from_json(io::read_file(truth_path));
    std::vector<CVector> truth_x;
    for (const auto& p : t.points) truth_x.push_back(p.x);
    g.match = match_points(g.z_points, truth_x);
  }
  Json r = io::geometry_to_json(g);
  r["timestamp"] = timestamp();
  emit(r, out);
  return 0;
}

struct RoundtripArgs {
  int h = 3;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;
  int trials = 1;
  bool corrupt = false;
  bool timings = false;
  double match_threshold = 1e-6;
  std::string out;
};

int cmd_roundtrip(const RoundtripArgs& a) {
  require_h(a.h);
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (!(a.match_threshold > 0)) throw UsageError("--match-threshold must be positive");
  std::vector<std::uint64_t> seeds = a.seeds;
  if (seeds.empty()) {
    for (int k = 0; k < a.trials; ++k) seeds.push_back(a.seed + static_cast<std::uint64_t>(k));
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  RoundtripOptions opts;
  opts.corrupt_span = a.corrupt;
  opts.match_threshold = a.match_threshold;

  std::vector<Json> rows(seeds.size());
  std::vector<std::string> errors(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const std::uint64_t sd = seeds[i];
    Json row = {{"seed", sd}};
    try {
      const WeierstrassSurface s = make_random_general(a.h, sd);
      const RoundtripReport r = roundtrip(s, sd, opts);
      row.update(io::roundtrip_to_json(r, a.timings));
      if (r.status != "ok") errors[i] = r.status;
    } catch (const StageError& e) {
      row["status"] = "error:" + e.stage();
      row["error"] = e.what();
      errors[i] = e.what();
    } catch (const Error& e) {
      row["status"] = "error:generate";
      row["error"] = e.what();
      errors[i] = std::string("generate: ") + e.what();
    }
    rows[i] = std::move(row);
  });

  int failed = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      ++failed;
      std::cerr << "seed " << seeds[i] << ": " << errors[i] << '\n';
    } else {
      worst = std::max(worst, rows[i]["max_chordal"].get<double>());
    }
  }
  Json r = {{"command", "roundtrip"},
            {"h", a.h},
            {"trials", rows},
            {"failed", failed},
            {"max_chordal_overall", worst},
            {"timestamp", timestamp()}};
  emit(r, a.out);
  return failed == 0 ? 0 : 1;
}

Json check_json(const std::string& name, const CheckResult& c) {
  Json j = {{"identity", name}, {"pass", c.pass}};
  if (!c.pass) {
    j["first_discrepant_exponent"] = c.first_discrepant_exponent ? Json(*c.first_discrepant_exponent) : Json();
    j["detail"] = c.detail;
  }
  return j;
}

struct PlumbArgs {
  int order = 6;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string input;
  std::string out;
};

int cmd_plumb_verify(const PlumbArgs& a) {
  if (a.order < 0) throw UsageError("--order must be >= 0");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  std::vector<JetCoefficients> jets;
  if (!a.input.empty()) {
    jets.push_back(io::jet_from_json(io::read_file(a.input)));
  } else {
    for (int k = 0; k < a.trials; ++k) jets.push_back(random_jet(a.seed + static_cast<std::uint64_t>(k), a.order));
  }
  Json cases = Json::array();
  bool all = true;
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const JetCoefficients& b = jets[k];
    const CheckResult closed = check_closed_forms(b);
    const CheckResult lead = check_leading_term(b);
    const CheckResult res = check_residue_law(b);
    // rank-one family built on b; meaningless when omega(a) = -b00 vanishes
    const bool applicable = sgn(b.at(0, 0)) != 0;
    ProportionalityResult prop;
    if (applicable) prop = check_eta_proportionality({b, b.scaled(2), b.scaled(ExactRational(-1, 3))});
    const ExactRational rc = residue_coefficient(b);
    const bool ok = closed.pass && lead.pass && res.pass && prop.pass;
    all = all && ok;
    Json c = {{"index", k},
              {"checks",
               {check_json("closed_forms", closed), check_json("leading_term", lead),
                check_json("residue_law", res),
                {{"identity", "eta_proportionality"}, {"pass", prop.pass}, {"applicable", applicable}}}},
              {"residue_coefficient", to_string(rc)},
              {"residue_vanishes", sgn(rc) == 0}};
    if (!prop.pass) c["checks"][3]["detail"] = prop.detail;
    cases.push_back(std::move(c));
  }
  Json r = {{"command", "plumb-verify"},
            {"order", jets.front().max_order},
            {"cases", cases},
            {"all_pass", all},
            {"timestamp", timestamp()}};
  emit(r, a.out);
  if (!all) std::cerr << "plumb: identity check failed\n";
  return all ? 0 : 1;
}

struct OracleArgs {
  std::string input;
  std::uint64_t seed = 1;
  bool random_span = false;
  std::string out;
};

Json factors_json(const std::vector<RankOneFactor>& fs) {
  Json arr = Json::array();
  for (const auto& f : fs) {
    Json x = Json::array();
    for (Eigen::Index i = 0; i < f.x.size(); ++i) x.push_back(io::complex_to_json(f.x(i)));
    arr.push_back({{"x", x}, {"confidence", f.confidence}});
  }
  return arr;
}

int cmd_oracle(const OracleArgs& a) {
  IVHSPresentation w;
  if (!a.input.empty()) {
    w = io::presentation_from_json(io::read_file(a.input));
  } else if (a.random_span) {
    // 3 random 2x3 matrices
    const CMatrix m = random_conditioned(a.seed, 6, 10.0);
    w.h = 2;
    w.N = 3;
    for (int j = 0; j < 3; ++j) w.basis.push_back(m.col(j).reshaped(2, 3));
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    CVector x1(2), x2(2), x3(2);
    x1 << 1.0, 0.0;
    x2 << 0.0, 1.0;
    x3 << r, r;
    w = assemble_presentation({x1, x2, x3}, CMatrix::Identity(3, 3), CVector::Ones(3),
                              CMatrix::Identity(3, 3));
  }
  if (w.h > 3 || w.N > 6) throw UsageError("oracle is limited to h <= 3 and N <= 6");
  const auto brute = rank_one_oracle_bruteforce(w, a.seed);
  std::vector<RankOneFactor> extracted;
  std::string extract_error;
  try {
    extracted = extract_rank_ones(w, a.seed);
  } catch (const Error& e) {
    extract_error = e.what();
  }
  const bool agree = extract_error.empty() ? same_factor_set(brute, extracted, 1e-8) : brute.empty();
  Json r = {{"command", "oracle"},
            {"h", w.h},
            {"N", w.N},
            {"bruteforce", factors_json(brute)},
            {"extracted", factors_json(extracted)},
            {"agree", agree},
            {"timestamp", timestamp()}};
  if (!extract_error.empty()) r["extract_error"] = extract_error;
  emit(r, a.out);
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torelli-lab: elliptic surfaces, IVHS synthesis and Torelli recovery"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "random general surface (or one with I2 fibers)");
  g->add_option("--h", gen.h, "geometric genus")->required();
  g->add_option("--seed", gen.seed);
  g->add_option("--i2", gen.i2, "comma-separated rational points for I2 fibers");
  g->add_option("-o,--output", gen.out);

  std::string an_in, an_out;
  auto* an = app.add_subcommand("analyze", "invariants, fibers, Z, genericity");
  an->add_option("surface", an_in)->required()->check(CLI::ExistingFile);
  an->add_option("-o,--output", an_out);

  IvhsArgs iv;
  auto* ivc = app.add_subcommand("ivhs", "synthesize an IVHS presentation");
  ivc->add_option("surface", iv.surface)->required()->check(CLI::ExistingFile);
  ivc->add_option("--seed", iv.seed);
  ivc->add_option("-o,--output", iv.out);
  ivc->add_option("--emit-truth", iv.truth, "write the ground truth to this file");
  ivc->add_option("--lambda-min", iv.lambda_min);
  ivc->add_option("--lambda-max", iv.lambda_max);
  ivc->add_option("--mixer-cond", iv.mixer_cond);

  std::string rc_in, rc_truth, rc_out;
  std::uint64_t rc_seed = 1;
  auto* rc = app.add_subcommand("recover", "presentation file -> recovered geometry");
  rc->add_option("presentation", rc_in)->required()->check(CLI::ExistingFile);
  rc->add_option("--truth", rc_truth);
  rc->add_option("--seed", rc_seed);
  rc->add_option("-o,--output", rc_out);

  RoundtripArgs rt;
  auto* rtc = app.add_subcommand("roundtrip", "synthesize, extract, interpolate, match");
  rtc->add_option("--h", rt.h)->required();
  rtc->add_option("--seed", rt.seed, "first seed when --seeds is absent");
  rtc->add_option("--seeds", rt.seeds)->delimiter(',');
  rtc->add_option("--trials", rt.trials);
  rtc->add_flag("--corrupt-span", rt.corrupt);
  rtc->add_flag("--timings", rt.timings, "include stage timings (not deterministic)");
  rtc->add_option("--match-threshold", rt.match_threshold);
  rtc->add_option("-o,--output", rt.out);

  PlumbArgs pl;
  auto* plc = app.add_subcommand("plumb-verify", "exact residue identities");
  plc->add_option("--order", pl.order);
  plc->add_option("--trials", pl.trials);
  plc->add_option("--seed", pl.seed);
  plc->add_option("--input", pl.input, "jet coefficient file");
  plc->add_option("-o,--output", pl.out);

  OracleArgs orc;
  auto* oc = app.add_subcommand("oracle", "brute-force rank-one cross-check on tiny instances");
  oc->add_option("--input", orc.input);
  oc->add_option("--seed", orc.seed);
  oc->add_flag("--random-span", orc.random_span, "use a random 3-dim span of 2x3 matrices");
  oc->add_option("-o,--output", orc.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*an) return cmd_analyze(an_in, an_out);
    if (*ivc) return cmd_ivhs(iv);
    if (*rc) return cmd_recover(rc_in, rc_truth, rc_seed, rc_out);
    if (*rtc) return cmd_roundtrip(rt);
    if (*plc) return cmd_plumb_verify(pl);
    if (*oc) return cmd_oracle(orc);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [" << app.get_subcommands().front()->get_name() << "]: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
