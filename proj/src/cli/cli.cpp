#include "affres/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "affres/errors.hpp"
#include "affres/report_json.hpp"
#include "affres/version.hpp"

namespace affres::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  unsigned jobs = 1;
  std::string format = "json";
  bool require_invariance = false;
  std::string plot_path;
};

// Echo of everything that determines a report. wall_time_ms is the only
// field allowed to differ between identical runs.
struct Manifest {
  std::string subcommand;
  Json params = Json::object();
  std::vector<std::string> artifacts;
  std::string outcome;

  Json to_json(const Globals& g, double wall_ms) const {
    return Json{{"subcommand", subcommand},
                {"params", params},
                {"master_seed", g.seed},
                {"tol", g.tol},
                {"jobs", g.jobs},
                {"library_version", kLibraryVersion},
                {"artifacts", artifacts},
                {"outcome", outcome},
                {"wall_time_ms", wall_ms}};
  }
};

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

long long parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("not an integer: '" + s + "'");
  return v;
}

std::vector<long long> parse_int_list(const std::vector<std::string>& tokens) {
  std::vector<long long> out;
  for (const auto& t : tokens)
    for (const auto& piece : split(t, ", ")) out.push_back(parse_int(piece));
  return out;
}

GeneratorSet parse_generators(const AffineGroup& group, const std::vector<std::string>& tokens) {
  std::vector<AffineMap> maps;
  for (const auto& t : tokens)
    for (const auto& piece : split(t, " ;")) maps.push_back(group.parse(piece));
  return GeneratorSet(std::move(maps));
}

Json generators_json(const GeneratorSet& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(AffineGroup::format(g));
  return out;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(std::ostream& out, const Json& doc, const Globals& g) {
  if (g.format == "table") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [key, value] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
    out << '\n';
  } else {
    out << doc.dump() << '\n';
  }
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& lines) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open plot-data file '" + path + "'");
  f << header << '\n';
  for (const auto& l : lines) f << l << '\n';
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// ------------------------------------------------------------ commands ----

struct ConstructArgs {
  u64 p = 0;
  std::vector<std::string> a;
  std::string epsilon;
  std::string dump_path;
  double resource_cap = static_cast<double>(kDefaultResourceCap);
};

int cmd_construct(const ConstructArgs& args, const Globals& g, Manifest& m, Json& report) {
  const auto a_values = parse_int_list(args.a);
  m.params = Json{{"p", args.p}, {"A", a_values}, {"epsilon", args.epsilon},
                  {"require_invariance", g.require_invariance}};
  const Field field(args.p);
  const auto params = ConstructionParams::make(field, std::span<const long long>(a_values), Epsilon::parse(args.epsilon));
  ConstructionOptions opts{static_cast<u128>(args.resource_cap), g.jobs};
  const ConstructionResult result = build_X(params, opts);

  const bool list = result.X.size() <= kMaxListedElements;
  report = to_json(result, list);
  if (!list) {
    const std::string path = args.dump_path.empty() ? "X_p" + std::to_string(args.p) + ".fpset" : args.dump_path;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write bitset dump '" + path + "'");
    write_fpset(f, result.X);
    m.artifacts.push_back(path);
    report["X"]["dump"] = path;
  }
  const bool pass = result.defects.pass;
  m.outcome = pass ? "pass" : "fail";
  return g.require_invariance && !pass ? kCheckFailed : kOk;
}

struct VerifyArgs {
  u64 p = 0;
  std::vector<std::string> a;
  std::string epsilon;
  std::vector<std::string> set;
  std::string set_file;
  std::string report_file;
};

int verify_report(const Json& doc, const Globals& g, Json& report) {
  const Json& manifest = doc.at("manifest");
  const Json& body = doc.at("report");
  const std::string sub = manifest.at("subcommand").get<std::string>();
  const u64 p = manifest.at("params").at("p").get<u64>();
  const Field field(p);
  Json checks = Json::array();
  bool ok = true;
  auto check = [&](const std::string& name, bool good) {
    checks.push_back(Json{{"check", name}, {"ok", good}});
    ok = ok && good;
  };

  if (sub == "construct") {
    const Epsilon eps = epsilon_from_json(body.at("defects").at("epsilon"));
    const FpSubset X = subset_from_json(body.at("X"));
    std::vector<FpElem> a;
    for (const auto& e : body.at("defects").at("entries")) a.push_back(FpElem{e.at("a").get<u64>()});
    const DefectReport fresh = invariance_defects(field, X, a, eps);
    check("set_size", fresh.set_size == body.at("X").at("size").get<u64>());
    check("defects", to_json(fresh) == body.at("defects"));
  } else if (sub == "resist") {
    const AffineGroup group(field);
    const GeneratorSet gens = parse_generators(group, body.at("generators").get<std::vector<std::string>>());
    if (body.at("trivial").get<bool>()) {
      check("trivial", std::all_of(gens.begin(), gens.end(), [](const AffineMap& f) { return f == AffineMap{}; }));
    } else {
      const FpSubset X = subset_from_json(body.at("X"));
      const double rayleigh = rayleigh_quotient(averaged_operator(group, gens), meanzero_indicator(X));
      check("rayleigh_bound", std::abs(rayleigh - body.at("rayleigh_bound").get<double>()) <= 1e-12);
      std::vector<u64> shifts;
      for (const auto& f : gens) shifts.push_back(shift_defect(group, X, f));
      check("shift_defects", Json(shifts) == body.at("shift_defects"));
      const Epsilon internal = epsilon_from_json(body.at("epsilon_internal"));
      std::vector<FpElem> a;
      for (const auto& v : body.at("A")) a.push_back(FpElem{v.get<u64>()});
      check("defects", to_json(invariance_defects(field, X, a, internal)) == body.at("defects"));
      const Epsilon target = epsilon_from_json(body.at("epsilon_target"));
      const bool certified = rayleigh >= 1.0 - target.value() && 2 * X.size() <= p;
      check("certified", certified == body.at("certified").get<bool>());
      check("op_norm_dominates_witness",
            body.at("op_norm").at("value").get<double>() >= rayleigh - g.tol);
    }
  } else {
    throw InvalidArgument("verify --report supports construct and resist reports, got '" + sub + "'");
  }
  report = Json{{"verified_subcommand", sub}, {"checks", std::move(checks)}, {"pass", ok}};
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const VerifyArgs& args, const Globals& g, Manifest& m, Json& report) {
  if (!args.report_file.empty()) {
    m.params = Json{{"report", args.report_file}};
    std::ifstream f(args.report_file);
    if (!f) throw InvalidArgument("cannot open report '" + args.report_file + "'");
    Json doc;
    try {
      doc = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
    }
    const int code = verify_report(doc, g, report);
    m.outcome = code == kOk ? "pass" : "fail";
    return code;
  }

  const auto a_values = parse_int_list(args.a);
  const Epsilon eps = Epsilon::parse(args.epsilon.empty() ? "1" : args.epsilon);
  std::optional<FpSubset> X;
  if (!args.set_file.empty()) {
    std::ifstream f(args.set_file, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open set file '" + args.set_file + "'");
    X = read_fpset(f);
  } else {
    if (args.p == 0) throw InvalidArgument("verify needs -p with -X");
    std::vector<u64> elems;
    for (long long v : parse_int_list(args.set)) elems.push_back(Field(args.p).elem(v).value);
    X = FpSubset::from_elements(args.p, elems);
  }
  const u64 p = X->modulus();
  if (args.p != 0 && args.p != p) throw InvalidArgument("-p does not match the set's modulus");
  m.params = Json{{"p", p}, {"A", a_values}, {"epsilon", eps.to_string()},
                  {"set_file", args.set_file}, {"set_size", X->size()}};
  const Field field(p);
  std::vector<FpElem> a;
  for (long long v : a_values) a.push_back(field.elem(v));
  const DefectReport defects = invariance_defects(field, *X, a, eps);
  report = to_json(defects);
  m.outcome = defects.pass ? "pass" : "fail";
  return defects.pass ? kOk : kCheckFailed;
}

struct GroupArgs {
  u64 p = 0;
  std::vector<std::string> gens;
  std::string epsilon;
};

int cmd_resist(const GroupArgs& args, const Globals& g, Manifest& m, Json& report) {
  m.params = Json{{"p", args.p}, {"S", args.gens}, {"epsilon", args.epsilon}};
  const AffineGroup group(args.p);
  const GeneratorSet gens = parse_generators(group, args.gens);
  m.params["S"] = generators_json(gens);
  const ResistanceReport r =
      resist_certificate(group, gens, Epsilon::parse(args.epsilon), CertificateOptions{g.tol, g.seed, kDefaultResourceCap, g.jobs});
  report = to_json(r, !r.X || r.X->size() <= kMaxListedElements);
  m.outcome = r.certified ? "certified" : "not_certified";
  return r.certified ? kOk : kCheckFailed;
}

int cmd_expand(const GroupArgs& args, const Globals& g, Manifest& m, Json& report) {
  const AffineGroup group(args.p);
  const GeneratorSet gens = parse_generators(group, args.gens);
  m.params = Json{{"p", args.p}, {"S", generators_json(gens)}};
  const ExpansionProfile profile = expansion_profile(group, gens, g.tol, g.seed);
  report = to_json(profile);
  m.outcome = "ok";
  if (!g.plot_path.empty()) {
    std::vector<std::string> lines;
    for (std::size_t j = 0; j < profile.character_norms.size(); ++j)
      lines.push_back("character," + std::to_string(j + 1) + "," + fmt_double(profile.character_norms[j]));
    lines.push_back("standard,0," + fmt_double(profile.standard_norm.value));
    write_csv(g.plot_path, "irrep,index,norm", lines);
    m.artifacts.push_back(g.plot_path);
  }
  return kOk;
}

struct TrialArgs {
  std::string group = "cyclic";
  u64 n = 0;
  u64 k = 1;
  u64 trials = 1;
  std::vector<u64> ns;
  std::string elements;
};

void emit_trials(std::ostream& out, const std::vector<TrialRecord>& recs, const Globals& g, const Json& extra = {}) {
  if (g.format == "table") return;
  for (const auto& r : recs) {
    Json line = to_json(r);
    if (!extra.is_null())
      for (auto it = extra.begin(); it != extra.end(); ++it) line[it.key()] = it.value();
    line["type"] = "trial";
    out << line.dump() << '\n';
  }
}

int cmd_alon_roichman(const TrialArgs& args, const Globals& g, Manifest& m, Json& report, std::ostream& out) {
  if (args.group != "cyclic" && args.group != "affine")
    throw InvalidArgument("--group must be cyclic or affine");
  TrialConfig cfg{g.seed, args.trials, args.group == "affine" ? GroupSpec::affine(args.n) : GroupSpec::cyclic(args.n),
                  args.k, g.tol, g.jobs};
  m.params = Json{{"group", args.group}, {"n", args.n}, {"k", args.k}, {"trials", args.trials}};
  const auto recs = alon_roichman_trial(cfg);
  emit_trials(out, recs, g);
  double worst = 0.0;
  double sum = 0.0;
  for (const auto& r : recs) {
    worst = std::max(worst, r.max_norm);
    sum += r.max_norm;
  }
  report = Json{{"trials", recs.size()}, {"max_of_max_norms", worst},
                {"mean_max_norm", sum / static_cast<double>(recs.size())}};
  m.outcome = "ok";
  if (!g.plot_path.empty()) {
    std::vector<std::string> lines;
    for (const auto& r : recs) lines.push_back(std::to_string(r.trial) + "," + std::to_string(r.seed) + "," + fmt_double(r.max_norm));
    write_csv(g.plot_path, "trial,seed,max_norm", lines);
    m.artifacts.push_back(g.plot_path);
  }
  return kOk;
}

int cmd_lmr(const TrialArgs& args, const Globals& g, Manifest& m, Json& report, std::ostream& out) {
  if (!args.elements.empty()) {
    std::vector<S3Tuple> tuples;
    Json echo = Json::array();
    for (const auto& tup : split(args.elements, ";")) {
      S3Tuple t;
      for (const auto& e : split(tup, " ")) t.push_back(parse_s3(e));
      Json words = Json::array();
      for (S3Elem e : t) words.push_back(format_s3(e));
      echo.push_back(std::move(words));
      tuples.push_back(std::move(t));
    }
    if (args.n != 0 && !tuples.empty() && tuples.front().size() != args.n)
      throw InvalidArgument("-n does not match the tuple length in --elements");
    if (args.k > 1 && tuples.size() != args.k) throw InvalidArgument("-k does not match the number of tuples");
    m.params = Json{{"elements", echo}};
    report = Json{{"norm", to_json(lmr_norm(tuples, g.tol, g.seed))}};
    m.outcome = "ok";
    return kOk;
  }
  std::vector<u64> ns = args.ns.empty() ? std::vector<u64>{4, 8, 12} : args.ns;
  if (args.n != 0 && args.ns.empty()) ns = {args.n};
  TrialConfig cfg{g.seed, args.trials, GroupSpec::s3_tensor(ns.front()), args.k, g.tol, g.jobs};
  m.params = Json{{"ns", ns}, {"k", args.k}, {"trials", args.trials}};
  const auto rows = lmr_survey(cfg, ns);
  Json table = Json::array();
  std::vector<std::string> csv;
  for (const auto& r : rows) {
    emit_trials(out, r.records, g, Json{{"n", r.n}});
    table.push_back(to_json(r));
    csv.push_back(std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.trials) + "," +
                  fmt_double(r.frequency_unit_norm) + "," + fmt_double(r.mean_norm));
  }
  report = Json{{"empirical", true}, {"rows", std::move(table)}};
  m.outcome = "ok";
  if (!g.plot_path.empty()) {
    write_csv(g.plot_path, "n,k,trials,frequency_unit_norm,mean_norm", csv);
    m.artifacts.push_back(g.plot_path);
  }
  return kOk;
}

struct OracleArgs {
  u64 p = 0;
  std::vector<std::string> a;
  std::string epsilon;
  u64 k = 1;
  u64 samples = 20;
  u64 budget = ~u64{0};
};

int cmd_oracle(const OracleArgs& args, Manifest& m, Json& report) {
  std::vector<u64> a;
  for (long long v : parse_int_list(args.a)) a.push_back(Field(args.p).elem(v).value);
  m.params = Json{{"p", args.p}, {"A", a}, {"epsilon", args.epsilon}, {"budget", args.budget}};
  const OracleResult r = min_invariant_set(args.p, a, Epsilon::parse(args.epsilon), args.budget);
  report = to_json(r);
  report["empirical"] = true;
  m.outcome = r.exhausted ? "exhausted" : "budget_reached";
  return kOk;
}

int cmd_scan(const OracleArgs& args, const Globals& g, Manifest& m, Json& report) {
  m.params = Json{{"p", args.p}, {"k", args.k}, {"epsilon", args.epsilon}, {"samples", args.samples}, {"budget", args.budget}};
  const ScanResult scan = conjecture_scan(args.p, args.k, Epsilon::parse(args.epsilon), args.samples, g.seed, args.budget);
  report = to_json(scan);
  report["empirical"] = true;
  m.outcome = scan.complete ? "complete" : "budget_reached";
  if (!g.plot_path.empty()) {
    std::vector<std::string> lines;
    for (const auto& row : scan.rows) {
      std::string a;
      for (u64 v : row.a_values) a += (a.empty() ? "" : " ") + std::to_string(v);
      lines.push_back(a + "," + std::to_string(row.result.min_size) + "," + (row.result.exhausted ? "1" : "0"));
    }
    write_csv(g.plot_path, "A,min_size,exhausted", lines);
    m.artifacts.push_back(g.plot_path);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost-invariant sets and resistance certificates for Aff(F_p)", "affres"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "master seed for every random stream")->capture_default_str();
  app.add_option("--tol", g.tol, "power-iteration tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "worker threads (outputs do not depend on it)")->capture_default_str()->check(CLI::Range(1U, 256U));
  app.add_option("--format", g.format, "json or table")->capture_default_str()->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--require-invariance", g.require_invariance, "construct: exit 1 unless every defect <= eps|X|");
  app.add_option("--emit-plot-data", g.plot_path, "write a CSV summary to this path");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "build P, Q and the almost-invariant set X");
  construct->add_option("-p", construct_args.p, "prime modulus")->required();
  construct->add_option("-A", construct_args.a, "nonzero elements, comma separated")->required();
  construct->add_option("-e,--epsilon", construct_args.epsilon, "epsilon as decimal or fraction")->required();
  construct->add_option("--dump", construct_args.dump_path, "FPSET1 path used when |X| > 10^4");
  construct->add_option("--resource-cap", construct_args.resource_cap, "largest admissible size_bound");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "recompute defects of a set, or re-verify a saved report");
  verify->add_option("-p", verify_args.p, "prime modulus");
  verify->add_option("-A", verify_args.a, "nonzero elements, comma separated");
  verify->add_option("-e,--epsilon", verify_args.epsilon, "epsilon");
  verify->add_option("-X", verify_args.set, "set elements, comma separated");
  verify->add_option("--set-file", verify_args.set_file, "FPSET1 bitset file");
  verify->add_option("--report", verify_args.report_file, "JSON report from construct or resist");

  GroupArgs resist_args;
  auto* resist = app.add_subcommand("resist", "certify that the standard representation resists S");
  resist->add_option("-p", resist_args.p, "prime modulus")->required();
  resist->add_option("-S", resist_args.gens, "generators as a,b pairs")->required();
  resist->add_option("-e,--epsilon", resist_args.epsilon, "target epsilon in (0,1)")->required();

  GroupArgs expand_args;
  auto* expand = app.add_subcommand("expand", "per-irrep norms of the averaged operator");
  expand->add_option("-p", expand_args.p, "prime modulus")->required();
  expand->add_option("-S", expand_args.gens, "generators as a,b pairs")->required();

  TrialArgs ar_args;
  auto* ar = app.add_subcommand("alon-roichman", "random generator sets in Z/n or Aff(F_p)");
  ar->add_option("--group", ar_args.group, "cyclic or affine")->capture_default_str();
  ar->add_option("-n", ar_args.n, "n for Z/n, p for Aff(F_p)")->required();
  ar->add_option("-k", ar_args.k, "generators per trial")->required();
  ar->add_option("--trials", ar_args.trials, "number of trials")->capture_default_str();

  TrialArgs lmr_args;
  lmr_args.k = 2;
  lmr_args.trials = 200;
  auto* lmr = app.add_subcommand("lmr", "tensor powers of the 2-dim irrep of S_3");
  lmr->add_option("-n", lmr_args.n, "tensor power");
  lmr->add_option("-k", lmr_args.k, "tuples per trial")->capture_default_str();
  lmr->add_option("--ns", lmr_args.ns, "survey tensor powers")->delimiter(',');
  lmr->add_option("--trials", lmr_args.trials, "survey trials per n")->capture_default_str();
  lmr->add_option("--elements", lmr_args.elements, "explicit tuples: ';' between tuples, ' ' within");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "exhaustive smallest almost-invariant set (p <= 24)");
  oracle->add_option("-p", oracle_args.p, "prime modulus")->required();
  oracle->add_option("-A", oracle_args.a, "nonzero elements")->required();
  oracle->add_option("-e,--epsilon", oracle_args.epsilon, "epsilon")->required();
  oracle->add_option("--budget", oracle_args.budget, "maximum subsets examined");

  OracleArgs scan_args;
  auto* scan = app.add_subcommand("scan", "oracle over random A");
  scan->add_option("-p", scan_args.p, "prime modulus")->required();
  scan->add_option("-k", scan_args.k, "|A|")->required();
  scan->add_option("-e,--epsilon", scan_args.epsilon, "epsilon")->required();
  scan->add_option("--samples", scan_args.samples, "number of random A")->capture_default_str();
  scan->add_option("--budget", scan_args.budget, "total subsets examined");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"affres"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  Manifest m;
  m.subcommand = app.get_subcommands().front()->get_name();
  Json report;
  const auto start = std::chrono::steady_clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  auto fail = [&](int code, const std::string& kind, const std::string& message, const Json& extra = {}) {
    m.outcome = kind;
    Json error{{"kind", kind}, {"message", message}};
    if (!extra.is_null())
      for (auto it = extra.begin(); it != extra.end(); ++it) error[it.key()] = it.value();
    emit(out, Json{{"manifest", m.to_json(g, wall_ms())}, {"error", error}}, g);
    err << kind << ": " << message << '\n';
    return code;
  };

  int code = kOk;
  try {
    if (construct->parsed()) code = cmd_construct(construct_args, g, m, report);
    else if (verify->parsed()) code = cmd_verify(verify_args, g, m, report);
    else if (resist->parsed()) code = cmd_resist(resist_args, g, m, report);
    else if (expand->parsed()) code = cmd_expand(expand_args, g, m, report);
    else if (ar->parsed()) code = cmd_alon_roichman(ar_args, g, m, report, out);
    else if (lmr->parsed()) code = cmd_lmr(lmr_args, g, m, report, out);
    else if (oracle->parsed()) code = cmd_oracle(oracle_args, m, report);
    else if (scan->parsed()) code = cmd_scan(scan_args, g, m, report);
  } catch (const NotCertifiable& e) {
    return fail(kNotCertifiable, "not_certifiable", e.what(), Json{{"advisory_min_p", e.advisory_min_p()}});
  } catch (const ResourceLimit& e) {
    return fail(kResourceLimit, "resource_limit", e.what());
  } catch (const InvalidArgument& e) {
    return fail(kUsage, "usage", e.what());
  }

  Json doc{{"manifest", m.to_json(g, wall_ms())}, {"report", std::move(report)}};
  if (m.subcommand == "alon-roichman" || (m.subcommand == "lmr" && lmr_args.elements.empty())) doc["type"] = "summary";
  emit(out, doc, g);
  return code;
}

}  // namespace affres::cli
