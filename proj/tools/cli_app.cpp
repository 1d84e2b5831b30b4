#include "cli_app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "fefwork/certify.hpp"
#include "fefwork/io.hpp"

namespace fefwork::cli {

namespace {

struct Config {
  std::uint64_t seed = 0;
  int restarts = 16;
  double tolSdp = 1e-9;
  double epsilon = 0.05;
  double kbt = 1.0;
  std::string format = "json";
  std::string signConvention = "lowering-is-gain";

  void validate() const {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ValidationError("epsilon must lie in (0, 0.5]");
    if (!(tolSdp > 0.0)) throw ValidationError("tol must be positive");
    if (restarts < 1) throw ValidationError("restarts must be >= 1");
    TemperatureScale check(kbt);
    (void)check;
    parseSignConvention(signConvention);
  }

  ReportOptions reportOptions() const {
    ReportOptions o;
    o.seeSaw.restarts = restarts;
    o.seeSaw.seed = seed;
    o.tolSdp = tolSdp;
    o.epsilon = epsilon;
    o.kbt = kbt;
    return o;
  }
};

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return json::parse(in);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

/// Flattens annotated JSON into dotted key/value rows.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && j.contains("value") && j.contains("relation")) {
    rows.emplace_back(prefix, j.at("value").is_number() ? fmt(j.at("value").get<double>())
                                                         : j.at("value").dump());
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  if (j.is_array()) return;  // matrices are only emitted in json
  rows.emplace_back(prefix, j.is_number_float() ? fmt(j.get<double>()) : j.dump());
}

void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

int cmdReport(const Config& cfg, const std::string& stateFile, std::ostream& out) {
  const BipartiteState state = loadStateFile(stateFile);
  emit(toJson(buildReport(state, cfg.reportOptions())), cfg.format, out);
  return kExitOk;
}

int cmdIsotropicScan(const Config& cfg, int d, double p0, double p1, int steps, std::ostream& out) {
  if (steps < 1) throw ValidationError("steps must be >= 1");
  const TemperatureScale t(cfg.kbt);
  const IsotropicParams lo(d, p0), hi(d, p1);  // validates the range
  if (p1 < p0) throw ValidationError("isotropic-scan: p1 must be >= p0");
  const IsotropicThresholds th = isotropicThresholds(d, t);
  const std::vector<std::pair<const char*, double>> marks = {
      {"entanglement", th.fefEntanglement},
      {"lhs-povm", th.fefLhsPovm},
      {"lhs-projective", th.fefLhsProjective}};

  const int rows = (p0 == p1) ? 1 : steps;
  std::ostringstream body;
  body.imbue(std::locale::classic());
  json jrows = json::array();
  body << "# energies in units of kBT; kBT=" << fmt(cfg.kbt) << "; d=" << d << '\n';
  body << "p,F,S,S_A_given_B,erasure_cost_upper,erasure_gain_lower,extract_lower,above,crossing\n";
  double prevF = -1.0;
  for (int k = 0; k < rows; ++k) {
    const double p = rows == 1 ? p0 : p0 + k * (p1 - p0) / (rows - 1);
    const IsotropicParams params(d, p);
    const double f = isotropicFef(params);
    const BipartiteState rho = materialize(params);
    const EntropyReport e = entropyReport(rho);
    const auto gain = erasureGainBound(f, d, t);
    std::string above, crossing;
    for (const auto& [name, value] : marks) {
      if (f > value) above += (above.empty() ? "" : "|") + std::string(name);
      if (k > 0 && ((prevF < value && f >= value) || (prevF >= value && f < value)))
        crossing += (crossing.empty() ? "" : "|") + std::string(name);
    }
    const double cost = erasureCostUpper(e, t).inKbt;
    const double extract = extractionLower(e, d, t).inKbt;
    body << fmt(p) << ',' << fmt(f) << ',' << fmt(e.S) << ',' << fmt(e.S_AgivenB) << ',' << fmt(cost)
         << ',' << (gain ? fmt(gain->inKbt) : "") << ',' << fmt(extract) << ',' << above << ','
         << crossing << '\n';
    jrows.push_back({{"p", p}, {"F", f}, {"S", e.S}, {"S_A_given_B", e.S_AgivenB},
                     {"erasure_cost_upper", cost},
                     {"erasure_gain_lower", gain ? json(gain->inKbt) : json(nullptr)},
                     {"extract_lower", extract}, {"above", above}, {"crossing", crossing}});
    prevF = f;
  }
  if (cfg.format == "json")
    out << json{{"d", d}, {"kbt", cfg.kbt}, {"rows", jrows}}.dump(2) << '\n';
  else
    out << body.str();
  return kExitOk;
}

int cmdCertify(const Config& cfg, int d, int samples, std::ostream& out) {
  CertifyOptions o;
  o.seed = cfg.seed;
  o.seeSaw.restarts = cfg.restarts;
  o.tolSdp = cfg.tolSdp;
  o.kbt = cfg.kbt;
  const CertifySummary s = certify(d, samples, o);
  auto list = [](const std::vector<Violation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back({{"sample", v.sample}, {"check", v.check}, {"detail", v.detail}});
    return a;
  };
  json j = {{"d", s.d}, {"samples", s.samples}, {"checked", s.checked},
            {"violations", list(s.violations)}, {"informational", list(s.informational)}};
  emit(j, cfg.format == "csv" ? "table" : cfg.format, out);
  return s.violations.empty() ? kExitOk : kExitViolation;
}

int cmdPipeline(const Config& cfg, const std::string& stateFile, const std::string& processFile,
                const std::string& kind, const std::string& erasureBound, std::ostream& out) {
  const TemperatureScale t(cfg.kbt);
  const ReplayOptions ro{cfg.kbt, parseSignConvention(cfg.signConvention)};
  std::optional<ProcessSpec> spec;
  if (!processFile.empty()) {
    const std::string base = std::filesystem::path(processFile).parent_path().string();
    spec = processFromJson(readJsonFile(processFile), t, base.empty() ? "." : base);
  } else if (kind == "erase-extract") {
    const BipartiteState state = loadStateFile(stateFile);
    Energy wEr;
    if (erasureBound == "fef") {
      const auto g = erasureGainBound(fefSeeSaw(state, cfg.reportOptions().seeSaw).value,
                                   state.localDim(), t);
      if (!g) throw ValidationError("pipeline: the FEF erasure bound needs F > 1/d");
      wEr = *g;
    } else {
      wEr = -erasureCostUpper(entropyReport(state), t);
    }
    spec = buildEraseExtractPipeline(state, wEr, t);
  } else {
    const auto phi = pureStateFromJson(readJsonFile(stateFile));
    if (!phi) throw ValidationError("pipeline --kind twirl: input must be a pure state");
    spec = buildTwirlPipeline(*phi, t);
    if (!spec) throw ValidationError("pipeline --kind twirl: not applicable, F[T(phi)] <= 1/d");
  }
  const WorkLedger ledger = replay(*spec, ro);
  const json j = toJson(ledger, ro);
  if (cfg.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    const char sep = cfg.format == "csv" ? ',' : '\t';
    out << "# work in units of kBT; kBT=" << fmt(cfg.kbt) << '\n';
    out << "index" << sep << "kind" << sep << "label" << sep << "work_gain\n";
    for (const auto& e : ledger.perAction)
      out << e.actionIndex << sep << e.kind << sep << e.label << sep << fmt(e.workGain.inKbt) << '\n';
    out << "total" << sep << sep << toString(ledger.classification) << sep << fmt(ledger.total.inKbt)
        << '\n';
  }
  return kExitOk;
}

int cmdTwirl(const Config& cfg, const std::string& stateFile, std::ostream& out) {
  const json input = readJsonFile(stateFile);
  const BipartiteState state = stateFromJson(input);
  const IsotropicParams iso = twirl(state);
  json j = toJson(iso);
  if (auto phi = pureStateFromJson(input))
    j["work_cost"] = energyJson(twirlWorkCost(*phi, TemperatureScale(cfg.kbt)), "twirl-work-cost", "formula");
  emit(j, cfg.format, out);
  return kExitOk;
}

int cmdMinEntropy(const Config& cfg, const std::string& stateFile, std::ostream& out) {
  const BipartiteState state = loadStateFile(stateFile);
  QOptions qo;
  qo.tol = cfg.tolSdp;
  SeeSawOptions so = cfg.reportOptions().seeSaw;
  qo.fefUnitary = fefSeeSaw(state, so).optimalU;
  json j = toJson(qFunction(state, qo), state.localDim());
  j["h_min_smooth_lower"] = scalarJson(smoothMinEntropyLower(state), "bits",
                                       "smooth-min-entropy-lower-bound", "bound");
  emit(j, cfg.format, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fully entangled fraction, entropies and work bounds for bipartite states"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("FEFWORK_SEED");
  app.add_option("--restarts", cfg.restarts, "see-saw random restarts")->envname("FEFWORK_RESTARTS");
  app.add_option("--tol", cfg.tolSdp, "SDP duality-gap tolerance")->envname("FEFWORK_TOL");
  app.add_option("--epsilon", cfg.epsilon, "smoothing parameter in (0, 0.5]")->envname("FEFWORK_EPSILON");
  app.add_option("--kbt", cfg.kbt, "k_B T (energy scale)")->envname("FEFWORK_KBT");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->envname("FEFWORK_FORMAT");
  app.add_option("--sign-convention", cfg.signConvention, "raise/lower work sign")
      ->check(CLI::IsMember({"lowering-is-gain", "raising-is-gain"}))
      ->envname("FEFWORK_SIGN_CONVENTION");

  std::string stateFile, processFile, erasureBound = "conditional-entropy";
  int d = 2, steps = 11, samples = 100;
  std::string kind = "erase-extract";
  double p0 = 0.0, p1 = 1.0;

  auto* report = app.add_subcommand("report", "full bounds report for one state");
  report->add_option("state", stateFile, "state file")->required();

  auto* scan = app.add_subcommand("isotropic-scan", "sweep the isotropic family");
  scan->add_option("--d", d)->check(CLI::Range(2, 64));
  scan->add_option("--p0", p0);
  scan->add_option("--p1", p1);
  scan->add_option("--steps", steps)->check(CLI::PositiveNumber);

  auto* cert = app.add_subcommand("certify", "run the inequality suite on random states");
  cert->add_option("--d", d)->check(CLI::Range(2, 16));
  cert->add_option("--samples", samples)->check(CLI::PositiveNumber);

  auto* pipe = app.add_subcommand("pipeline", "replay an erasure/extraction pipeline");
  pipe->add_option("state", stateFile, "state file");
  pipe->add_option("--kind", kind, "erase-extract or twirl")->check(CLI::IsMember({"erase-extract", "twirl"}));
  pipe->add_option("--process", processFile, "replay a process spec instead");
  pipe->add_option("--erasure-bound", erasureBound, "source of the declared erasure work")
      ->check(CLI::IsMember({"conditional-entropy", "fef"}));

  auto* tw = app.add_subcommand("twirl", "closed-form U(x)U* twirl");
  tw->add_option("state", stateFile, "state file")->required();

  auto* me = app.add_subcommand("minentropy", "conditional min-entropy via the Q SDP");
  me->add_option("state", stateFile, "state file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInput;
  }

  std::ostringstream buffer;  // no partial output on failure
  int code = kExitOk;
  try {
    cfg.validate();
    if (report->parsed()) code = cmdReport(cfg, stateFile, buffer);
    else if (scan->parsed()) code = cmdIsotropicScan(cfg, d, p0, p1, steps, buffer);
    else if (cert->parsed()) code = cmdCertify(cfg, d, samples, buffer);
    else if (pipe->parsed()) {
      if (stateFile.empty() && processFile.empty())
        throw ValidationError("pipeline: give a state file or --process");
      code = cmdPipeline(cfg, stateFile, processFile, kind, erasureBound, buffer);
    } else if (tw->parsed()) code = cmdTwirl(cfg, stateFile, buffer);
    else if (me->parsed()) code = cmdMinEntropy(cfg, stateFile, buffer);
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidProcess& e) {
    err << "invalid process: " << e.what() << '\n';
    return kExitInput;
  }
  out << buffer.str();
  return code;
}

}  // namespace fefwork::cli
