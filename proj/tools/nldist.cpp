// nldist: command-line front end for box generation, CGLMP evaluation,
// comparator-wiring distillation, sweeps and the verification suite.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nldist/analysis.hpp"
#include "nldist/box.hpp"
#include "nldist/cglmp.hpp"
#include "nldist/distillation.hpp"
#include "nldist/io.hpp"
#include "nldist/parallel.hpp"
#include "nldist/verify.hpp"
#include "nldist/wiring.hpp"

namespace {

using namespace nldist;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int finite_dim(const std::string& text) {
  const Dim d = Dim::parse(text);
  if (d.is_infinite()) throw UsageError("--d inf is only accepted by 'sweep' and 'region'");
  return d.value();
}

// Destination stream: the file named by `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Options {
  // shared
  std::string d = "2";
  std::string out;
  std::string family;
  std::string protocol = "A";
  double epsilon = 0.0;
  double xi = 0.0;
  double gamma = 0.0;
  double invariant_tol = kInvariantTol;
  double oracle_tol = kOracleTol;

  std::string in;
  std::string wiring;
  int rounds = 1;
  int steps = 100;
  std::vector<std::string> dims;
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 20240101;
  int samples = 1000;
  bool with_box = false;
};

Box generated_box(const Options& o) {
  const int d = finite_dim(o.d);
  const std::string& f = o.family;
  if (f == "nl") return make_nl_box(d);
  if (f == "lc") return make_lc_box(d);
  if (f == "ld") return make_ld_box(d);
  if (f == "mixed") return make_mixed_box(d);
  if (f == "mix-lc") return build_mixture({o.epsilon, LocalFamily::Lc, d});
  if (f == "mix-ld") return build_mixture({o.epsilon, LocalFamily::Ld, d});
  if (f == "noisy-ld") return build_noisy({o.xi, o.gamma, LocalFamily::Ld, d});
  if (f == "noisy-lc") return build_noisy({o.xi, o.gamma, LocalFamily::Lc, d});
  throw UsageError("unknown family '" + f + "'");
}

int run_gen(const Options& o) {
  const json j = box_to_json(generated_box(o));
  if (o.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(o.out, j);
  }
  return kExitOk;
}

int run_cglmp(const Options& o) {
  const Box box = read_box_file(o.in, o.invariant_tol);
  json j = cglmp_to_json(cglmp_value(box));
  j["d"] = box.dim();
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int run_distill(const Options& o) {
  const Protocol protocol = parse_protocol(o.protocol);
  Box box = [&] {
    if (!o.in.empty()) return read_box_file(o.in, o.invariant_tol);
    if (o.family.empty()) throw UsageError("distill needs --in or --family");
    return build_mixture({o.epsilon, parse_family(o.family), finite_dim(o.d)});
  }();

  DistillationResult result = [&] {
    if (o.wiring.empty() || o.wiring == "comparator-" + std::string(to_string(protocol))) {
      return distill_once(box, protocol);
    }
    if (o.wiring == "comparator-A") return distill_once(box, Protocol::A);
    if (o.wiring == "comparator-B") return distill_once(box, Protocol::B);
    return distill_with(box, read_wiring_file(o.wiring));
  }();

  json j = distillation_to_json(result, o.with_box);
  j["protocol"] = o.wiring.empty() ? "comparator-" + std::string(to_string(protocol)) : o.wiring;
  std::cout << j.dump(2) << '\n';
  if (!o.out.empty()) write_json_file(o.out, box_to_json(result.final_box));
  return kExitOk;
}

int run_iterate(const Options& o) {
  if (o.rounds < 0) throw UsageError("--rounds must be >= 0");
  const Protocol protocol = parse_protocol(o.protocol);
  const LocalFamily family = o.family.empty() ? native_family(protocol) : parse_family(o.family);
  const auto rows = distill_iterate({o.epsilon, family, finite_dim(o.d)}, protocol, o.rounds);
  Output out(o.out);
  write_trajectory_header(out.stream());
  for (const auto& r : rows) write_trajectory_row(out.stream(), r);
  return kExitOk;
}

int run_noisy(const Options& o) {
  const LocalFamily family = o.family.empty() ? LocalFamily::Ld : parse_family(o.family);
  const NoisyParams params{o.xi, o.gamma, family, finite_dim(o.d)};
  json j = distillation_to_json(distill_noisy(params), o.with_box);
  j["xi"] = o.xi;
  j["gamma"] = o.gamma;
  j["mu"] = params.mu();
  j["local_family"] = std::string(to_string(family));
  j["protocol"] = family == LocalFamily::Ld ? "comparator-B" : "comparator-A";
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

std::vector<Dim> parse_dims(const std::vector<std::string>& texts) {
  std::vector<Dim> out;
  for (const std::string& t : texts) {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(Dim::parse(item));
    }
  }
  if (out.empty()) throw UsageError("no dimensions given");
  return out;
}

int run_sweep(const Options& o) {
  const EfficiencyGrid grid{parse_protocol(o.protocol), parse_dims(o.dims), epsilon_grid(o.steps)};
  Output out(o.out);
  write_efficiency_header(out.stream());
  for (const auto& row : efficiency_curve(grid)) write_efficiency_row(out.stream(), row);
  return kExitOk;
}

int run_region(const Options& o) {
  const Dim d = Dim::parse(o.d);
  const auto points = simplex_grid(o.steps);
  Output out(o.out);
  write_region_header(out.stream());
  constexpr std::size_t kChunk = 8192;
  for (std::size_t begin = 0; begin < points.size(); begin += kChunk) {
    const std::size_t end = std::min(points.size(), begin + kChunk);
    const std::vector<std::pair<double, double>> chunk(points.begin() + static_cast<std::ptrdiff_t>(begin),
                                                       points.begin() + static_cast<std::ptrdiff_t>(end));
    for (const auto& row : region_map(chunk, d)) write_region_row(out.stream(), row);
  }
  return kExitOk;
}

int run_verify_cmd(const Options& o) {
  VerifyOptions vo;
  vo.suites = o.suites;
  vo.seed = o.seed;
  vo.oracle_tol = o.oracle_tol;
  vo.invariant_tol = o.invariant_tol;
  vo.samples = o.samples;
  const auto results = run_verify(vo);
  int failed = 0;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.suite << "] " << r.name
              << "  measured=" << format_decimal(r.measured) << " tol=" << format_decimal(r.tolerance);
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Nonsignaling box simulator and nonlocality distillation toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--invariant-tol", o.invariant_tol, "Tolerance for box invariants")
        ->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Write a box as JSON");
  gen->add_option("--family", o.family, "nl, lc, ld, mixed, mix-lc, mix-ld, noisy-ld, noisy-lc")->required();
  gen->add_option("--d", o.d, "Output dimension");
  gen->add_option("--epsilon", o.epsilon, "Nonlocal weight for mix-* families");
  gen->add_option("--xi", o.xi, "NL weight for noisy-* families");
  gen->add_option("--gamma", o.gamma, "Local weight for noisy-* families");
  gen->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* cg = app.add_subcommand("cglmp", "Evaluate CGLMP correlators and value of a box file");
  cg->add_option("in,--in", o.in, "Box JSON file")->required();
  add_tol(cg);

  auto* distill = app.add_subcommand("distill", "Wire two copies of a box");
  distill->add_option("--protocol", o.protocol, "A or B");
  distill->add_option("--in", o.in, "Box JSON file");
  distill->add_option("--family", o.family, "lc or ld (with --epsilon, --d)");
  distill->add_option("--epsilon", o.epsilon, "Nonlocal weight");
  distill->add_option("--d", o.d, "Output dimension");
  distill->add_option("--wiring", o.wiring, "comparator-A, comparator-B or a wiring JSON file");
  distill->add_flag("--with-box", o.with_box, "Include the final box in the report");
  distill->add_option("-o,--out", o.out, "Write the final box to this file");
  add_tol(distill);

  auto* iterate = app.add_subcommand("iterate", "Iterated distillation trajectory (CSV)");
  iterate->add_option("--protocol", o.protocol, "A or B");
  iterate->add_option("--family", o.family, "lc or ld (default: the protocol's native family)");
  iterate->add_option("--epsilon", o.epsilon, "Initial nonlocal weight")->required();
  iterate->add_option("--d", o.d, "Output dimension");
  iterate->add_option("--rounds", o.rounds, "Number of rounds");
  iterate->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* noisy = app.add_subcommand("noisy", "Distill xi NL + gamma local + mu mixed");
  noisy->add_option("--family", o.family, "ld (protocol B, default) or lc (protocol A)");
  noisy->add_option("--xi", o.xi, "NL weight")->required();
  noisy->add_option("--gamma", o.gamma, "Local weight")->required();
  noisy->add_option("--d", o.d, "Output dimension");
  noisy->add_flag("--with-box", o.with_box, "Include the final box in the report");

  auto* sweep = app.add_subcommand("sweep", "Efficiency curves (CSV)");
  sweep->add_option("--protocol", o.protocol, "A or B");
  sweep->add_option("--d", o.dims, "Dimensions, comma separated or repeated; 'inf' allowed")->required();
  sweep->add_option("--steps", o.steps, "Epsilon grid intervals")->check(CLI::PositiveNumber);
  sweep->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* region = app.add_subcommand("region", "Works-region map of the Ld-noisy family (CSV)");
  region->add_option("--d", o.d, "Dimension or 'inf'");
  region->add_option("--steps", o.steps, "Simplex grid intervals per axis")->check(CLI::PositiveNumber);
  region->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the oracle-vs-closed-form verification suite");
  verify->add_option("--suite", o.suites, "Suite name(s) or 'all'");
  verify->add_option("--seed", o.seed, "Seed for the randomized property checks");
  verify->add_option("--samples", o.samples, "Random samples per property")->check(CLI::PositiveNumber);
  verify->add_option("--oracle-tol", o.oracle_tol, "Oracle comparison tolerance")->check(CLI::PositiveNumber);
  add_tol(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return run_gen(o);
    if (*cg) return run_cglmp(o);
    if (*distill) return run_distill(o);
    if (*iterate) return run_iterate(o);
    if (*noisy) return run_noisy(o);
    if (*sweep) return run_sweep(o);
    if (*region) return run_region(o);
    if (*verify) return run_verify_cmd(o);
  } catch (const std::exception& e) {
    std::cerr << "nldist: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
