// Command-line front end: generate instances, verify the norm/average
// equivalences on them, and evaluate norms and permutation averages.
//
// Exit codes: 0 success (all checks passed), 1 verification failure,
// 2 malformed input or unusable arguments.

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morlicz/approx.hpp"
#include "morlicz/combinat.hpp"
#include "morlicz/generation.hpp"
#include "morlicz/instance.hpp"
#include "morlicz/musielak.hpp"
#include "morlicz/rng.hpp"
#include "morlicz/serialize.hpp"

namespace {

using namespace morlicz;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void print_value(double v) {
  std::cout << std::setprecision(12) << std::showpoint << v << "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open instance file: " + path);
  }
  nlohmann::json j;
  in >> j;
  return instance_from_json(j);
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw std::invalid_argument("bad vector entry: " + item);
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty vector");
  }
  return out;
}

InstanceKind parse_kind(const std::string& name) {
  if (name == "random") return InstanceKind::RandomNormalized;
  if (name == "power") return InstanceKind::PowerRows;
  return instance_kind_from_name(name);
}

AverageMethod parse_method(const std::string& name) {
  if (name == "exact") return AverageMethod::Exact;
  if (name == "mc") return AverageMethod::MonteCarlo;
  if (name == "bounds") return AverageMethod::Bounds;
  throw std::invalid_argument("unknown method: " + name);
}

Variant parse_variant(const std::string& name) {
  if (name == "rowsum") return Variant::Rowsum;
  if (name == "scaled") return Variant::Scaled;
  throw std::invalid_argument("unknown variant: " + name);
}

struct VerifyOptions {
  std::string theorem;
  std::string instance_path;
  std::size_t count = 0;
  std::size_t n = 4;
  std::size_t cols = 0;  // 0: square
  std::uint64_t seed = 1;
  std::string method = "exact";
  std::uint64_t trials = 100000;
  std::size_t samples = 200;
  std::string out;
  std::string format = "json";
};

VerifyReport run_check(const VerifyOptions& opt, const Instance& inst) {
  const AverageMethod method = parse_method(opt.method);
  VerifyReport r;
  if (opt.theorem == "thm2.1") {
    // The rearrangement sandwich holds for arbitrary real matrices; do not
    // force the decreasing-rows shape here.
    r = verify_rearrangement_bounds(inst.x, instance_matrix(inst, false));
  } else if (opt.theorem == "thm3.2") {
    r = verify_average_equivalence(inst.x, instance_matrix(inst),
                                   Variant::Rowsum, method, opt.trials,
                                   inst.seed);
  } else if (opt.theorem == "thm3.3") {
    r = verify_average_equivalence(inst.x, instance_matrix(inst),
                                   Variant::Scaled, method, opt.trials,
                                   inst.seed);
  } else if (opt.theorem == "thm4.1") {
    r = verify_converse_roundtrip(inst.x, instance_matrix(inst));
  } else if (opt.theorem == "lemma3.1") {
    r = verify_ball_inclusions(instance_matrix(inst), inst.seed, opt.samples);
  } else if (opt.theorem == "lemma5.1") {
    r = verify_norm_approximation(instance_matrix(inst), inst.x);
  } else {
    throw std::invalid_argument("unknown theorem: " + opt.theorem);
  }
  r.seed = inst.seed;
  return r;
}

int cmd_verify(const VerifyOptions& opt) {
  std::vector<Instance> instances;
  if (!opt.instance_path.empty()) {
    instances.push_back(load_instance(opt.instance_path));
  } else {
    if (opt.count == 0) {
      throw std::invalid_argument("verify: pass --instance or --count");
    }
    const InstanceKind kind = opt.theorem == "thm4.1"
                                  ? InstanceKind::PowerRows
                                  : InstanceKind::RandomNormalized;
    const std::size_t cols = opt.cols == 0 ? opt.n : opt.cols;
    if (opt.theorem != "lemma5.1" && cols != opt.n) {
      throw std::invalid_argument("verify: this check needs a square matrix");
    }
    instances.reserve(opt.count);
    for (std::size_t i = 0; i < opt.count; ++i) {
      instances.push_back(
          generate_instance(opt.n, cols, kind, mix_seed(opt.seed, i)));
    }
  }

  // Fan the instances out over worker threads; results are stored by index
  // so the report order never depends on scheduling.
  const std::size_t count = instances.size();
  std::vector<std::optional<VerifyReport>> reports(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        reports[i] = run_check(opt, instances[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i].empty()) {
      std::cerr << "instance " << i << ": " << errors[i] << "\n";
      return kExitInput;
    }
  }

  std::ofstream file;
  std::ostream* dest = &std::cout;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      throw std::invalid_argument("cannot open output file: " + opt.out);
    }
    dest = &file;
  }

  std::size_t passed = 0;
  if (opt.format == "csv") {
    *dest << report_csv_header() << "\n";
    for (const auto& r : reports) {
      *dest << report_csv_row(*r) << "\n";
      if (r->pass) ++passed;
    }
  } else if (opt.format == "json") {
    for (const auto& r : reports) {
      *dest << to_json(*r).dump() << "\n";
      if (r->pass) ++passed;
    }
  } else {
    throw std::invalid_argument("unknown format: " + opt.format);
  }

  const nlohmann::json summary{{"theorem", opt.theorem},
                               {"count", count},
                               {"passed", passed},
                               {"failed", count - passed},
                               {"all_pass", passed == count}};
  std::cout << summary.dump() << "\n";
  return passed == count ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Musielak-Orlicz norms from permutation matrix-averages"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a deterministic instance");
  std::size_t gen_n = 4;
  std::size_t gen_cols = 0;
  std::string gen_kind = "random";
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  std::string gen_variant = "scaled";
  gen->add_option("--n", gen_n, "rows");
  gen->add_option("--N", gen_cols, "columns (default: n)");
  gen->add_option("--kind", gen_kind, "random | power");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output path (default: stdout)");
  gen->add_option("--variant", gen_variant,
                  "row scaling for power rows: rowsum | scaled");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a named check");
  VerifyOptions vopt;
  verify->add_option("--theorem", vopt.theorem,
                     "thm2.1 | thm3.2 | thm3.3 | thm4.1 | lemma3.1 | lemma5.1")
      ->required();
  verify->add_option("--instance", vopt.instance_path, "instance file");
  verify->add_option("--count", vopt.count, "campaign size");
  verify->add_option("--n", vopt.n, "campaign rows");
  verify->add_option("--N", vopt.cols, "campaign columns");
  verify->add_option("--seed", vopt.seed, "campaign seed");
  verify->add_option("--method", vopt.method, "exact | mc | bounds");
  verify->add_option("--trials", vopt.trials, "Monte-Carlo trials");
  verify->add_option("--samples", vopt.samples,
                     "boundary samples per instance (lemma3.1)");
  verify->add_option("--out", vopt.out, "report file (default: stdout)");
  verify->add_option("--format", vopt.format, "json | csv");

  // norm
  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a vector");
  std::string norm_space;
  std::string norm_instance;
  std::string norm_variant = "rowsum";
  std::string norm_side = "primal";
  std::string norm_x;
  norm->add_option("--space", norm_space, "space file (JSON)");
  norm->add_option("--instance", norm_instance,
                   "instance file; the space is built from its matrix");
  norm->add_option("--variant", norm_variant, "rowsum | scaled");
  norm->add_option("--side", norm_side, "primal | dual");
  norm->add_option("--x", norm_x, "comma-separated vector (default: instance x)");

  // average
  auto* average = app.add_subcommand("average", "Permutation max average");
  std::string avg_instance;
  std::string avg_method = "exact";
  std::uint64_t avg_trials = 100000;
  std::uint64_t avg_seed = 1;
  average->add_option("--instance", avg_instance, "instance file")->required();
  average->add_option("--method", avg_method, "exact | mc | bounds");
  average->add_option("--trials", avg_trials, "Monte-Carlo trials");
  average->add_option("--seed", avg_seed, "Monte-Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (gen->parsed()) {
      const std::size_t cols = gen_cols == 0 ? gen_n : gen_cols;
      const Instance inst =
          generate_instance(gen_n, cols, parse_kind(gen_kind), gen_seed,
                            parse_variant(gen_variant));
      const std::string text = to_json(inst).dump();
      if (gen_out.empty()) {
        std::cout << text << "\n";
      } else {
        std::ofstream out(gen_out);
        if (!out) {
          throw std::invalid_argument("cannot open output file: " + gen_out);
        }
        out << text << "\n";
      }
      return kExitPass;
    }

    if (verify->parsed()) {
      return cmd_verify(vopt);
    }

    if (norm->parsed()) {
      std::vector<double> x;
      std::optional<MusielakSpace> space;
      if (!norm_space.empty()) {
        std::ifstream in(norm_space);
        if (!in) {
          throw std::invalid_argument("cannot open space file: " + norm_space);
        }
        nlohmann::json j;
        in >> j;
        space.emplace(space_from_json(j));
        if (norm_side == "dual") {
          std::vector<OrliczFunction> conj;
          conj.reserve(space->dimension());
          for (std::size_t i = 0; i < space->dimension(); ++i) {
            conj.push_back(conjugate(space->functions()[i]));
          }
          space.emplace(MusielakSpace(std::move(conj)));
        }
      } else if (!norm_instance.empty()) {
        const Instance inst = load_instance(norm_instance);
        GeneratedSpace g = functions_from_matrix(
            instance_matrix(inst), parse_variant(norm_variant),
            norm_side == "dual" ? Side::Dual : Side::Primal);
        space.emplace(std::move(g.space));
        if (norm_x.empty()) x = inst.x;
      } else {
        throw std::invalid_argument("norm: pass --space or --instance");
      }
      if (!norm_x.empty()) x = parse_vector(norm_x);
      if (x.empty()) {
        throw std::invalid_argument("norm: no vector given");
      }
      print_value(space->luxemburg_norm(x));
      return kExitPass;
    }

    if (average->parsed()) {
      const Instance inst = load_instance(avg_instance);
      const WeightMatrix y = instance_matrix(inst, false);
      const AverageMethod method = parse_method(avg_method);
      if (method == AverageMethod::Exact) {
        print_value(exact_average(inst.x, y).value);
      } else if (method == AverageMethod::MonteCarlo) {
        const AverageEstimate est =
            monte_carlo_average(inst.x, y, avg_trials, avg_seed);
        std::cout << std::setprecision(12) << std::showpoint << est.value << " "
                  << est.half_width << "\n";
      } else {
        const auto [lo, hi] = rearrangement_bounds(inst.x, y);
        std::cout << std::setprecision(12) << std::showpoint << lo << " " << hi
                  << "\n";
      }
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
