#include "lfin/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "lfin/abelian.hpp"
#include "lfin/cw_equivariant.hpp"
#include "lfin/errors.hpp"
#include "lfin/io.hpp"

namespace lfin {

namespace {

using nlohmann::json;

struct Report {
  int status = 0;
  std::string out;
  std::string err;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// Runs one job, turning library errors into exit status 2.
Report guarded(const std::string& label, const std::function<Report()>& job) {
  try {
    return job();
  } catch (const ParseError& e) {
    return {2, "", "error: ParseError: " + label + ":" + e.what() + "\n"};
  } catch (const Error& e) {
    return {2, "", std::string("error: ") + to_string(e.code()) + ": " + e.what() + "\n"};
  } catch (const json::exception& e) {
    return {2, "", std::string("error: ParseError: ") + label + ": " + e.what() + "\n"};
  }
}

// Runs `job` over every input, in parallel when jobs > 1, and writes the
// reports in input order.
int run_batch(const std::vector<std::string>& inputs, int jobs, const std::function<Report(const std::string&)>& job,
              std::ostream& out, std::ostream& err) {
  std::vector<Report> reports(inputs.size());
  const bool any_stdin = std::find(inputs.begin(), inputs.end(), "-") != inputs.end();
  const int threads = any_stdin ? 1 : std::max(1, jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < inputs.size(); ++i)
    reports[i] = guarded(inputs[i], [&] { return job(inputs[i]); });
  int status = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs.size() > 1) out << "==> " << inputs[i] << " <==\n";
    out << reports[i].out;
    err << reports[i].err;
    status = std::max(status, reports[i].status);
  }
  return status;
}

std::string verdict_line(const PerfectnessVerdict& v) {
  std::ostringstream s;
  if (v.perfect) {
    s << "perfect; euler_class=" << *v.euler_class << "; replacement ranks " << list(v.replacement->ranks());
  } else {
    s << "not perfect; top degree " << *v.top_degree << "; obstruction dim " << v.top_obstruction.dim()
      << ", minimal generators " << minimal_generators(v.top_obstruction);
  }
  return s.str() + "\n";
}

Report homology_report(const std::string& path) {
  const ChainComplex c = read_complex(read_input(path));
  const ModuleComplex m = as_module_complex(c);
  std::ostringstream s;
  for (int q = m.bottom(); q <= m.top(); ++q) {
    const PiModule h = homology(m, q);
    s << "H_" << q << ": dim " << h.dim() << ", minimal generators " << minimal_generators(h) << ", "
      << (is_free(h).free ? "free" : "not free") << "\n";
  }
  return {0, s.str(), ""};
}

Report minimalize_report(const std::string& path, bool as_json) {
  const ChainComplex c = read_complex(read_input(path));
  const MinimalModel model = minimalize(c);
  if (as_json) return {0, quasi_iso_certificate(c, model).dump(2) + "\n", ""};
  return {0, write_complex(model.complex), ""};
}

Report perfect_report(const std::string& path, bool as_json, std::optional<int> max_degree) {
  const ChainComplex c = read_complex(read_input(path));
  DecideOptions options;
  options.max_degree = max_degree;
  const PerfectnessVerdict v = decide_perfect(c, options);
  const int status = v.perfect ? 0 : 1;
  if (as_json) return {status, perfectness_certificate(c, v).dump(2) + "\n", ""};
  return {status, verdict_line(v), ""};
}

Report wall_report(const std::string& path) {
  const ChainComplex c = read_complex(read_input(path));
  const PerfectnessVerdict v = decide_perfect(c);
  if (!v.perfect) return {1, "not perfect; no finiteness obstruction\n", ""};
  return {0, "K0 class " + std::to_string(*v.euler_class) + "; reduced class 0\n", ""};
}

Report tower_limit_report(const std::string& path, std::size_t horizon, bool as_json) {
  const Tower t = read_tower(read_input(path));
  const TowerLimit lim = limit_complex(t, horizon);
  if (as_json) return {0, limit_certificate(t, lim, std::nullopt, decide_perfect(lim.complex)).dump(2) + "\n", ""};
  std::vector<std::size_t> dims;
  for (const auto& m : lim.complex.modules()) dims.push_back(m.dim());
  std::ostringstream s;
  s << "limit at level " << lim.level << "; dims " << list(dims) << "; homology dims " << list(homology_dims(lim.complex))
    << "\n";
  return {0, s.str(), ""};
}

Report tower_perfect_report(const std::string& path, std::size_t horizon, std::optional<int> bound, bool as_json) {
  const Tower t = read_tower(read_input(path));
  const TowerLimit lim = limit_complex(t, horizon, bound ? std::optional<int>(*bound + 1) : std::nullopt);
  const ModuleComplex target = bound ? good_truncation(lim.complex, *bound) : lim.complex;
  const PerfectnessVerdict v = decide_perfect(target);
  const int status = v.perfect ? 0 : 1;
  if (as_json) return {status, limit_certificate(t, lim, bound, v).dump(2) + "\n", ""};
  return {status, verdict_line(v), ""};
}

Report verify_report(const std::string& path) {
  const json cert = json::parse(read_input(path));
  const VerifyResult r = verify_certificate(cert);
  if (r.ok) return {0, "certificate ok\n", ""};
  return {1, "certificate rejected: " + r.reason + "\n", ""};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfectness of F_l[pi]-chain complexes, towers and l-completions", "lfin"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  int jobs = 1;
  app.add_flag("--json", as_json, "Emit a machine-readable certificate");
  app.add_option("--jobs", jobs, "Parallel jobs for batch inputs")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  std::size_t horizon = 0;
  std::optional<int> bound;
  std::optional<int> max_degree;

  auto* homology_cmd = app.add_subcommand("homology", "Homology modules of a complex");
  homology_cmd->add_option("files", files, "Complex files")->required();
  auto* minimalize_cmd = app.add_subcommand("minimalize", "Minimal model of a bounded free complex");
  minimalize_cmd->add_option("files", files, "Complex files")->required();
  auto* perfect_cmd = app.add_subcommand("perfect", "Decide whether a complex is perfect");
  perfect_cmd->add_option("files", files, "Complex files")->required();
  perfect_cmd->add_option("--max-degree", max_degree, "Give up above this degree");
  auto* wall_cmd = app.add_subcommand("wall", "Class of a perfect complex in K_0");
  wall_cmd->add_option("files", files, "Complex files")->required();
  auto* limit_cmd = app.add_subcommand("tower-limit", "Inverse limit of a tower");
  limit_cmd->add_option("files", files, "Tower files")->required();
  limit_cmd->add_option("--horizon", horizon, "Stabilization horizon")->required();
  auto* tower_perfect_cmd = app.add_subcommand("tower-perfect", "Decide whether the limit of a tower is perfect");
  tower_perfect_cmd->add_option("files", files, "Tower files")->required();
  tower_perfect_cmd->add_option("--horizon", horizon, "Stabilization horizon")->required();
  tower_perfect_cmd->add_option("--bound", bound, "Decide the good truncation at this degree");

  std::string group_text;
  unsigned long l = 0;
  auto* complete_cmd = app.add_subcommand("complete", "l-completion of a finitely generated abelian group");
  complete_cmd->add_option("--group", group_text, "Group, e.g. Z^2+Z/6")->required();
  complete_cmd->add_option("--l", l, "Prime")->required();

  std::string matrix_text;
  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf_cmd->add_option("matrix", matrix_text, "Matrix, e.g. [[2,4],[6,8]]")->required();

  unsigned lens_l = 0, lens_k = 0, lens_n = 0;
  auto* lens_cmd = app.add_subcommand("lens", "Cellular chains of the lens-type cover");
  lens_cmd->add_option("l", lens_l, "Prime")->required();
  lens_cmd->add_option("k", lens_k, "Group order is l^k")->required()->check(CLI::PositiveNumber);
  lens_cmd->add_option("n", lens_n, "Sphere dimension")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Re-check certificates");
  verify_cmd->add_option("files", files, "Certificate files")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto batch = [&](const std::function<Report(const std::string&)>& job) {
    return run_batch(files, jobs, job, out, err);
  };
  auto single = [&](const std::string& label, const std::function<Report()>& job) {
    const Report r = guarded(label, job);
    out << r.out;
    err << r.err;
    return r.status;
  };

  if (*homology_cmd) return batch(homology_report);
  if (*minimalize_cmd) return batch([&](const std::string& p) { return minimalize_report(p, as_json); });
  if (*perfect_cmd) return batch([&](const std::string& p) { return perfect_report(p, as_json, max_degree); });
  if (*wall_cmd) return batch(wall_report);
  if (*limit_cmd) return batch([&](const std::string& p) { return tower_limit_report(p, horizon, as_json); });
  if (*tower_perfect_cmd)
    return batch([&](const std::string& p) { return tower_perfect_report(p, horizon, bound, as_json); });
  if (*verify_cmd) return batch(verify_report);
  if (*complete_cmd)
    return single("group", [&]() -> Report {
      const FGAbelian a = parse_abelian(group_text);
      if (as_json) return {0, completion_certificate(a, l).dump(2) + "\n", ""};
      return {0, l_complete(a, l).to_string() + "\n", ""};
    });
  if (*snf_cmd)
    return single("matrix", [&]() -> Report {
      const IntMatrix m = parse_int_matrix(matrix_text);
      if (as_json) return {0, snf_certificate(m).dump(2) + "\n", ""};
      std::string s = "invariant factors:";
      const auto factors = invariant_factors(m);
      if (factors.empty()) s += " none";
      for (const auto& d : factors) s += " " + d.get_str();
      return {0, s + "\n", ""};
    });
  if (*lens_cmd)
    return single("lens", [&]() -> Report {
      return {0, write_complex(chains_of_cover(lens_complex(lens_l, lens_k, lens_n))), ""};
    });
  return 2;
}

}  // namespace lfin
