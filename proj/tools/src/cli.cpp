#include "simop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <numbers>
#include <optional>
#include <ostream>

#include "simop/eigen_oracle.hpp"
#include "simop/io.hpp"
#include "simop/potential.hpp"
#include "simop/similarity.hpp"

namespace simop::cli {
namespace {

struct EngineFlags {
  std::optional<std::string> variant;
  std::optional<double> a;
  std::optional<std::string> kernel;
  std::optional<std::string> norm;
  std::optional<double> tol;
  std::optional<int> max_iter;
  bool force = false;
  bool tight = false;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--variant", f.variant, "Fixed-point variant")
      ->check(CLI::IsMember({"phi", "phi1", "phi2", "phi3", "series"}));
  cmd->add_option("--a", f.a, "Bandwidth parameter a > 0");
  cmd->add_option("--kernel", f.kernel, "Multiplier pair")->check(CLI::IsMember({"trapezoid", "triangle"}));
  cmd->add_option("--norm", f.norm, "Norm for budgets and residuals")->check(CLI::IsMember({"spectral", "frobenius"}));
  cmd->add_option("--tol", f.tol, "Relative fixed-point tolerance");
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap");
  cmd->add_flag("--force", f.force, "Iterate even when the contraction budget fails");
  cmd->add_flag("--tight-constants", f.tight, "Use j = 1 when J is a diagonal pinching");
}

// Problem-file "config" first, explicit flags on top.
IterationConfig make_config(const Json& doc, const EngineFlags& f, IterationConfig base) {
  if (doc.contains("config")) {
    const Json& c = doc.at("config");
    try {
      if (c.contains("variant")) base.variant = variant_from_string(c.at("variant").get<std::string>());
      if (c.contains("a")) base.a = c.at("a").get<double>();
      if (c.contains("kernel")) base.kernel = kernel_kind_from_string(c.at("kernel").get<std::string>());
      if (c.contains("norm")) base.norm = norm_kind_from_string(c.at("norm").get<std::string>());
      if (c.contains("tol")) base.tol = c.at("tol").get<double>();
      if (c.contains("max_iter")) base.max_iter = c.at("max_iter").get<int>();
      if (c.contains("force")) base.force = c.at("force").get<bool>();
      if (c.contains("tight_constants")) base.tight = c.at("tight_constants").get<bool>();
    } catch (const Json::exception& e) {
      throw SchemaError(std::string("config: ") + e.what());
    } catch (const DomainError& e) {
      throw SchemaError(std::string("config: ") + e.what());
    }
  }
  if (f.variant) base.variant = variant_from_string(*f.variant);
  if (f.a) base.a = *f.a;
  if (f.kernel) base.kernel = kernel_kind_from_string(*f.kernel);
  if (f.norm) base.norm = norm_kind_from_string(*f.norm);
  if (f.tol) base.tol = *f.tol;
  if (f.max_iter) base.max_iter = *f.max_iter;
  base.force = base.force || f.force;
  base.tight = base.tight || f.tight;
  base.validate();
  return base;
}

void emit(const Json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = dump_json(doc);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

void print_budget(const ContractionBudget& b, std::ostream& err) {
  err << "contraction budget (" << to_string(b.variant) << "): c = " << b.c << ", j = " << b.j
      << ", gamma = " << b.gamma << ", ||B|| = " << b.norm_B << ", lhs = " << b.lhs << " (needs < " << b.threshold
      << ")\n";
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Similar-operator reductions of A - B on finite spectral frames", "simop"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;
  EngineFlags reduce_flags;
  auto* reduce = app.add_subcommand("reduce", "Reduce a matrix problem A - B");
  reduce->add_option("--input", input, "Matrix problem JSON")->required();
  reduce->add_option("--out", out_path, "Report path (default: standard output)");
  add_engine_flags(reduce, reduce_flags);

  EngineFlags potential_flags;
  int truncation = 40;
  auto* potential = app.add_subcommand("potential", "Reduce -i d/dt - v for a periodic potential");
  potential->add_option("--input", input, "Potential JSON")->required();
  potential->add_option("--out", out_path, "Report path (default: standard output)");
  potential->add_option("--truncation", truncation, "Keep Fourier modes |n| <= M")->check(CLI::PositiveNumber);
  add_engine_flags(potential, potential_flags);

  double kernel_a = 1.0;
  bool emit_samples = false;
  std::optional<double> half_width;
  std::optional<double> step;
  auto* kernels = app.add_subcommand("kernels", "Kernel L1 norms and their bounds");
  kernels->add_option("--a", kernel_a, "Bandwidth parameter a > 0");
  kernels->add_flag("--emit-samples", emit_samples, "Include sampled phi and psi");
  kernels->add_option("--half-width", half_width, "Sample window half width (default 50/a)");
  kernels->add_option("--step", step, "Sample step (default 1/(8a))");
  kernels->add_option("--out", out_path, "Report path (default: standard output)");

  auto* verify = app.add_subcommand("verify", "Recompute residual and spectra of a saved report");
  verify->add_option("--input", input, "Report JSON")->required();
  verify->add_option("--out", out_path, "Output path (default: standard output)");

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputOutput;
  }

  try {
    if (reduce->parsed()) {
      const Json doc = read_json_file(input);
      const MatrixProblem p = matrix_problem_from_json(doc);
      const IterationConfig cfg = make_config(doc, reduce_flags, IterationConfig{});
      const SimilarityReport r = iterate_fixed_point(p.frame, p.B, cfg);
      emit(report_to_json(p.frame, r), out_path, out);
      return kOk;
    }
    if (potential->parsed()) {
      const Json doc = read_json_file(input);
      const FourierPotential v = potential_from_json(doc);
      IterationConfig base;
      base.variant = Variant::phi1;
      base.a = std::numbers::pi / v.period();
      const IterationConfig cfg = make_config(doc, potential_flags, base);
      const LaurentProblem lp = build_laurent(v, truncation);
      if (cfg.variant == Variant::series) {
        const SimilarityReport r = reduce_hypercausal_potential(v, truncation, cfg);
        emit(report_to_json(lp.frame, r), out_path, out);
      } else {
        const PeriodicReduction r = reduce_periodic(v, cfg, truncation);
        emit(periodic_to_json(lp.frame, r), out_path, out);
      }
      return kOk;
    }
    if (kernels->parsed()) {
      const NormBoundReport report = verify_norm_bounds(kernel_a);
      std::optional<KernelTable> table;
      if (emit_samples) {
        table = psi_kernel_table(kernel_a, half_width.value_or(50.0 / kernel_a), step.value_or(0.125 / kernel_a));
      }
      emit(kernels_to_json(report, table ? &*table : nullptr), out_path, out);
      return kOk;
    }
    if (verify->parsed()) {
      const VerifyOutcome v = verify_report(read_json_file(input));
      emit(verify_to_json(v), out_path, out);
      if (!v.consistent) {
        err << "verify: recomputed values differ from the stored report\n";
        return kNumerical;
      }
      return kOk;
    }
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    print_budget(e.budget(), err);
    return kPrecondition;
  } catch (const StructuralError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const NonConvergenceError& e) {
    err << "non-convergence: " << e.what() << '\n';
    if (!e.log().empty()) err << "last update norm: " << e.log().back() << '\n';
    return kNumerical;
  } catch (const ResolutionError& e) {
    err << "resolution: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return kNumerical;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kNumerical;
  } catch (const SingularityError& e) {
    err << "singular: " << e.what() << '\n';
    return kNumerical;
  } catch (const OracleFailure& e) {
    err << "eigen-oracle failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    err << "io: " << e.what() << '\n';
    return kInputOutput;
  } catch (const SchemaError& e) {
    err << "schema: " << e.what() << '\n';
    return kInputOutput;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kPrecondition;
  }
  return kInputOutput;
}

}  // namespace simop::cli
