#include "simop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simop/eigen_oracle.hpp"

namespace simop {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognisable as floats on re-read.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool all_scalar(const Json& j) {
  for (const auto& e : j) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

void write(std::ostringstream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      if (all_scalar(j)) {
        out << '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out << ", ";
          first = false;
          write(out, e, depth + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write(out, e, depth + 1);
      }
      out << '\n' << pad << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(it.key()).dump() << ": ";
        write(out, it.value(), depth + 1);
      }
      out << '\n' << pad << '}';
      return;
    }
    default:
      out << j.dump();
      return;
  }
}

const Json& require(const Json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + ": expected a number");
  return j.get<double>();
}

Json complex_list(const std::vector<Complex>& zs) {
  Json arr = Json::array();
  for (const Complex& z : zs) arr.push_back(Json::array({z.real(), z.imag()}));
  return arr;
}

Json eigenvalues_json(const SpectralFrame& frame) {
  Json ev = Json::array();
  for (double l : frame.eigenvalues()) ev.push_back(l);
  return Json{{"eigenvalues", ev}};
}

SpectralFrame frame_from_json(const Json& doc) {
  const Json& ev = require(require(doc, "frame", "problem"), "eigenvalues", "frame");
  if (!ev.is_array()) throw SchemaError("frame: 'eigenvalues' must be an array");
  std::vector<double> values;
  for (const auto& e : ev) values.push_back(number(e, "frame eigenvalue"));
  try {
    return SpectralFrame::make(std::move(values));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("frame: ") + e.what());
  }
}

}  // namespace

std::string dump_json(const Json& doc) {
  std::ostringstream out;
  write(out, doc, 0);
  out << '\n';
  return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"re", re}, {"im", im}};
}

Matrix matrix_from_json(const Json& doc, const char* what) {
  const Json& re = require(doc, "re", what);
  const Json& im = require(doc, "im", what);
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw SchemaError(std::string(what) + ": 're' and 'im' must be arrays of equal length");
  }
  const auto n = static_cast<Eigen::Index>(re.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& rr = re[static_cast<std::size_t>(i)];
    const Json& ir = im[static_cast<std::size_t>(i)];
    if (!rr.is_array() || !ir.is_array() || static_cast<Eigen::Index>(rr.size()) != n ||
        static_cast<Eigen::Index>(ir.size()) != n) {
      throw SchemaError(std::string(what) + ": rows must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(number(rr[static_cast<std::size_t>(j)], what), number(ir[static_cast<std::size_t>(j)], what));
    }
  }
  return m;
}

MatrixProblem matrix_problem_from_json(const Json& doc) {
  SpectralFrame frame = frame_from_json(doc);
  Matrix m = matrix_from_json(require(doc, "matrix", "problem"), "matrix");
  try {
    OperatorMatrix b(frame, std::move(m));
    return MatrixProblem{std::move(frame), std::move(b)};
  } catch (const DomainError& e) {
    throw SchemaError(std::string("matrix: ") + e.what());
  }
}

Json matrix_problem_to_json(const SpectralFrame& frame, const Matrix& b) {
  return Json{{"frame", eigenvalues_json(frame)}, {"matrix", matrix_to_json(b)}};
}

FourierPotential potential_from_json(const Json& doc) {
  const double omega = number(require(doc, "omega", "potential"), "omega");
  const Json& coeffs = require(doc, "coefficients", "potential");
  if (!coeffs.is_array()) throw SchemaError("potential: 'coefficients' must be an array");
  int order = 0;
  for (const auto& c : coeffs) {
    const Json& n = require(c, "n", "coefficient");
    if (!n.is_number_integer()) throw SchemaError("coefficient: 'n' must be an integer");
    order = std::max(order, std::abs(n.get<int>()));
  }
  std::vector<Complex> values(static_cast<std::size_t>(2 * order + 1), Complex(0.0, 0.0));
  for (const auto& c : coeffs) {
    const int n = c.at("n").get<int>();
    const double re = c.contains("re") ? number(c.at("re"), "coefficient re") : 0.0;
    const double im = c.contains("im") ? number(c.at("im"), "coefficient im") : 0.0;
    values[static_cast<std::size_t>(n + order)] += Complex(re, im);
  }
  try {
    return FourierPotential(omega, std::move(values));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("potential: ") + e.what());
  }
}

Json potential_to_json(const FourierPotential& v) {
  Json coeffs = Json::array();
  for (int n = -v.order(); n <= v.order(); ++n) {
    const Complex z = v.coefficient(n);
    if (z == Complex(0.0, 0.0)) continue;
    coeffs.push_back(Json{{"n", n}, {"re", z.real()}, {"im", z.imag()}});
  }
  return Json{{"omega", v.period()}, {"coefficients", coeffs}};
}

Json budget_to_json(const ContractionBudget& b) {
  return Json{{"variant", std::string(to_string(b.variant))},
              {"c", b.c},
              {"j", b.j},
              {"gamma", b.gamma},
              {"norm_B", b.norm_B},
              {"lhs", b.lhs},
              {"threshold", b.threshold},
              {"satisfied", b.satisfied}};
}

Json report_to_json(const SpectralFrame& frame, const SimilarityReport& r) {
  Json doc;
  doc["variant"] = std::string(to_string(r.variant));
  doc["requested_variant"] = std::string(to_string(r.requested_variant));
  doc["a"] = r.a;
  doc["kernel"] = std::string(to_string(r.kernel));
  doc["norm"] = std::string(to_string(r.norm));
  doc["iterations"] = r.iterations;
  doc["residual_rel"] = r.residual_rel;
  doc["residual_abs"] = r.residual_abs;
  doc["budget"] = budget_to_json(r.budget);
  doc["spectra"] = Json{{"perturbed", complex_list(r.spectra.perturbed)},
                        {"reduced", complex_list(r.spectra.reduced)},
                        {"max_match_distance", r.spectra.max_match_distance}};
  Json ball{{"radius", r.ball_radius}, {"ok", r.ball_ok}};
  ball["bound"] = r.ball_bound ? Json(*r.ball_bound) : Json(nullptr);
  doc["ball"] = ball;
  doc["condition_number"] = r.condition_number;
  doc["inverse_error"] = r.inverse_error;
  doc["convergence_log"] = r.convergence_log;
  if (!r.terms.empty()) {
    Json terms = Json::array();
    for (const SeriesTerm& t : r.terms) {
      terms.push_back(Json{{"n", t.n}, {"norm", t.norm}, {"bound", t.bound}, {"within_bound", t.within_bound}});
    }
    doc["terms"] = terms;
  }
  if (!r.notes.empty()) doc["notes"] = r.notes;
  doc["frame"] = eigenvalues_json(frame);
  doc["b"] = matrix_to_json(r.B);
  doc["x_star"] = matrix_to_json(r.X_star);
  doc["jx_star"] = matrix_to_json(r.JX_star);
  doc["u"] = matrix_to_json(r.U);
  return doc;
}

Json periodic_to_json(const SpectralFrame& frame, const PeriodicReduction& p) {
  Json doc = report_to_json(frame, p.report);
  doc["c"] = Json::array({p.c.real(), p.c.imag()});
  doc["constant_regime"] = p.constant_regime;
  doc["cross_check_error"] = p.cross_check_error;
  Json v0 = Json::array();
  const int m = p.truncation;
  for (int n = -m; n <= m; ++n) {
    const Complex z = p.v0[static_cast<std::size_t>(n + m)];
    if (z == Complex(0.0, 0.0)) continue;
    v0.push_back(Json{{"n", n}, {"re", z.real()}, {"im", z.imag()}});
  }
  doc["v0"] = v0;
  return doc;
}

Json kernels_to_json(const NormBoundReport& report, const KernelTable* samples) {
  Json doc;
  doc["a"] = report.a;
  doc["phi_l1"] = report.phi.value;
  doc["psi_l1"] = report.psi.value;
  doc["psitilde_l1"] = report.psitilde.value;
  doc["bounds_hold"] = report.bounds_hold;
  doc["lemma_bound"] = report.lemma_bound;
  doc["error_bounds"] = Json{{"phi", report.phi.error_bound},
                             {"psi", report.psi.error_bound},
                             {"psitilde", report.psitilde.error_bound}};
  Json arr = Json::array();
  if (samples != nullptr) {
    for (std::size_t k = 0; k < samples->grid.size(); ++k) {
      const double t = samples->grid[k];
      arr.push_back(Json{{"t", t}, {"phi", phi_kernel_sample(report.a, t)}, {"psi_im", samples->values[k].imag()}});
    }
  }
  doc["samples"] = arr;
  return doc;
}

VerifyOutcome verify_report(const Json& report) {
  const SpectralFrame frame = frame_from_json(report);
  const Matrix b = matrix_from_json(require(report, "b", "report"), "b");
  const Matrix jx = matrix_from_json(require(report, "jx_star", "report"), "jx_star");
  const Matrix u = matrix_from_json(require(report, "u", "report"), "u");
  NormKind norm = NormKind::spectral;
  if (report.contains("norm")) {
    try {
      norm = norm_kind_from_string(report.at("norm").get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError(std::string("report: ") + e.what());
    }
  }
  VerifyOutcome v;
  v.stored_residual_rel = number(require(report, "residual_rel", "report"), "residual_rel");
  v.stored_distance =
      number(require(require(report, "spectra", "report"), "max_match_distance", "spectra"), "max_match_distance");
  SimilarityCheck check;
  try {
    check = verify_similarity(frame, b, jx, u, norm);
  } catch (const DomainError& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  v.residual_rel = check.residual_rel;
  v.max_match_distance = check.spectra.max_match_distance;
  v.consistent = std::abs(v.residual_rel - v.stored_residual_rel) <= 1e-12 &&
                 std::abs(v.max_match_distance - v.stored_distance) <= 1e-9;
  return v;
}

Json verify_to_json(const VerifyOutcome& v) {
  return Json{{"residual_rel", v.residual_rel},
              {"stored_residual_rel", v.stored_residual_rel},
              {"max_match_distance", v.max_match_distance},
              {"stored_max_match_distance", v.stored_distance},
              {"consistent", v.consistent}};
}

}  // namespace simop
