#pragma once

// JSON documents: matrix problems, potentials, engine reports, kernel reports.
// Doubles are written with 17 significant digits so files round-trip exactly.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "simop/kernels.hpp"
#include "simop/potential.hpp"
#include "simop/similarity.hpp"

namespace simop {

using Json = nlohmann::ordered_json;

/// Deterministic serialization: fixed key order (insertion), %.17g doubles, 2-space indent.
std::string dump_json(const Json& doc);

/// Throws IoError when the file cannot be read and SchemaError when it is not JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json matrix_to_json(const Matrix& m);                       // {"re": [[..]], "im": [[..]]}
Matrix matrix_from_json(const Json& doc, const char* what);  // throws SchemaError

struct MatrixProblem {
  SpectralFrame frame;
  OperatorMatrix B;
};

/// {"frame": {"eigenvalues": [..]}, "matrix": {"re": .., "im": ..}}
MatrixProblem matrix_problem_from_json(const Json& doc);
Json matrix_problem_to_json(const SpectralFrame& frame, const Matrix& b);

/// {"omega": .., "coefficients": [{"n": .., "re": .., "im": ..}]}
FourierPotential potential_from_json(const Json& doc);
Json potential_to_json(const FourierPotential& v);

Json budget_to_json(const ContractionBudget& b);
Json report_to_json(const SpectralFrame& frame, const SimilarityReport& r);
Json periodic_to_json(const SpectralFrame& frame, const PeriodicReduction& p);
Json kernels_to_json(const NormBoundReport& report, const KernelTable* samples);

struct VerifyOutcome {
  double stored_residual_rel = 0.0;
  double residual_rel = 0.0;
  double stored_distance = 0.0;
  double max_match_distance = 0.0;
  bool consistent = false;  // residual reproduced within 1e-12 and distance within 1e-9
};

/// Recomputes residual and spectra of a saved report from its embedded matrices.
VerifyOutcome verify_report(const Json& report);
Json verify_to_json(const VerifyOutcome& v);

}  // namespace simop
