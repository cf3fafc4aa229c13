#pragma once

#include "ncmaj/experiments.hpp"

namespace ncmaj {

// Wire formats. Matrices are nested arrays of [re, im] pairs, row by row.

json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const json& j);

// {m, n, coeffs: [{mask, matrix}]}
json cube_to_json(const CubeFunction& f);
CubeFunction cube_from_json(const json& j);

// cube schema plus n_var and an embedded flag
json ncpoly_to_json(const NCPoly& q);
NCPoly ncpoly_from_json(const json& j);

// {n, matrix} or {n, factors: [...]}
json tensor4_to_json(const Tensor4& t);
Tensor4 tensor4_from_json(const json& j);

json ensemble_to_json(const EnsembleSpec& s);
EnsembleSpec ensemble_from_json(const json& j);

json estimate_to_json(const MCEstimate& est);

// full report: {experiment, config, seed, results, verdict, timings};
// timing data stays out of the results block
json report_to_json(const ExperimentReport& rep);
json report_results_block(const ExperimentReport& rep);

}  // namespace ncmaj
