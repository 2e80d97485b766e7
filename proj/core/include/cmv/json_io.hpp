#pragma once

#include <string>

#include <json.hpp>

#include "cmv/inverse.hpp"

namespace cmv {

using json = nlohmann::json;

json to_json(const ComplexMatrix& a);          // flat row-major [re, im] pairs
ComplexMatrix matrix_from_json(const json& j, int rows, int cols);

json to_json(const VerblunskyData& data);
VerblunskyData verblunsky_from_json(const json& j);

json to_json(const SpectralMeasure& mu);
SpectralMeasure measure_from_json(const json& j);

json to_json(const MatrixPowerSeries& s);
MatrixPowerSeries series_from_json(const json& j);

json to_json(const MatrixLaurentPolynomial& p);
MatrixLaurentPolynomial laurent_from_json(const json& j, int m);

json to_json(const GreensData& gd);
GreensData greens_from_json(const json& j);

json to_json(const ReconstructionReport& rep);

json error_to_json(const error& e);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

} // namespace cmv
