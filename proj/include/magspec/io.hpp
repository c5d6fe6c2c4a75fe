#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "magspec/builder.hpp"
#include "magspec/fiber.hpp"
#include "magspec/forms.hpp"
#include "magspec/graph.hpp"
#include "magspec/spectral.hpp"
#include "magspec/verify.hpp"

namespace magspec {

/// Parses the JSON graph schema
///   {"dim", "vertices", "edges": [{"tail","head","index","alpha"?}], "potential"?}.
/// Phases are wrapped into (-pi, pi]. Throws ParseError or BadIndexLength.
FundamentalGraph graph_from_json(std::string_view text);
FundamentalGraph read_graph_file(const std::string& path);

/// Canonical serialization: keys in schema order, edges in stored order,
/// floats with 17 significant digits.
std::string graph_to_json(const FundamentalGraph& g);

std::string invariants_to_json(const InvariantReport& r);
std::string band_summary_to_json(const BandSpectrum& s, double bound_4I);
/// Header theta_1..theta_d,lambda_1..lambda_nu; 12 significant digits.
std::string band_table_to_csv(const BandSpectrum& s, int dim);
/// Header flux,lambda_min_1,lambda_max_1,...; shorter rows padded with empty fields.
std::string butterfly_to_csv(const std::vector<ButterflyRow>& rows);
std::string verification_to_json(const VerificationReport& r);
/// Row-major array of [re, im] pairs.
std::string matrix_to_json(const ComplexMatrix& m);

std::string format_double(double x, int significant_digits = 17);

}  // namespace magspec
