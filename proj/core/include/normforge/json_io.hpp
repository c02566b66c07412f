#pragma once

// JSON forms of matrices, instances, check results and hunt reports.
// Doubles are written with round-trip precision, so matrices read back
// bit for bit. Non-finite reals are written as the strings "inf", "-inf"
// and "nan".

#include <nlohmann/json.hpp>

#include "normforge/catalog.hpp"
#include "normforge/hunter.hpp"

namespace normforge::json_io {

using Json = nlohmann::json;

Json real(double x);
double real_from(const Json& j);

/// {"rows", "cols", "re", "im"} with row-major entries.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

Json to_json(const GenSpec& spec);
GenSpec genspec_from_json(const Json& j);

/// Lineage (specs, seed, trial) is always written; matrices only when
/// `embed_matrices` is set.
Json to_json(const Instance& inst, bool embed_matrices = true);
/// Uses embedded matrices when present, else regenerates from the specs.
Instance instance_from_json(const Json& j);

/// The instance carries its matrices unless the verdict is `holds`.
Json to_json(const CheckResult& r);

Json to_json(const HuntConfig& cfg);
/// Wall-clock time is included only when requested, so reports can be
/// compared byte for byte.
Json to_json(const HuntReport& report, bool include_wall_clock = true);

}  // namespace normforge::json_io
