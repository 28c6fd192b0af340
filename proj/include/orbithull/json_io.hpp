#pragma once

#include "orbithull/hilbsep.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/matrix.hpp"
#include "orbithull/metric.hpp"
#include "orbithull/orbit.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace orbithull::json_io {

using nlohmann::json;

// {"n": int, "entries": [[[re, im], ...], ...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j); // rejects non-square / non-finite

// {"dim": int, "points": [[...], ...]}.
json points_to_json(const std::vector<hilbsep::EuclideanVector>& points);
std::vector<hilbsep::EuclideanVector> points_from_json(const json& j);

// {"weights": [...], "unitaries": [matrix, ...], "base": matrix,
//  "target": matrix, "residual": float}.
json certificate_to_json(const majorization::MixingCertificate& cert);
majorization::MixingCertificate certificate_from_json(const json& j);

// Same schema as mixing certificates; orbit parameters land in "unitaries"
// (plus "right_unitaries" for two-sided atoms).
json hull_to_json(const orbit::HullCombination& hull);

// {"status": "inside|outside|undecided", "distance": float, "margin":
//  float|null, "certificate": ...|null, "witness": matrix|null,
//  "lmo_exact": bool}.
json verdict_to_json(const orbit::MembershipVerdict& verdict);

json duel_to_json(const metric::DuelOutcome& outcome);

json load_json_file(const std::string& path);
ComplexMatrix load_matrix(const std::string& path);

// Pretty-printed with a trailing newline; empty path means stdout.
void write_report(const json& j, const std::string& path);

} // namespace orbithull::json_io
