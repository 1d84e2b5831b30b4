#pragma once

// JSON surfaces: state files, process specs, reports and ledgers.
//
// State file, matrix form (row-major d^2 x d^2, one [re, im] pair per entry):
//   {"d": 2, "matrix": [[0.5, 0.0], [0.0, 0.0], ...]}
// State file, family form:
//   {"family": "isotropic" | "bell" | "pure-haar", "d": 2, "p": 0.5, "seed": 7}

#include <string>

#include "json.hpp"

#include "fefwork/process.hpp"
#include "fefwork/qsdp.hpp"
#include "fefwork/report.hpp"

namespace fefwork {

using json = nlohmann::json;

BipartiteState stateFromJson(const json& j);
json stateToJson(const BipartiteState& state);
BipartiteState loadStateFile(const std::string& path);

/// True if the file describes a pure state, returning it.
std::optional<PureState> pureStateFromJson(const json& j);

json matrixToJson(const CMatrix& m);
CMatrix matrixFromJson(const json& j, int rows, int cols);

json energyJson(const Energy& e, const char* relation, const char* provenance);
json scalarJson(double v, const char* units, const char* relation, const char* provenance);

json toJson(const EntropyReport& e);
json toJson(const FefResult& f);
json toJson(const QResult& q, int d);
json toJson(const IsotropicParams& p);
json toJson(const IsotropicThresholds& th);
json toJson(const BoundsReport& r);
json toJson(const WorkLedger& ledger, const ReplayOptions& options);

/// {"initial": <state object or "path">, "initial_levels": [...]?,
///  "actions": [{"kind": "raise-lower" | "thermalize" | "unitary" | "delta-approx", ...}]}
ProcessSpec processFromJson(const json& j, const TemperatureScale& t,
                            const std::string& baseDir = ".");
json processToJson(const ProcessSpec& spec);

SignConvention parseSignConvention(const std::string& s);
std::string toString(SignConvention s);

}  // namespace fefwork
