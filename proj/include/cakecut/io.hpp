#pragma once

#include <string>

#include "cakecut/adversary.hpp"
#include "cakecut/oracle.hpp"
#include "cakecut/protocols.hpp"
#include "cakecut/verify.hpp"

namespace cakecut {

/// Instance JSON:
/// {"cake": {"kind": "interval", "length": "1"},
///  "scalar": {"kind": "rational"} | {"kind": "quad", "m": 2},
///  "players": [{"demand": "3",
///               "density": [{"to": "1/2", "density": "6"}, ...]}, ...]}
/// Rect cakes use {"kind": "rect", "width": ..., "height": ...}.  Scalars are
/// "p" / "p/q" strings, or {"a": .., "b": .., "m": ..} for a + b*sqrt(m).
/// Throws invalid_argument on schema or normalization errors.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

/// Division JSON: one {"player", "piece": [["lo","hi"],...], "value",
/// "demand"} object per player.  Values and demands are derived fields:
/// parse_division reads only the pieces back.
std::string serialize_division(const Instance& inst, const Division& div);
Division parse_division(const std::string& text, std::size_t n);

std::string serialize_verify_report(const VerifyReport& rep);

/// Experiment certificate: parameters, per-player query ledger, exact bound
/// pair with decimal rendering, violations, and the witness measures.
std::string serialize_experiment(const ExperimentReport& rep);

}  // namespace cakecut
