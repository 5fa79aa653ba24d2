#pragma once

#include <string>

#include "gtmp/akima.hpp"
#include "gtmp/planner.hpp"

namespace gtmp {

/// {"paths": [[[x, y, ...], ...], ...], "values": [...], "feasible": [...],
///  "goal_index": [...]} with +inf written as the string "inf".
std::string plan_result_to_json(const PlanResult& result, int indent = -1);

/// Same document plus "knots" and, per path, "splines": a list of
/// {"a": [...], "b": [...], "c": [...], "d": [...]} per traced edge. When
/// `samples_per_edge` > 0 a dense "polylines" array is added as well.
std::string akima_result_to_json(const AkimaPlanResult& result, std::size_t samples_per_edge = 0, int indent = -1);

/// Parsed plan document; `splines` is empty for straight-line plans.
struct PlanDocument {
  PlanResult plan;
  KnotSchedule knots;
  std::vector<std::vector<EdgeSpline>> splines;
};

PlanDocument plan_document_from_json(const std::string& text);

}  // namespace gtmp
