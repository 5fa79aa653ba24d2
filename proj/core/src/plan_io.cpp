#include "gtmp/plan_io.hpp"

#include "gtmp/world_io.hpp"
#include "json.hpp"

namespace gtmp {

using nlohmann::json;

namespace {

json encode_value(double v) {
  if (v == kInf) return "inf";
  return v;
}

double decode_value(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw IoError("plan JSON: unexpected string value '" + j.get<std::string>() + "'");
  }
  return j.get<double>();
}

json encode_plan(const PlanResult& r) {
  json doc;
  doc["paths"] = r.paths;
  json values = json::array();
  for (double v : r.optimal_values) values.push_back(encode_value(v));
  doc["values"] = std::move(values);
  json feasible = json::array();
  for (bool f : r.feasible) feasible.push_back(f);
  doc["feasible"] = std::move(feasible);
  doc["goal_index"] = r.goal_index;
  return doc;
}

json encode_spline(const EdgeSpline& s) { return {{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}}; }

}  // namespace

std::string plan_result_to_json(const PlanResult& result, int indent) { return encode_plan(result).dump(indent); }

std::string akima_result_to_json(const AkimaPlanResult& result, std::size_t samples_per_edge, int indent) {
  json doc = encode_plan(result.plan);
  doc["knots"] = result.knots.t;
  json splines = json::array();
  for (const auto& path : result.splines) {
    json edges = json::array();
    for (const auto& s : path) edges.push_back(encode_spline(s));
    splines.push_back(std::move(edges));
  }
  doc["splines"] = std::move(splines);
  if (samples_per_edge > 0) {
    json polylines = json::array();
    for (const auto& path : result.splines) polylines.push_back(sample_spline_path(path, samples_per_edge));
    doc["polylines"] = std::move(polylines);
  }
  return doc.dump(indent);
}

PlanDocument plan_document_from_json(const std::string& text) {
  PlanDocument out;
  try {
    const json doc = json::parse(text);
    out.plan.paths = doc.at("paths").get<std::vector<Path>>();
    for (const auto& v : doc.at("values")) out.plan.optimal_values.push_back(decode_value(v));
    for (const auto& f : doc.at("feasible")) out.plan.feasible.push_back(f.get<bool>());
    out.plan.goal_index = doc.at("goal_index").get<std::vector<std::size_t>>();
    const std::size_t B = out.plan.paths.size();
    if (out.plan.optimal_values.size() != B || out.plan.feasible.size() != B || out.plan.goal_index.size() != B) {
      throw IoError("plan JSON: paths, values, feasible and goal_index lengths differ");
    }
    if (doc.contains("splines")) {
      out.knots.t = doc.at("knots").get<std::vector<double>>();
      for (const auto& path : doc.at("splines")) {
        std::vector<EdgeSpline> edges;
        std::size_t k = 0;
        for (const auto& e : path) {
          if (k + 1 >= out.knots.t.size()) throw IoError("plan JSON: more spline edges than knot intervals");
          edges.push_back(EdgeSpline{e.at("a").get<Vector>(), e.at("b").get<Vector>(), e.at("c").get<Vector>(),
                                     e.at("d").get<Vector>(), out.knots.t[k], out.knots.t[k + 1]});
          ++k;
        }
        out.splines.push_back(std::move(edges));
      }
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("plan JSON: ") + e.what());
  }
  return out;
}

}  // namespace gtmp
