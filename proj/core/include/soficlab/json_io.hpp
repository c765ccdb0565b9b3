#ifndef SOFICLAB_JSON_IO_HPP
#define SOFICLAB_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "soficlab/action.hpp"
#include "soficlab/dynsys.hpp"
#include "soficlab/graph.hpp"
#include "soficlab/monoid.hpp"
#include "soficlab/search.hpp"

namespace soficlab {

using Json = nlohmann::json;

// All serializers produce deterministic bytes: object keys come out sorted
// (nlohmann's default ordering), collections are sorted, and every exact
// rational is a "p/q" string. dump_json appends a trailing newline.
std::string dump_json(const Json& j);

std::string base64_encode(const std::string& bytes);

Json monoid_to_json(const MonoidSpec& m);
MonoidSpec monoid_from_json(const Json& j);

// {"n", "root", "metric_mode", "vertex_labels", "edges"}; balls additionally
// carry "radius". Plain graphs serialize root/metric_mode/radius as null.
Json graph_to_json(const LabeledDigraph& g);
Json ball_to_json(const RootedBall& b);
LabeledDigraph graph_from_json(const Json& j);
RootedBall ball_from_json(const Json& j);

Json action_to_json(const FiniteAction& a);
FiniteAction action_from_json(const Json& j);

Json defect_report_to_json(const DefectReport& r);

Json pattern_measure_to_json(const PatternMeasure& pm);

}  // namespace soficlab

#endif
