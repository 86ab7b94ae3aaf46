#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kin/dh.hpp"
#include "kin/ncpoly.hpp"
#include "kin/pods.hpp"
#include "kin/rigidity.hpp"
#include "kin/synth.hpp"

namespace kin::io {

using nlohmann::json;

// %.17g
std::string num(double v);

json read_json(const std::string& path);
// written to a temporary file first, then renamed
void write_file(const std::string& path, const std::string& text);

struct GraphFile {
    Graph graph;
    Labeling lengths;  // empty when the file has none
};

GraphFile graph_from_json(const json& j);
json graph_to_json(const Graph& g, const Labeling* lengths = nullptr);

// vertex label -> [x, y(, z)]
Placement placement_from_json(const Graph& g, const json& j);
json placement_to_json(const Graph& g, const Placement& p);

RationalPlaneCurve curve_from_json(const json& j);
json curve_to_json(const RationalPlaneCurve& c);

DHLoop loop_from_json(const json& j);
json loop_to_json(const DHLoop& l);

std::vector<Leg> pod_from_json(const json& j);
json pod_to_json(const std::vector<Leg>& legs);

// {"coeffs": [[w, x, y, z, dw, dx, dy, dz], ...]} in ascending degree; four numbers for a quaternion
MotionPoly motion_poly_from_json(const json& j);
json motion_poly_to_json(const MotionPoly& p);
json dq_to_json(const DualQuaternion& h);

// {"rotation": [[...], [...], [...]], "translation": [x, y, z]}
Isometry isometry_from_json(const json& j);
json isometry_to_json(const Isometry& g);

// numbers or [re, im] pairs
cplx complex_from_json(const json& j);
json complex_to_json(cplx z);
// 17 coordinates
Vec17 vec17_from_json(const json& j);
json vec17_to_json(const Vec17& v);

}  // namespace kin::io
