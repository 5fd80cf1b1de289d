#include "irp/config.hpp"

#include "irp/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace irp {

using nlohmann::json;

std::vector<TypePrototype> default_prototypes() {
  return {
      {types::base, {0.18, 0.12, 0.03}},
      {types::cube, {0.05, 0.05, 0.05}},
      {types::roof, {0.10, 0.07, 0.05}},
  };
}

StackabilityRules StackabilityRules::defaults() {
  return {{
      {types::object, types::position},
      {types::cube, types::base},
      {types::cube, types::cube},
      {types::roof, types::cube},
  }};
}

bool StackabilityRules::allows(const TypeHierarchy &h, const TypeTag &object,
                               const TypeTag &element) const {
  for (const auto &r : allowed) {
    if (!h.contains(r.object) || !h.contains(r.element))
      continue;
    if (h.is_subtype(object, r.object) && h.is_subtype(element, r.element))
      return true;
  }
  return false;
}

WorkbenchConfig WorkbenchConfig::defaults() {
  WorkbenchConfig c;
  c.prototypes = default_prototypes();
  c.stackable = StackabilityRules::defaults();
  return c;
}

namespace {

Vec3 vec3(const json &j) {
  if (!j.is_array() || j.size() != 3)
    throw Error(ErrorCode::InvalidArgument, "expected a 3-element array, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

WorkbenchConfig WorkbenchConfig::parse(const std::string &text) {
  WorkbenchConfig c = defaults();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::CorruptFile, std::string("config: ") + e.what());
  }
  try {
    c.perception_threshold = j.value("perception_threshold", c.perception_threshold);
    c.stack_tolerance = j.value("stack_tolerance", c.stack_tolerance);
    c.frame_radius = j.value("frame_radius", c.frame_radius);
    c.grasp_radius = j.value("grasp_radius", c.grasp_radius);
    if (j.contains("workspace")) {
      c.workspace.min = vec3(j["workspace"].at("min"));
      c.workspace.max = vec3(j["workspace"].at("max"));
    }
    if (j.contains("prototypes")) {
      c.prototypes.clear();
      for (const auto &[name, p] : j["prototypes"].items()) {
        TypePrototype proto{TypeTag{name}, vec3(p.at("dims"))};
        if (p.contains("tolerance"))
          proto.tolerance = vec3(p["tolerance"]);
        c.prototypes.push_back(proto);
      }
    }
    if (j.contains("stackable")) {
      c.stackable.allowed.clear();
      for (const auto &r : j["stackable"])
        c.stackable.allowed.push_back(
            {TypeTag{r.at(0).get<std::string>()}, TypeTag{r.at(1).get<std::string>()}});
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
  }
  if (c.perception_threshold <= 0 || c.stack_tolerance <= 0 || c.frame_radius <= 0 ||
      c.grasp_radius <= 0)
    throw Error(ErrorCode::InvalidArgument, "config: thresholds must be positive");
  return c;
}

WorkbenchConfig WorkbenchConfig::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::NotFound, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

WorkbenchConfig WorkbenchConfig::from_environment() {
  const char *path = std::getenv("IRP_CONFIG");
  if (!path || !*path)
    return defaults();
  return load(path);
}

} // namespace irp
