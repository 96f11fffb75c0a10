#include "gaitmap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaitmap {

using nlohmann::json;

namespace {

Color color_from_string(const std::string& s) {
  if (s == "red") return Color::Red;
  if (s == "blue") return Color::Blue;
  throw ParseError("unknown color \"" + s + "\" (expected \"red\" or \"blue\")");
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

GaitProgram gait_from_generator(const json& gen) {
  const std::string type = gen.at("type").get<std::string>();
  if (type == "preset") return preset(gen.at("name").get<std::string>());
  if (type == "circle") {
    const auto& c = gen.at("center");
    return generate_circle(PlanarPoint(finite_number(c.at(0), "center"),
                                       finite_number(c.at(1), "center")),
                           finite_number(gen.at("radius"), "radius"),
                           color_from_string(gen.at("color").get<std::string>()),
                           finite_number(gen.at("period"), "period"), gen.at("n").get<int>());
  }
  if (type == "polygon") {
    std::vector<PlanarPoint> vertices;
    for (const auto& v : gen.at("vertices"))
      vertices.emplace_back(finite_number(v.at(0), "vertex"), finite_number(v.at(1), "vertex"));
    std::vector<Color> colors;
    for (const auto& c : gen.at("colors_per_lap"))
      colors.push_back(color_from_string(c.get<std::string>()));
    return generate_polygon(vertices, colors, finite_number(gen.at("period"), "period"),
                            gen.at("n").get<int>());
  }
  throw ParseError("unknown generator type \"" + type + "\"");
}

}  // namespace

std::string gait_to_json(const GaitProgram& g) {
  json j;
  j["periodic"] = g.periodic;
  if (g.periodic) j["period"] = g.period;
  j["step_bound"] = g.step_bound;
  if (!g.name.empty()) j["name"] = g.name;
  json samples = json::array();
  for (const ColoredSample& s : g.samples) {
    samples.push_back(json{{"t", s.t},
                           {"a1", s.point.a1},
                           {"a2", s.point.a2},
                           {"color", to_string(s.color)}});
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

GaitProgram gait_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("gait JSON: ") + e.what());
  }
  try {
    if (j.contains("generator")) {
      try {
        return gait_from_generator(j.at("generator"));
      } catch (const GenerationError& e) {
        throw ParseError(std::string("gait generator: ") + e.what());
      }
    }
    GaitProgram g;
    g.periodic = j.value("periodic", false);
    if (g.periodic) g.period = finite_number(j.at("period"), "period");
    g.step_bound = j.contains("step_bound")
                       ? finite_number(j.at("step_bound"), "step_bound")
                       : kDefaultStepBound;
    if (!(g.step_bound > 0.0)) throw ParseError("step_bound must be positive");
    g.name = j.value("name", std::string());
    if (!j.contains("samples") || !j.at("samples").is_array())
      throw ParseError("gait JSON needs a \"samples\" array or a \"generator\"");
    for (const auto& s : j.at("samples")) {
      ColoredSample cs;
      cs.t = finite_number(s.at("t"), "sample time");
      cs.point = PlanarPoint(finite_number(s.at("a1"), "a1"), finite_number(s.at("a2"), "a2"));
      cs.color = color_from_string(s.at("color").get<std::string>());
      g.samples.push_back(cs);
    }
    return g;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("gait JSON: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("gait JSON: ") + e.what());
  }
}

GaitProgram load_gait(const std::string& path_or_uri) {
  constexpr const char* kScheme = "presets://";
  if (path_or_uri.rfind(kScheme, 0) == 0) {
    const std::string name = path_or_uri.substr(std::string(kScheme).size());
    try {
      return preset(name);
    } catch (const GenerationError& e) {
      throw ParseError(e.what());
    }
  }
  return gait_from_json(read_text_file(path_or_uri));
}

void save_gait(const std::string& path, const GaitProgram& g) {
  write_text_file(path, gait_to_json(g));
}

namespace {

json table_to_json(const HoverCoefficients& t) {
  json out = json::object();
  for (int i = 0; i < 16; ++i)
    if (t[i] != 0.0) out[HoverCoefficients::pattern_name(i)] = t[i];
  return out;
}

HoverCoefficients table_from_json(const json& j, const char* which) {
  HoverCoefficients t;
  if (!j.is_object()) throw ParseError(std::string(which) + " table must be an object");
  for (const auto& [key, value] : j.items()) {
    int idx;
    try {
      idx = HoverCoefficients::pattern_index(key);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("InvalidPattern in ") + which + ": " + e.what());
    }
    t[idx] = finite_number(value, (std::string(which) + "." + key).c_str());
  }
  return t;
}

}  // namespace

std::string model_to_json(const DeterminantModel& model) {
  json j;
  j["Dz"] = table_to_json(model.Dz);
  j["Dy"] = table_to_json(model.Dy);
  j["Dx"] = table_to_json(model.Dx);
  j["scale"] = model.scale;
  j["mode"] = to_string(model.mode);
  return j.dump(2) + "\n";
}

DeterminantModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  DeterminantModel m;
  if (j.contains("Dz")) m.Dz = table_from_json(j.at("Dz"), "Dz");
  if (j.contains("Dy")) m.Dy = table_from_json(j.at("Dy"), "Dy");
  if (j.contains("Dx")) m.Dx = table_from_json(j.at("Dx"), "Dx");
  m.scale = j.contains("scale") ? finite_number(j.at("scale"), "scale") : 1.0;
  if (!(m.scale > 0.0)) throw ParseError("model scale must be positive");
  const std::string mode = j.value("mode", "attitude-extended");
  if (mode == "hover-only")
    m.mode = ModelMode::HoverOnly;
  else if (mode == "first-order")
    m.mode = ModelMode::FirstOrder;
  else if (mode == "attitude-extended")
    m.mode = ModelMode::AttitudeExtended;
  else
    throw ParseError("unknown model mode \"" + mode + "\"");
  if (!m.Dz.all_finite() || !m.Dy.all_finite() || !m.Dx.all_finite())
    throw ParseError("model coefficients must be finite");
  return m;
}

DeterminantModel load_model(const std::string& path) {
  return model_from_json(read_text_file(path));
}

void save_model(const std::string& path, const DeterminantModel& model) {
  write_text_file(path, model_to_json(model));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\" for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) throw ParseError("failed writing \"" + path + "\"");
}

}  // namespace gaitmap
