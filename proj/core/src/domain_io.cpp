#include "polycap/domain_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "polycap/errors.hpp"

namespace polycap {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& where) {
  if (!j.is_number())
    throw InvalidParameter("domain file: expected a number at " + where);
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw InvalidParameter("domain file: non-finite number at " + where);
  return v;
}

Complex get_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidParameter("domain file: expected [x, y] at " + where);
  return {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]")};
}

CircularArc parse_arc(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw InvalidParameter("domain file: arc without \"kind\" at " + where);
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "three_point") {
      const auto& pts = j.at("points");
      if (!pts.is_array() || pts.size() != 3)
        throw InvalidParameter("domain file: three_point needs 3 points at " + where);
      return arc_from_three_points(get_point(pts[0], where + ".points[0]"),
                                   get_point(pts[1], where + ".points[1]"),
                                   get_point(pts[2], where + ".points[2]"));
    }
    if (kind == "endpoint_center")
      return arc_from_endpoints_center(get_point(j.at("a"), where + ".a"),
                                       get_point(j.at("b"), where + ".b"),
                                       get_point(j.at("center"), where + ".center"),
                                       j.at("ccw").get<bool>());
    if (kind == "segment")
      return segment(get_point(j.at("a"), where + ".a"),
                     get_point(j.at("b"), where + ".b"));
    if (kind == "full_circle")
      return full_circle(get_point(j.at("center"), where + ".center"),
                         get_number(j.at("radius"), where + ".radius"),
                         j.at("ccw").get<bool>());
  } catch (const json::exception& e) {
    throw InvalidParameter("domain file: malformed arc at " + where + ": " + e.what());
  } catch (const InvalidGeometry& e) {
    throw InvalidParameter("domain file: bad arc at " + where + ": " + e.what());
  }
  throw InvalidParameter("domain file: unknown arc kind \"" + kind + "\" at " + where);
}

BoundaryComponent parse_component(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("arcs") || !j.at("arcs").is_array() ||
      j.at("arcs").empty())
    throw InvalidParameter("domain file: expected {\"arcs\": [...]} at " + where);
  std::vector<CircularArc> arcs;
  for (std::size_t i = 0; i < j.at("arcs").size(); ++i)
    arcs.push_back(parse_arc(j.at("arcs")[i], where + ".arcs[" + std::to_string(i) + "]"));
  try {
    return BoundaryComponent(std::move(arcs));
  } catch (const InvalidGeometry& e) {
    throw InvalidParameter("domain file: " + where + ": " + e.what());
  }
}

double scrub_zero(double v) { return v == 0.0 ? 0.0 : v; }

json point_to_json(Complex z) {
  return json::array({scrub_zero(z.real()), scrub_zero(z.imag())});
}

json arc_to_json(const CircularArc& arc) {
  json j;
  switch (arc.kind) {
    case CircularArc::Kind::Segment:
      j["kind"] = "segment";
      j["a"] = point_to_json(arc.a);
      j["b"] = point_to_json(arc.b);
      break;
    case CircularArc::Kind::FullCircle:
      j["kind"] = "full_circle";
      j["center"] = point_to_json(arc.center);
      j["radius"] = arc.radius;
      j["ccw"] = arc.ccw;
      break;
    case CircularArc::Kind::Arc:
      j["kind"] = "endpoint_center";
      j["a"] = point_to_json(arc.start());
      j["b"] = point_to_json(arc.end());
      j["center"] = point_to_json(arc.center);
      j["ccw"] = arc.sweep() > 0.0;
      break;
  }
  return j;
}

json component_to_json(const BoundaryComponent& comp) {
  json arcs = json::array();
  for (const auto& arc : comp.arcs) arcs.push_back(arc_to_json(arc));
  return json{{"arcs", std::move(arcs)}};
}

void dump_recursive(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_recursive(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_recursive(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

PolycircularCondenser parse_domain(const json& doc) {
  if (!doc.is_object())
    throw InvalidParameter("domain file: top level must be an object");
  if (!doc.contains("version") ||
      doc.at("version").get<std::string>() != kDomainFileVersion)
    throw InvalidParameter("domain file: missing or unsupported version field");
  if (!doc.contains("outer"))
    throw InvalidParameter("domain file: missing \"outer\"");
  if (!doc.contains("holes") || !doc.at("holes").is_array() || doc.at("holes").empty())
    throw InvalidParameter("domain file: \"holes\" must be a non-empty array");

  PolycircularCondenser c;
  c.outer = parse_component(doc.at("outer"), "outer");
  for (std::size_t k = 0; k < doc.at("holes").size(); ++k)
    c.holes.push_back(
        parse_component(doc.at("holes")[k], "holes[" + std::to_string(k) + "]"));
  if (doc.contains("alpha")) c.alpha = get_point(doc.at("alpha"), "alpha");
  if (doc.contains("alpha_k")) {
    const auto& ak = doc.at("alpha_k");
    if (!ak.is_array())
      throw InvalidParameter("domain file: \"alpha_k\" must be an array of points");
    std::vector<Complex> pts;
    for (std::size_t k = 0; k < ak.size(); ++k)
      pts.push_back(get_point(ak[k], "alpha_k[" + std::to_string(k) + "]"));
    c.alpha_k = std::move(pts);
  }
  return c;
}

json domain_to_json(const PolycircularCondenser& condenser) {
  json doc;
  doc["version"] = kDomainFileVersion;
  doc["outer"] = component_to_json(condenser.outer);
  json holes = json::array();
  for (const auto& h : condenser.holes) holes.push_back(component_to_json(h));
  doc["holes"] = std::move(holes);
  if (condenser.alpha) doc["alpha"] = point_to_json(*condenser.alpha);
  if (condenser.alpha_k) {
    json ak = json::array();
    for (const auto& z : *condenser.alpha_k) ak.push_back(point_to_json(z));
    doc["alpha_k"] = std::move(ak);
  }
  return doc;
}

std::string canonical_dump(const json& doc) {
  std::string out;
  dump_recursive(doc, out);
  out += '\n';
  return out;
}

std::vector<std::string> builtin_names() {
  return {"annulus-0.7", "disk-0.8",  "lens-2/5-1/10", "lens-0.8-0.3",
          "mobius-E",    "four-lens", "bart"};
}

PolycircularCondenser builtin_domain(const std::string& name) {
  PolycircularCondenser c;
  c.outer = make_circle({0.0, 0.0}, 1.0, true);
  if (name == "annulus-0.7") {
    c.holes.push_back(make_circle({0.0, 0.0}, 0.7, false));
    c.alpha = Complex{0.85, 0.0};
    c.alpha_k = std::vector<Complex>{{0.0, 0.0}};
  } else if (name == "disk-0.8") {
    c.holes.push_back(make_circle({0.0, 0.0}, 0.8, false));
    c.alpha = Complex{0.9, 0.0};
    c.alpha_k = std::vector<Complex>{{0.0, 0.0}};
  } else if (name == "lens-2/5-1/10") {
    c.holes.push_back(make_lens(0.4, 0.1));
    c.alpha_k = std::vector<Complex>{{0.0, 0.0}};
  } else if (name == "lens-0.8-0.3") {
    c.holes.push_back(make_lens(0.8, 0.3));
    c.alpha_k = std::vector<Complex>{{0.0, 0.0}};
  } else if (name == "mobius-E") {
    c.holes.push_back(make_mobius_e());
    c.alpha = Complex{0.0, -0.3};
    c.alpha_k = std::vector<Complex>{{0.0, 0.3}};
  } else if (name == "four-lens") {
    for (auto& lens : make_four_lens()) c.holes.push_back(std::move(lens));
    c.alpha = Complex{0.0, 0.0};
  } else if (name == "bart") {
    c.holes.push_back(make_bart());
    c.alpha = Complex{0.0, -0.5};
    c.alpha_k = std::vector<Complex>{{0.0, 0.0}};
  } else {
    throw InvalidParameter("unknown builtin domain \"" + name + "\"");
  }
  return c;
}

PolycircularCondenser load_domain(const std::string& path_or_builtin) {
  if (path_or_builtin.rfind("builtin:", 0) == 0)
    return builtin_domain(path_or_builtin.substr(8));
  std::ifstream in(path_or_builtin);
  if (!in)
    throw InvalidParameter("cannot open domain file \"" + path_or_builtin + "\"");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidParameter("domain file \"" + path_or_builtin +
                           "\": JSON parse error: " + e.what());
  }
  return parse_domain(doc);
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidParameter("empty complex literal");

  auto parse_part = [](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &pos);
    } catch (const std::exception&) {
      throw InvalidParameter("bad complex literal part \"" + part + "\"");
    }
    if (pos != part.size())
      throw InvalidParameter("bad complex literal part \"" + part + "\"");
    return v;
  };

  // Split before the sign that starts the second term (not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  }

  if (s.back() == 'i') {
    if (split == std::string::npos)
      return {0.0, parse_part(s.substr(0, s.size() - 1))};
    return {parse_part(s.substr(0, split)),
            parse_part(s.substr(split, s.size() - split - 1))};
  }
  if (split != std::string::npos && s.find('i') != std::string::npos)
    throw InvalidParameter("bad complex literal \"" + text + "\"");
  return {parse_part(s), 0.0};
}

}  // namespace polycap
