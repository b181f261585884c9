#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isogreen/graph.hpp"

// Graph-spec text format. Emission is hand-rolled so the byte layout is
// canonical: fixed key order, one field per line, every float printed with
// 17 significant digits. parse -> write is a fixed point.

namespace isogreen {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt17(xs[i]);
  }
  return out + "]";
}

}  // namespace

std::string write_graph_spec(const GraphSpec& spec) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"version\": " << spec.version << ",\n";
  os << "  \"builder\": \"" << spec.builder << "\",\n";
  os << "  \"epsilon\": " << fmt17(spec.epsilon);
  if (spec.builder == "square") {
    os << ",\n  \"extent\": " << spec.extent;
    os << ",\n  \"theta_bar\": " << fmt17(spec.theta_bar);
  } else if (spec.builder == "triangular") {
    os << ",\n  \"extent\": " << spec.extent;
  } else if (spec.builder == "alternating") {
    os << ",\n  \"extent\": " << spec.extent;
    os << ",\n  \"theta_a_bar\": " << fmt17(spec.theta_a_bar);
    os << ",\n  \"theta_b_bar\": " << fmt17(spec.theta_b_bar);
  } else if (spec.builder == "tracks") {
    os << ",\n  \"window\": " << fmt17(spec.tracks.window);
    os << ",\n  \"families\": [\n";
    for (std::size_t f = 0; f < spec.tracks.families.size(); ++f) {
      const TrackFamily& fam = spec.tracks.families[f];
      os << "    {\"angles\": " << fmt_list(fam.angles);
      if (!fam.offsets.empty()) os << ", \"offsets\": " << fmt_list(fam.offsets);
      os << "}" << (f + 1 < spec.tracks.families.size() ? "," : "") << "\n";
    }
    os << "  ]";
  } else {
    throw DomainError("write_graph_spec: unknown builder '" + spec.builder + "'");
  }
  os << "\n}\n";
  return os.str();
}

GraphSpec parse_graph_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("parse_graph_spec: ") + e.what());
  }
  GraphSpec spec;
  spec.version = j.value("version", 1);
  if (spec.version != 1) throw DomainError("parse_graph_spec: unknown version");
  spec.builder = j.value("builder", "");
  spec.epsilon = j.value("epsilon", kDefaultEps);
  spec.extent = j.value("extent", 0);
  spec.theta_bar = j.value("theta_bar", 0.0);
  spec.theta_a_bar = j.value("theta_a_bar", 0.0);
  spec.theta_b_bar = j.value("theta_b_bar", 0.0);
  spec.tracks.eps = spec.epsilon;
  spec.tracks.window = j.value("window", 0.0);
  if (j.contains("families")) {
    for (const auto& jf : j.at("families")) {
      TrackFamily fam;
      fam.angles = jf.at("angles").get<std::vector<double>>();
      if (jf.contains("offsets"))
        fam.offsets = jf.at("offsets").get<std::vector<double>>();
      spec.tracks.families.push_back(std::move(fam));
    }
  }
  return spec;
}

IsoradialGraph build_from_spec(const GraphSpec& spec) {
  if (spec.builder == "square")
    return IsoradialGraph::build_square(spec.theta_bar, spec.extent, spec.epsilon);
  if (spec.builder == "triangular")
    return IsoradialGraph::build_triangular(spec.extent, spec.epsilon);
  if (spec.builder == "alternating")
    return IsoradialGraph::build_alternating(spec.theta_a_bar, spec.theta_b_bar,
                                             spec.extent, spec.epsilon);
  if (spec.builder == "tracks") return IsoradialGraph::build_from_tracks(spec.tracks);
  throw DomainError("build_from_spec: unknown builder '" + spec.builder + "'");
}

}  // namespace isogreen
