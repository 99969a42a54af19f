#include "momdist/diagram_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace momdist {

namespace {

double parse_value(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw Error("malformed diagram value '" + text + "'");
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

nlohmann::json diagram_to_json(const PersistenceDiagram& diagram) {
  auto arr = nlohmann::json::array();
  for (const auto& p : diagram.pairs) {
    nlohmann::json row{{"dim", p.dim}, {"birth", p.birth}};
    if (p.essential()) {
      row["death"] = "inf";
    } else {
      row["death"] = p.death;
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("diagram JSON must be an array");
  PersistenceDiagram d;
  for (const auto& row : j) {
    PersistencePair p;
    p.dim = row.at("dim").get<int>();
    p.birth = row.at("birth").get<double>();
    const auto& death = row.at("death");
    p.death = death.is_string() ? parse_value(death.get<std::string>()) : death.get<double>();
    if (p.dim < 0) throw Error("negative diagram dimension");
    if (p.death < p.birth) throw Error("diagram pair with death before birth");
    d.pairs.push_back(p);
  }
  return d;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram) {
  const auto old = out.precision(17);
  for (const auto& p : diagram.pairs) {
    out << p.dim << ',' << p.birth << ',';
    if (p.essential()) {
      out << "inf";
    } else {
      out << p.death;
    }
    out << '\n';
  }
  out.precision(old);
}

PersistenceDiagram read_diagram_csv(std::istream& in) {
  PersistenceDiagram d;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
      throw Error("diagram CSV rows need dim,birth,death");
    if (a == "dim") continue;  // header
    PersistencePair p{std::stoi(a), parse_value(b), parse_value(c)};
    if (p.death < p.birth) throw Error("diagram pair with death before birth");
    d.pairs.push_back(p);
  }
  return d;
}

PersistenceDiagram read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  if (ends_with(path, ".csv")) return read_diagram_csv(in);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed diagram JSON in " + path + ": " + e.what());
  }
  auto d = diagram_from_json(j);
  d.source = path;
  return d;
}

void write_diagram_file(const std::string& path, const PersistenceDiagram& diagram) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  if (ends_with(path, ".csv")) {
    write_diagram_csv(out, diagram);
  } else {
    out << diagram_to_json(diagram).dump(1) << '\n';
  }
}

}  // namespace momdist
