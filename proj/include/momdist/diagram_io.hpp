#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "momdist/persistence.hpp"

namespace momdist {

/// [{"dim": k, "birth": b, "death": d | "inf"}, ...]
nlohmann::json diagram_to_json(const PersistenceDiagram& diagram);
PersistenceDiagram diagram_from_json(const nlohmann::json& j);

/// Rows `dim,birth,death` with the literal `inf` for essential classes.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram);
PersistenceDiagram read_diagram_csv(std::istream& in);

/// Dispatches on the file extension (.json or .csv).
PersistenceDiagram read_diagram_file(const std::string& path);
void write_diagram_file(const std::string& path, const PersistenceDiagram& diagram);

}  // namespace momdist
