#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qgi/geom4.hpp"
#include "qgi/isotopy_fuzz.hpp"
#include "qgi/scene.hpp"

namespace qgi {

/// Parses a UTF-8 JSON scene document. Malformed JSON throws
/// Error(ParseError) with "line L, column C"; wrong shapes, out-of-range
/// indices, non-finite numbers and duplicate ids throw Error(SchemaError).
Scene parse_scene(std::string_view text);

/// Canonical JSON with sorted keys. Floats use the shortest representation
/// that reads back to the same double.
std::string serialize_scene(const Scene& s);

/// Canonical report JSON (sorted keys, trailing newline). Absent invariants
/// are omitted, so an empty scene yields only validation and provenance.
std::string serialize_report(const InvariantReport& r);

InvariantReport parse_report(std::string_view text);

/// Report of the starting scene plus a "fuzz" section with the run counters.
std::string serialize_fuzz_summary(const FuzzSummary& f, std::size_t steps_requested);

/// SVG of the spatial link diagram of every loop on `plane`: strands as
/// polylines, a "crossing-gap" element on the under-strand at each crossing,
/// eps labels and node markers. Throws DegenerateDiagram.
std::string render_svg(const Scene& s, Plane plane);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qgi
