#pragma once

#include <array>
#include <string>
#include <vector>

#include "camc/amc_verify.hpp"
#include "camc/mesh.hpp"

namespace camc {

/// ASCII OBJ with a leading comment line, `v` lines at 9 significant digits
/// and one-based `f` lines. Throws IoError.
void write_obj(const TriMesh& mesh, const std::string& path, const std::string& comment = "camc mesh");

/// Reads `v` and triangular `f` lines (slash suffixes ignored); other records
/// are skipped. Throws IoError on unreadable files or malformed records.
TriMesh read_obj(const std::string& path);

/// Named columns of equal length.
struct CurveTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    /// Throws DomainError on a length mismatch or duplicate name.
    void add(const std::string& name, std::vector<double> values);
    const std::vector<double>& column(const std::string& name) const;
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Header row then 17-significant-digit rows. Throws DomainError on an empty
/// table and IoError on write failure.
void write_csv(const CurveTable& table, const std::string& path);
CurveTable read_csv(const std::string& path);

using Point2 = std::array<double, 2>;

/// Single-polyline SVG whose viewBox is the bounding box padded by 5% of its
/// larger side. The y axis is flipped so the picture reads in math orientation.
void write_svg_polyline(const std::vector<Point2>& points, const std::string& path);

/// MeshEnergyReport as a JSON document (see README for the schema).
std::string report_json(const MeshEnergyReport& report);

/// Writes text verbatim with LF endings. Throws IoError.
void write_text(const std::string& path, const std::string& text);

/// Whole-file read. Throws IoError.
std::string read_text(const std::string& path);

}  // namespace camc
