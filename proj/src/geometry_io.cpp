#include "camc/geometry_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "camc/errors.hpp"
#include "json.hpp"

namespace camc {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

double parse_double(const std::string& token, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line) + ": bad number '" + token + "'");
    }
}

}  // namespace

void write_obj(const TriMesh& mesh, const std::string& path, const std::string& comment) {
    mesh.validate();
    std::ofstream out = open_out(path);
    out << "# " << comment << '\n';
    for (const Vec3& v : mesh.vertices)
        out << "v " << fmt("%.9g", v.x()) << ' ' << fmt("%.9g", v.y()) << ' ' << fmt("%.9g", v.z()) << '\n';
    for (const Face& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    finish(out, path);
}

TriMesh read_obj(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    TriMesh mesh;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            std::string a, b, c;
            if (!(ss >> a >> b >> c)) throw IoError(path + ":" + std::to_string(lineno) + ": short vertex record");
            mesh.vertices.emplace_back(parse_double(a, path, lineno), parse_double(b, path, lineno),
                                       parse_double(c, path, lineno));
        } else if (tag == "f") {
            Face f{};
            std::string tok;
            int k = 0;
            while (ss >> tok) {
                if (k == 3) throw IoError(path + ":" + std::to_string(lineno) + ": only triangles are supported");
                const std::string head = tok.substr(0, tok.find('/'));
                const double idx = parse_double(head, path, lineno);
                if (idx < 1 || idx != static_cast<int>(idx))
                    throw IoError(path + ":" + std::to_string(lineno) + ": bad face index '" + tok + "'");
                f[static_cast<std::size_t>(k++)] = static_cast<int>(idx) - 1;
            }
            if (k != 3) throw IoError(path + ":" + std::to_string(lineno) + ": short face record");
            mesh.faces.push_back(f);
        }
    }
    try {
        mesh.validate();
    } catch (const std::out_of_range& e) {
        throw IoError(path + ": " + e.what());
    }
    return mesh;
}

void CurveTable::add(const std::string& name, std::vector<double> values) {
    if (std::find(names.begin(), names.end(), name) != names.end())
        throw DomainError("duplicate column '" + name + "'");
    if (!columns.empty() && values.size() != rows())
        throw DomainError("column '" + name + "' has " + std::to_string(values.size()) + " rows, expected " +
                          std::to_string(rows()));
    names.push_back(name);
    columns.push_back(std::move(values));
}

const std::vector<double>& CurveTable::column(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DomainError("no column '" + name + "'");
    return columns[static_cast<std::size_t>(it - names.begin())];
}

void write_csv(const CurveTable& table, const std::string& path) {
    if (table.columns.empty() || table.rows() == 0) throw DomainError("write_csv needs a non-empty table");
    for (const auto& c : table.columns)
        if (c.size() != table.rows()) throw DomainError("columns differ in length");
    std::ofstream out = open_out(path);
    for (std::size_t k = 0; k < table.names.size(); ++k) out << (k ? "," : "") << table.names[k];
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t k = 0; k < table.columns.size(); ++k)
            out << (k ? "," : "") << fmt("%.17g", table.columns[k][r]);
        out << '\n';
    }
    finish(out, path);
}

CurveTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    const std::vector<std::string> names = split(line);
    std::vector<std::vector<double>> columns(names.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != names.size())
            throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(names.size()) +
                          " fields");
        for (std::size_t k = 0; k < cells.size(); ++k) columns[k].push_back(parse_double(cells[k], path, lineno));
    }
    CurveTable table;
    for (std::size_t k = 0; k < names.size(); ++k) table.add(names[k], std::move(columns[k]));
    return table;
}

void write_svg_polyline(const std::vector<Point2>& points, const std::string& path) {
    if (points.size() < 2) throw DomainError("a polyline needs at least two points");
    double xmin = points[0][0], xmax = xmin, ymin = points[0][1], ymax = ymin;
    for (const Point2& p : points) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    double side = std::max(xmax - xmin, ymax - ymin);
    if (side == 0.0) side = 1.0;
    const double pad = 0.05 * side;
    const double vx = xmin - pad, vy = -ymax - pad;
    const double vw = xmax - xmin + 2 * pad, vh = ymax - ymin + 2 * pad;

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt("%.9g", vx) << ' ' << fmt("%.9g", vy) << ' '
        << fmt("%.9g", vw) << ' ' << fmt("%.9g", vh) << "\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt("%.6g", 0.004 * side)
        << "\" points=\"";
    for (std::size_t k = 0; k < points.size(); ++k)
        out << (k ? " " : "") << fmt("%.9g", points[k][0]) << ',' << fmt("%.9g", -points[k][1]);
    out << "\"/>\n</svg>\n";
    finish(out, path);
}

std::string report_json(const MeshEnergyReport& report) {
    nlohmann::ordered_json j;
    j["vertices"] = report.vertices;
    j["estimates"] = report.estimates;
    j["mean"] = report.mean;
    j["target"] = report.target ? nlohmann::ordered_json(*report.target) : nlohmann::ordered_json(nullptr);
    j["max_deviation"] = report.max_deviation;
    j["bump_radius"] = report.bump_radius;
    j["bump_amplitude"] = report.bump_amplitude;
    return j.dump(1) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    finish(out, path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace camc
