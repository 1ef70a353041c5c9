#include "euclid_match/point_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace euclid_match {

std::vector<Point> read_points(std::istream& in) {
    std::vector<Point> points;
    std::string line;
    std::size_t lineno = 0;
    int dim = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        Point p;
        double x;
        while (ls >> x) p.coords.push_back(x);
        if (!ls.eof()) {
            std::string tok;
            ls.clear();
            ls >> tok;
            throw PointFileError("line " + std::to_string(lineno) + ": bad token '" + tok + "'");
        }
        if (p.coords.empty())
            throw PointFileError("line " + std::to_string(lineno) + ": no coordinates");
        if (dim < 0) dim = static_cast<int>(p.coords.size());
        if (static_cast<int>(p.coords.size()) != dim)
            throw PointFileError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(dim) + " coordinates, got " +
                                 std::to_string(p.coords.size()));
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PointFileError("cannot open '" + path + "'");
    return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Point>& points) {
    char buf[64];
    for (const Point& p : points) {
        for (std::size_t k = 0; k < p.coords.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", p.coords[k]);
            if (k) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

void write_points_file(const std::string& path, const std::vector<Point>& points) {
    std::ofstream out(path);
    if (!out) throw PointFileError("cannot open '" + path + "' for writing");
    write_points(out, points);
    if (!out) throw PointFileError("write to '" + path + "' failed");
}

}  // namespace euclid_match
