#include "grassmatch/cloud_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "grassmatch/errors.hpp"

namespace grassmatch {

PointCloud read_cloud(std::istream& in, const std::string& name) {
    std::vector<std::vector<double>> points;
    std::size_t width = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<double> coords;
        std::string token;
        while (ls >> token) {
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
                throw ParseError(name + ": bad number '" + token + "'", line_no);
            }
            coords.push_back(v);
        }
        if (coords.empty()) continue; // blank line
        if (width == 0) {
            width = coords.size();
        } else if (coords.size() != width) {
            throw ParseError(name + ": expected " + std::to_string(width) +
                                 " coordinates, got " +
                                 std::to_string(coords.size()),
                             line_no);
        }
        points.push_back(std::move(coords));
    }
    if (points.empty()) throw EmptyFile(name + ": no points");

    Matrix m(width, points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < width; ++i) m(i, j) = points[j][i];
    }
    return PointCloud(std::move(m));
}

PointCloud load_cloud(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_cloud(in, path);
}

void write_cloud(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t j = 0; j < cloud.count(); ++j) {
        for (std::size_t i = 0; i < cloud.dim(); ++i) {
            if (i > 0) out << ' ';
            out << cloud.data(i, j);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace grassmatch
