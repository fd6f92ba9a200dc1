#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"

namespace galerkin {

/// Shortest round-trip-safe text for a double: 17 significant digits.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Plain-text dense format: one row per line, entries separated by single spaces.
inline void write_dense(std::ostream& os, const RealMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                os << ' ';
            }
            os << format_double(a(i, j));
        }
        os << '\n';
    }
}

inline RealMatrix read_dense(std::istream& is) {
    std::vector<double> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        std::size_t count = 0;
        double v = 0.0;
        while (ls >> v) {
            entries.push_back(v);
            ++count;
        }
        if (!ls.eof()) {
            throw InvalidArgument("read_dense: malformed number on line " + std::to_string(rows + 1));
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw DimensionMismatch("read_dense: ragged row " + std::to_string(rows + 1));
        }
        ++rows;
    }
    return RealMatrix(rows, cols, std::move(entries));
}

}  // namespace galerkin
