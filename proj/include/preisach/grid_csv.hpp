#pragma once

// Grid weighting files.
//
//   alpha_lo,alpha_hi,beta_lo,beta_hi,n_alpha,n_beta
//   <n_beta rows of n_alpha comma-separated cell values>
//
// Rows hold fixed beta with ascending alpha; rows ascend in beta. The first
// line may be either the literal header names followed by a value line, or
// the values directly.

#include "preisach/errors.hpp"
#include "preisach/grid_field.hpp"
#include "preisach/number_format.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace preisach {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

inline double parse_real(const std::string& s, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("grid CSV line " + std::to_string(line_no) + ": not a number: '" + s + "'");
    }
}

}  // namespace detail

inline GridField read_grid_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw ConfigError("grid CSV is empty");
    auto head = detail::split_csv_line(line);
    if (!head.empty() && head[0].find("alpha_lo") != std::string::npos) {
        if (!next_line()) throw ConfigError("grid CSV is missing the dimension line");
        head = detail::split_csv_line(line);
    }
    if (head.size() != 6) throw ConfigError("grid CSV header needs 6 fields");
    const Box box{detail::parse_real(head[0], line_no), detail::parse_real(head[1], line_no),
                  detail::parse_real(head[2], line_no), detail::parse_real(head[3], line_no)};
    const double na_real = detail::parse_real(head[4], line_no);
    const double nb_real = detail::parse_real(head[5], line_no);
    const int na = static_cast<int>(na_real);
    const int nb = static_cast<int>(nb_real);
    if (na != na_real || nb != nb_real || na < 1 || nb < 1)
        throw ConfigError("grid CSV dimensions must be positive integers");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(na) * nb);
    for (int j = 0; j < nb; ++j) {
        if (!next_line()) throw ConfigError("grid CSV has fewer than n_beta value rows");
        const auto cells = detail::split_csv_line(line);
        if (static_cast<int>(cells.size()) != na)
            throw ConfigError("grid CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                              " values, expected " + std::to_string(na));
        for (const auto& c : cells) values.push_back(detail::parse_real(c, line_no));
    }
    return GridField(box, na, nb, std::move(values));
}

inline GridField read_grid_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open grid file: " + path);
    return read_grid_csv(in);
}

inline void write_grid_csv(std::ostream& out, const GridField& g) {
    const Box& b = g.support();
    out << "alpha_lo,alpha_hi,beta_lo,beta_hi,n_alpha,n_beta\n";
    out << format_real(b.alpha_lo) << ',' << format_real(b.alpha_hi) << ',' << format_real(b.beta_lo) << ','
        << format_real(b.beta_hi) << ',' << g.n_alpha() << ',' << g.n_beta() << '\n';
    for (int j = 0; j < g.n_beta(); ++j) {
        for (int i = 0; i < g.n_alpha(); ++i) {
            if (i) out << ',';
            out << format_real(g.cell_value(i, j));
        }
        out << '\n';
    }
}

}  // namespace preisach
