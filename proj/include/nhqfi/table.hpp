#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nhqfi::table {

// Shortest representation that round-trips a double exactly ("%.17g";
// "nan", "inf", "-inf" for non-finite values).
std::string fmt(double v);
double number(const std::string& s);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // throws when missing
    void add(std::vector<std::string> row);
    std::vector<double> numbers(const std::string& name) const;
    std::vector<std::string> strings(const std::string& name) const;
};

std::string to_csv(const Table& t);
Table parse_csv(std::string_view text);

struct PlotSpec {
    std::string title;
    std::string x_col;
    std::string y_col;
    std::string group_col;  // one polyline per distinct value; empty = single series
    bool log_x = false;
    bool log_y = false;     // values <= 0 are skipped on log axes
};

// Static renderings of a CSV table. Both functions only read the table, so a
// plot is always reproducible from its CSV.
std::string line_svg(const Table& t, const PlotSpec& p);
// row_col x col_col grid coloured by value_col (linear blue-white-red scale).
std::string heatmap_svg(const Table& t, const std::string& title, const std::string& row_col,
                        const std::string& col_col, const std::string& value_col);

}  // namespace nhqfi::table
