#include "nhqfi/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "nhqfi/common.hpp"

namespace nhqfi::table {

std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double number(const std::string& s)
{
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorKind::invalid_argument, "not a number: '" + s + "'");
    return v;
}

int Table::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw Error(ErrorKind::invalid_argument, "no column '" + name + "'");
    return static_cast<int>(it - columns.begin());
}

void Table::add(std::vector<std::string> row)
{
    if (row.size() != columns.size()) throw Error(ErrorKind::invalid_argument, "row width does not match header");
    rows.push_back(std::move(row));
}

std::vector<double> Table::numbers(const std::string& name) const
{
    const int c = column(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(number(r[c]));
    return v;
}

std::vector<std::string> Table::strings(const std::string& name) const
{
    const int c = column(name);
    std::vector<std::string> v;
    for (const auto& r : rows) v.push_back(r[c]);
    return v;
}

namespace {

std::string join(const std::vector<std::string>& cells)
{
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string esc(const std::string& s)
{
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;

}  // namespace

std::string to_csv(const Table& t)
{
    std::string s = join(t.columns) + '\n';
    for (const auto& r : t.rows) s += join(r) + '\n';
    return s;
}

Table parse_csv(std::string_view text)
{
    Table t;
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::invalid_argument, "empty CSV");
    t.columns = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        t.add(split(line));
    }
    return t;
}

std::string line_svg(const Table& t, const PlotSpec& p)
{
    const int xc = t.column(p.x_col), yc = t.column(p.y_col);
    const int gc = p.group_col.empty() ? -1 : t.column(p.group_col);
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& r : t.rows) {
        double x = number(r[xc]), y = number(r[yc]);
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if ((p.log_x && x <= 0) || (p.log_y && y <= 0)) continue;
        if (p.log_x) x = std::log10(x);
        if (p.log_y) y = std::log10(y);
        const std::string key = gc < 0 ? p.y_col : r[gc];
        if (!series.count(key)) order.push_back(key);
        series[key].emplace_back(x, y);
    }
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& [k, pts] : series)
        for (const auto& [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << esc(p.title) << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 15 << "\" text-anchor=\"middle\">" << (p.log_x ? "1e" : "") << xv << "</text>\n";
        os << "<text x=\"" << L - 5 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << (p.log_y ? "1e" : "") << yv << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << esc(p.x_col) << "</text>\n";
    os << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 15 " << (T + H - B) / 2
       << ")\" text-anchor=\"middle\">" << esc(p.y_col) << "</text>\n";
    for (std::size_t s = 0; s < order.size(); ++s) {
        const char* colour = palette[s % 8];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[order[s]]) os << px(x) << ',' << py(y) << ' ';
        os << "\"/>\n";
        const double ly = T + 15 + 16 * static_cast<double>(s);
        os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly << "\" stroke=\"" << colour
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\">"
           << esc(gc < 0 ? order[s] : p.group_col + "=" + order[s]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap_svg(const Table& t, const std::string& title, const std::string& row_col,
                        const std::string& col_col, const std::string& value_col)
{
    const int rc = t.column(row_col), cc = t.column(col_col), vc = t.column(value_col);
    std::vector<std::string> rows, cols;
    for (const auto& r : t.rows) {
        if (std::find(rows.begin(), rows.end(), r[rc]) == rows.end()) rows.push_back(r[rc]);
        if (std::find(cols.begin(), cols.end(), r[cc]) == cols.end()) cols.push_back(r[cc]);
    }
    double vmax = 0;
    for (const auto& r : t.rows) {
        const double v = number(r[vc]);
        if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
    }
    if (vmax == 0) vmax = 1;
    const double cw = (W - L - R) / std::max<std::size_t>(cols.size(), 1);
    const double ch = (H - T - B) / std::max<std::size_t>(rows.size(), 1);
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
    for (const auto& r : t.rows) {
        const auto i = std::find(rows.begin(), rows.end(), r[rc]) - rows.begin();
        const auto j = std::find(cols.begin(), cols.end(), r[cc]) - cols.begin();
        const double v = number(r[vc]);
        // blue for negative, red for positive, white at zero
        const double a = std::isfinite(v) ? std::min(std::abs(v) / vmax, 1.0) : 0;
        const int fade = static_cast<int>(255 * (1 - a));
        char colour[8];
        if (v >= 0) std::snprintf(colour, sizeof colour, "#ff%02x%02x", fade, fade);
        else std::snprintf(colour, sizeof colour, "#%02x%02xff", fade, fade);
        os << "<rect x=\"" << L + j * cw << "\" y=\"" << T + i * ch << "\" width=\"" << cw << "\" height=\"" << ch
           << "\" fill=\"" << colour << "\" stroke=\"grey\"/>\n";
        os << "<text x=\"" << L + (j + 0.5) * cw << "\" y=\"" << T + (i + 0.5) * ch + 4 << "\" text-anchor=\"middle\">" << v << "</text>\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << "<text x=\"" << L - 5 << "\" y=\"" << T + (i + 0.5) * ch + 4 << "\" text-anchor=\"end\">" << esc(rows[i]) << "</text>\n";
    for (std::size_t j = 0; j < cols.size(); ++j)
        os << "<text x=\"" << L + (j + 0.5) * cw << "\" y=\"" << H - B + 15 << "\" text-anchor=\"middle\">" << esc(cols[j]) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace nhqfi::table
