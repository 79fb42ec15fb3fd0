#include "structrank/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace structrank::csv {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("failed to format double");
    return {buf, ptr};
}

double parse_double(const std::string& token, const std::string& context) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error(context + ": invalid number '" + token + "'");
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool parses_as_double(const std::string& token) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

NamedMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");

    NamedMatrix out;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_comma(line);
        if (cells.size() < 2)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected an id plus at least one value column");

        if (out.row_ids.empty() && rows.empty() && width == 0) {
            width = cells.size() - 1;
            bool numeric = true;
            for (std::size_t c = 1; c < cells.size(); ++c)
                if (!parses_as_double(cells[c])) numeric = false;
            if (!numeric) {
                out.had_header = true;
                out.col_names.assign(cells.begin() + 1, cells.end());
                continue;
            }
        }
        if (cells.size() - 1 != width)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(width + 1) + " columns, got " +
                                     std::to_string(cells.size()));

        std::vector<double> vals(width);
        for (std::size_t c = 1; c < cells.size(); ++c)
            vals[c - 1] = parse_double(cells[c], path + ":" + std::to_string(line_no) + ":col" +
                                                     std::to_string(c + 1));
        out.row_ids.push_back(cells[0]);
        rows.push_back(std::move(vals));
    }

    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    if (out.col_names.empty())
        for (std::size_t c = 0; c < width; ++c) out.col_names.push_back("d" + std::to_string(c));

    out.values = Matrix(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c) out.values(r, c) = rows[r][c];
    if (!out.values.all_finite()) throw std::runtime_error(path + ": non-finite value in matrix");
    return out;
}

std::pair<Matrix, std::size_t> align_rows(const NamedMatrix& m, const Graph& g) {
    std::unordered_map<std::string, std::size_t> where;
    where.reserve(m.row_ids.size());
    std::size_t dropped = 0;
    for (std::size_t r = 0; r < m.row_ids.size(); ++r) {
        if (!g.index_of(m.row_ids[r]).has_value()) {
            ++dropped;
            continue;
        }
        where[m.row_ids[r]] = r;  // last occurrence wins for duplicate ids
    }

    std::vector<std::string> missing;
    for (const auto& id : g.node_ids()) {
        if (where.find(id) == where.end() && missing.size() < 10) missing.push_back(id);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "matrix is missing " << missing.size() << (missing.size() == 10 ? "+" : "")
            << " graph node id(s):";
        for (const auto& id : missing) msg << " " << id;
        throw std::runtime_error(msg.str());
    }

    Matrix out(g.node_count(), m.values.cols());
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        std::size_t r = where.at(g.node_id(u));
        for (std::size_t c = 0; c < m.values.cols(); ++c) out(u, c) = m.values(r, c);
    }
    return {std::move(out), dropped};
}

void write_matrix(const std::string& path, const Graph& g, const Matrix& values,
                  const std::vector<std::string>& col_names) {
    if (values.rows() != g.node_count())
        throw std::invalid_argument("write_matrix: row count does not match graph");
    if (values.cols() != col_names.size())
        throw std::invalid_argument("write_matrix: column name count mismatch");

    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "node_id";
    for (const auto& name : col_names) out << "," << name;
    out << "\n";
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        out << g.node_id(u);
        for (std::size_t c = 0; c < values.cols(); ++c) out << "," << format_double(values(u, c));
        out << "\n";
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace structrank::csv
