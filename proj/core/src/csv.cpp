#include "transmeter/data/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "transmeter/errors.hpp"

namespace transmeter {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_finite(const std::string& cell, std::size_t row, const std::string& column) {
    const std::string t = trimmed(cell);
    std::size_t consumed = 0;
    double value = 0.0;
    bool ok = !t.empty();
    if (ok) {
        try {
            value = std::stod(t, &consumed);
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok || consumed != t.size() || !std::isfinite(value)) {
        throw LoadError("row " + std::to_string(row) + ", column '" + column +
                        "': cannot parse '" + cell + "' as a finite real");
    }
    return value;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_label) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open CSV file '" + path.string() + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw LoadError("CSV file '" + path.string() + "' is empty");
    }
    const std::vector<std::string> header = split_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trimmed(header[i]) == label_column) {
            label_idx = i;
            break;
        }
    }
    if (label_idx == header.size()) {
        throw LoadError("CSV file '" + path.string() + "' has no column named '" +
                        label_column + "'");
    }
    if (header.size() < 2) {
        throw LoadError("CSV file '" + path.string() + "' has no feature columns");
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::set<std::string> distinct;
    std::size_t row_no = 1;  // header is row 0
    while (std::getline(in, line)) {
        if (line.empty()) {
            ++row_no;
            continue;
        }
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            throw LoadError("row " + std::to_string(row_no) + ": expected " +
                            std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
        }
        std::vector<double> features;
        features.reserve(header.size() - 1);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == label_idx) continue;
            features.push_back(parse_finite(cells[i], row_no, trimmed(header[i])));
        }
        rows.push_back(std::move(features));
        const std::string label = trimmed(cells[label_idx]);
        raw_labels.push_back(label);
        distinct.insert(label);
        if (distinct.size() > 2) {
            throw LoadError("label column '" + label_column + "' has more than two distinct "
                            "values (first extra at row " + std::to_string(row_no) + ")");
        }
        ++row_no;
    }

    if (rows.empty()) {
        throw LoadError("CSV file '" + path.string() + "' has no data rows");
    }
    if (distinct.size() != 2) {
        throw LoadError("label column '" + label_column + "' must have exactly two distinct "
                        "values, found " + std::to_string(distinct.size()));
    }
    if (!distinct.count(positive_label)) {
        throw LoadError("positive label '" + positive_label + "' does not occur in column '" +
                        label_column + "'");
    }

    Dataset ds;
    ds.name = path.stem().string();
    ds.features = nn::Matrix(rows.size(), rows.front().size());
    ds.labels.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            ds.features(r, c) = rows[r][c];
        }
        ds.labels.push_back(raw_labels[r] == positive_label ? 1 : 0);
    }
    validate_dataset(ds);
    return ds;
}

void write_csv(const std::filesystem::path& path, const Dataset& ds,
               const std::string& label_column, const std::string& positive_label,
               const std::string& negative_label) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write CSV file '" + path.string() + "'");
    }
    for (std::size_t c = 0; c < ds.dim(); ++c) {
        out << 'f' << (c + 1) << ',';
    }
    out << label_column << '\n';
    char buf[40];
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t c = 0; c < ds.dim(); ++c) {
            std::snprintf(buf, sizeof buf, "%.12g", ds.features(r, c));
            out << buf << ',';
        }
        out << (ds.labels[r] ? positive_label : negative_label) << '\n';
    }
}

}  // namespace transmeter
