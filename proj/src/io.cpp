#include "tsne/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsne/errors.hpp"
#include "tsne/rng.hpp"

namespace tsne {

namespace {

// One CSV record -> fields. Understands quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw DataError("line " + std::to_string(lineno) + ": unterminated quoted field");
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& field, std::size_t lineno, std::size_t col,
                    const std::string& colname) {
    std::size_t b = field.find_first_not_of(" \t");
    std::size_t e = field.find_last_not_of(" \t");
    if (b == std::string::npos)
        throw DataError("line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                        " (" + colname + "): empty field");
    const char* first = field.data() + b;
    const char* last = field.data() + e + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw DataError("line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                        " (" + colname + "): cannot parse '" + field + "' as a number");
    return v;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_quote(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line()) throw DataError("'" + path + "': empty file, expected a header row");
    std::vector<std::string> header = split_csv_line(line, lineno);

    std::size_t label_idx = header.size();
    if (!label_column.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == label_column) label_idx = c;
        if (label_idx == header.size())
            throw DataError("'" + path + "': no column named '" + label_column + "'");
    }
    if (header.size() - (label_idx < header.size() ? 1 : 0) == 0)
        throw DataError("'" + path + "': no numeric columns");

    Dataset ds;
    ds.label_name = label_column;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != label_idx) ds.feature_names.push_back(header[c]);

    std::vector<double> values;
    std::size_t rows = 0;
    while (next_line()) {
        std::vector<std::string> fields = split_csv_line(line, lineno);
        if (fields.size() != header.size())
            throw DataError("line " + std::to_string(lineno) + ": got " +
                            std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(header.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_idx)
                ds.labels.push_back(fields[c]);
            else
                values.push_back(parse_number(fields[c], lineno, c + 1, header[c]));
        }
        ++rows;
    }
    if (rows == 0) throw DataError("'" + path + "': no data rows after the header");

    ds.data = Matrix(rows, ds.feature_names.size());
    std::copy(values.begin(), values.end(), ds.data.data());
    return ds;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_embedding_csv(const std::string& path, const Matrix& embedding) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t l = 0; l < embedding.cols(); ++l)
        out << (l ? "," : "") << "y" << (l + 1);
    out << "\n";
    for (std::size_t i = 0; i < embedding.rows(); ++i) {
        for (std::size_t l = 0; l < embedding.cols(); ++l)
            out << (l ? "," : "") << format_double(embedding(i, l));
        out << "\n";
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

void write_dataset_csv(const std::string& path, const Matrix& data,
                       const std::vector<std::string>& feature_names,
                       const std::vector<std::string>& labels,
                       const std::string& label_name) {
    if (feature_names.size() != data.cols())
        throw DataError("write_dataset_csv: header size mismatch");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (std::size_t c = 0; c < feature_names.size(); ++c)
        out << (c ? "," : "") << csv_quote(feature_names[c]);
    if (!labels.empty()) out << (feature_names.empty() ? "" : ",") << csv_quote(label_name);
    out << "\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t c = 0; c < data.cols(); ++c)
            out << (c ? "," : "") << format_double(data(i, c));
        if (!labels.empty()) out << "," << csv_quote(labels[i]);
        out << "\n";
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

std::string trace_json(const RunTrace& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const IterationRecord& r : trace)
        arr.push_back({{"iter", r.iter},
                       {"cost", r.cost},
                       {"grad_inf_norm", r.grad_inf_norm},
                       {"dof", r.dof},
                       {"exaggeration", r.exaggeration},
                       {"jitter", r.jitter}});
    return nlohmann::json{{"iterations", arr}}.dump(2) + "\n";
}

void write_trace_json(const std::string& path, const RunTrace& trace) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << trace_json(trace);
    if (!out) throw DataError("failed writing '" + path + "'");
}

Dataset demo_dataset() {
    constexpr std::size_t per_cluster = 25, dims = 10;
    Pcg32 rng(0x2c1u); // fixed: the sample is part of the interface
    Dataset ds;
    ds.data = Matrix(2 * per_cluster, dims);
    ds.label_name = "label";
    for (std::size_t i = 0; i < 2 * per_cluster; ++i) {
        bool second = i >= per_cluster;
        for (std::size_t c = 0; c < dims; ++c)
            ds.data(i, c) = rng.next_gaussian() + (second && c == 0 ? 6.0 : 0.0);
        ds.labels.push_back(second ? "b" : "a");
    }
    for (std::size_t c = 0; c < dims; ++c) ds.feature_names.push_back("x" + std::to_string(c + 1));
    return ds;
}

} // namespace tsne
