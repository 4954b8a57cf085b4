#pragma once

#include <string>
#include <vector>

#include "tsne/matrix.hpp"
#include "tsne/types.hpp"

namespace tsne {

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct Dataset {
    Matrix data;
    std::vector<std::string> feature_names;
    std::vector<std::string> labels; // empty when no label column was requested
    std::string label_name;
};

// Comma-separated values with a mandatory header row; quoted fields with ""
// escapes are understood. All columns must parse as numbers except the
// optional label column (selected by name). Errors name the offending line
// and column. label_column == "" means no labels.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

// 17 significant digits — doubles survive the round trip exactly.
std::string format_double(double v);

void write_embedding_csv(const std::string& path, const Matrix& embedding); // header y1..yh

void write_dataset_csv(const std::string& path, const Matrix& data,
                       const std::vector<std::string>& feature_names,
                       const std::vector<std::string>& labels,
                       const std::string& label_name);

// ---------------------------------------------------------------------------
// Run trace
// ---------------------------------------------------------------------------

std::string trace_json(const RunTrace& trace);
void write_trace_json(const std::string& path, const RunTrace& trace);

// ---------------------------------------------------------------------------
// SVG scatter plot
// ---------------------------------------------------------------------------

struct SvgPoint {
    double x = 0.0, y = 0.0;
    std::string label;      // chooses the color (fixed palette, sorted labels)
    enum Style { Solid, Hollow, Emphasized } style = Solid;
};

// One marker per point, axes scaled to the data bounding box plus a 5%
// margin. Deterministic output for identical input.
void write_scatter_svg(const std::string& path, const std::vector<SvgPoint>& points);

// ---------------------------------------------------------------------------
// Bundled sample data
// ---------------------------------------------------------------------------

// Two well-separated Gaussian clusters (25 points each, 10-D, centers 6
// apart), labels "a" and "b". Fixed generator seed; always the same data.
Dataset demo_dataset();

} // namespace tsne
