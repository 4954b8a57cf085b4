#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "tsne/errors.hpp"
#include "tsne/io.hpp"

namespace tsne {

namespace {

// Fixed categorical palette; labels are ranked alphabetically and wrap
// around after ten distinct values.
const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

constexpr double kWidth = 720.0, kHeight = 540.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

void write_scatter_svg(const std::string& path, const std::vector<SvgPoint>& points) {
    if (points.empty()) throw DataError("scatter plot: no points");

    double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
    for (const SvgPoint& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    // 5% margin on each side; degenerate ranges get a unit pad.
    double xpad = (xmax - xmin) > 0.0 ? 0.05 * (xmax - xmin) : 1.0;
    double ypad = (ymax - ymin) > 0.0 ? 0.05 * (ymax - ymin) : 1.0;
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * kWidth; };
    auto sy = [&](double y) { return kHeight - (y - ymin) / (ymax - ymin) * kHeight; };

    std::set<std::string> labels;
    for (const SvgPoint& p : points) labels.insert(p.label);
    auto color_of = [&](const std::string& label) {
        std::size_t rank = std::size_t(std::distance(labels.begin(), labels.find(label)));
        return kPalette[rank % 10];
    };

    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(kWidth)
        << "\" height=\"" << int(kHeight) << "\" viewBox=\"0 0 " << int(kWidth) << " "
        << int(kHeight) << "\">\n"
        << "  <rect width=\"" << int(kWidth) << "\" height=\"" << int(kHeight)
        << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
    for (const SvgPoint& p : points) {
        const char* color = color_of(p.label);
        std::string title = p.label.empty() ? "" : (" data-label=\"" + xml_escape(p.label) + "\"");
        out << "  <circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y)) << "\" r=\""
            << (p.style == SvgPoint::Emphasized ? "5" : "3") << "\"";
        if (p.style == SvgPoint::Hollow)
            out << " fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        else if (p.style == SvgPoint::Emphasized)
            out << " fill=\"" << color << "\" stroke=\"black\"";
        else
            out << " fill=\"" << color << "\"";
        out << title << "/>\n";
    }
    out << "</svg>\n";
    if (!out) throw DataError("failed writing '" + path + "'");
}

} // namespace tsne
