#pragma once

#include <cstdio>

#include "rcn/io/formats.hpp"

namespace rcn {

struct SvgOptions {
    double size = 800;
    double margin = 20;
    bool labels = true;
    bool crossing_markers = false;
    const NameTable* names = nullptr;
};

namespace detail {

inline std::string svg_num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

inline std::string xml_escape(const std::string& s)
{
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

} // namespace detail

/// Straight-line SVG of a drawing. The output depends only on the drawing and
/// the options. Coordinates are scaled into a square canvas with y pointing up.
inline std::string render_svg(const Drawing& d, const SvgOptions& opt = {})
{
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    bool first = true;
    for (const auto& [v, p] : d.position) {
        double x = p.x.get_d(), y = p.y.get_d();
        if (first) {
            lo_x = hi_x = x;
            lo_y = hi_y = y;
            first = false;
        }
        lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
    }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    double scale = (opt.size - 2 * opt.margin) / span;
    auto px = [&](const Point& p) {
        return std::pair{opt.margin + (p.x.get_d() - lo_x) * scale, opt.size - opt.margin - (p.y.get_d() - lo_y) * scale};
    };
    double radius = std::max(1.0, std::min(4.0, opt.size / 200));

    std::ostringstream out;
    std::string sz = detail::svg_num(opt.size);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sz << "\" height=\"" << sz << "\" viewBox=\"0 0 " << sz
        << ' ' << sz << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    for (const auto& [e, ends] : d.graph.edges()) {
        auto [x1, y1] = px(d.at(ends.first));
        auto [x2, y2] = px(d.at(ends.second));
        out << "<line x1=\"" << detail::svg_num(x1) << "\" y1=\"" << detail::svg_num(y1) << "\" x2=\"" << detail::svg_num(x2)
            << "\" y2=\"" << detail::svg_num(y2) << "\"/>\n";
    }
    out << "</g>\n";
    if (opt.crossing_markers) {
        out << "<g fill=\"red\">\n";
        for (const EdgePair& p : count_crossings(d).pairs) {
            auto [x, y] = px(crossing_point(d.segment(p.first), d.segment(p.second)));
            out << "<circle cx=\"" << detail::svg_num(x) << "\" cy=\"" << detail::svg_num(y) << "\" r=\""
                << detail::svg_num(radius / 2) << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "<g fill=\"steelblue\">\n";
    for (VertexId v : d.graph.vertices()) {
        auto [x, y] = px(d.at(v));
        out << "<circle cx=\"" << detail::svg_num(x) << "\" cy=\"" << detail::svg_num(y) << "\" r=\""
            << detail::svg_num(radius) << "\"/>\n";
    }
    out << "</g>\n";
    if (opt.labels) {
        out << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
        for (VertexId v : d.graph.vertices()) {
            auto [x, y] = px(d.at(v));
            std::string name = opt.names ? opt.names->name(v) : std::to_string(v.value + 1);
            out << "<text x=\"" << detail::svg_num(x + radius) << "\" y=\"" << detail::svg_num(y - radius) << "\">"
                << detail::xml_escape(name) << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace rcn
