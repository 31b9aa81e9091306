#include "cvd/svg.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

namespace cvd {

namespace {

std::string color_of(int c, int m) {
    int hue = (c * 360) / std::max(m, 1);
    std::ostringstream s;
    s << "hsl(" << hue << ",75%,42%)";
    return s.str();
}

struct View {
    double minx, miny, maxx, maxy, scale;
    double tx(const Point2& p) const { return (p.x.get_d() - minx) * scale; }
    double ty(const Point2& p) const { return (maxy - p.y.get_d()) * scale; }
};

}  // namespace

void render_svg(std::ostream& out, const Subdivision& sub, const ColoredSiteSet& sites,
                const SvgOptions& options) {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (first) {
            minx = maxx = x;
            miny = maxy = y;
            first = false;
            return;
        }
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    };
    for (const Site& s : sites.sites) grow(s.position.x.get_d(), s.position.y.get_d());
    for (const auto& v : sub.vertices)
        if (!v.on_box) grow(v.p.x.get_d(), v.p.y.get_d());
    double span = std::max({maxx - minx, maxy - miny, 1.0});
    double pad = span * 0.25;
    View view{minx - pad, miny - pad, maxx + pad, maxy + pad, 1.0};
    view.scale = options.width / (view.maxx - view.minx);
    double height = (view.maxy - view.miny) * view.scale;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << options.width << " " << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Identify new vertices: every incident diagram edge is new.
    std::vector<char> has_diagram(sub.vertices.size(), 0), all_new(sub.vertices.size(), 1);
    for (int h = 0; h < static_cast<int>(sub.half.size()); h += 2) {
        const EdgeAttr& attr = sub.attr(h);
        if (attr.is_box()) continue;
        for (int v : {sub.half[h].origin, sub.half[h ^ 1].origin}) {
            has_diagram[v] = 1;
            if (!attr.is_new) all_new[v] = 0;
        }
    }

    for (int h = 0; h < static_cast<int>(sub.half.size()); h += 2) {
        const EdgeAttr& attr = sub.attr(h);
        if (attr.is_box()) continue;
        if (!attr.is_new && !options.show_old_edges) continue;
        std::string stroke;
        double width = 1.6;
        if (attr.chromaticity == 1) {
            stroke = color_of(sites.sites[attr.site_a].color, sites.m);
            width = 1.2;
        } else if (attr.is_new) {
            stroke = "black";
        } else {
            stroke = "#9a9a9a";
        }
        const Point2& a = sub.vertices[sub.half[h].origin].p;
        const Point2& b = sub.vertices[sub.half[h ^ 1].origin].p;
        out << "<line x1=\"" << view.tx(a) << "\" y1=\"" << view.ty(a) << "\" x2=\""
            << view.tx(b) << "\" y2=\"" << view.ty(b) << "\" stroke=\"" << stroke
            << "\" stroke-width=\"" << width << "\"/>\n";
    }

    double mark = options.width / 180.0;
    for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
        if (sub.vertices[v].on_box || !has_diagram[v] || !all_new[v]) continue;
        double x = view.tx(sub.vertices[v].p);
        double y = view.ty(sub.vertices[v].p);
        out << "<rect x=\"" << x - mark / 2 << "\" y=\"" << y - mark / 2 << "\" width=\"" << mark
            << "\" height=\"" << mark << "\" fill=\"black\"/>\n";
    }

    for (const Site& s : sites.sites) {
        out << "<circle cx=\"" << view.tx(s.position) << "\" cy=\"" << view.ty(s.position)
            << "\" r=\"" << mark * 0.8 << "\" fill=\"" << color_of(s.color, sites.m) << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace cvd
