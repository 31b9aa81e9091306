#include "cvd/io.hpp"

#include <fstream>
#include <sstream>

namespace cvd {

ColoredSiteSet read_site_file(std::istream& in, Metric metric) {
    ColoredSiteSet out;
    out.metric = metric;
    std::string line;
    int line_number = 0;
    int max_color = -1;
    while (std::getline(in, line)) {
        ++line_number;
        std::string trimmed = line;
        auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (trimmed[first] == '#') continue;
        std::istringstream fields(trimmed);
        std::string xs, ys, cs, extra;
        if (!(fields >> xs >> ys >> cs))
            throw SiteFileError(line_number, "expected 'x y color'");
        if (fields >> extra) throw SiteFileError(line_number, "trailing token '" + extra + "'");
        Site site;
        site.id = out.n();
        try {
            site.position.x = parse_rational(xs);
            site.position.y = parse_rational(ys);
        } catch (const ParseError& e) {
            throw SiteFileError(line_number, e.what());
        }
        try {
            std::size_t used = 0;
            site.color = std::stoi(cs, &used);
            if (used != cs.size() || site.color < 0)
                throw SiteFileError(line_number, "bad color '" + cs + "'");
        } catch (const std::logic_error&) {
            throw SiteFileError(line_number, "bad color '" + cs + "'");
        }
        max_color = std::max(max_color, site.color);
        out.sites.push_back(std::move(site));
    }
    if (out.sites.empty()) throw SiteFileError(line_number, "no sites in file");
    out.m = max_color + 1;
    try {
        out.validate();
    } catch (const GeometryError& e) {
        throw SiteFileError(line_number, e.what());
    }
    return out;
}

ColoredSiteSet read_site_file_path(const std::string& path, Metric metric) {
    std::ifstream in(path);
    if (!in) throw SiteFileError(0, "cannot open '" + path + "'");
    return read_site_file(in, metric);
}

void write_site_file(std::ostream& out, const ColoredSiteSet& sites) {
    out << "# n=" << sites.n() << " m=" << sites.m << "\n";
    for (const Site& s : sites.sites)
        out << to_string(s.position.x) << " " << to_string(s.position.y) << " " << s.color
            << "\n";
}

}  // namespace cvd
