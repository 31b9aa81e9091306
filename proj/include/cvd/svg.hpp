#ifndef CVD_SVG_HPP
#define CVD_SVG_HPP

#include <iosfwd>

#include "cvd/subdivision.hpp"
#include "cvd/site_set.hpp"

namespace cvd {

struct SvgOptions {
    bool show_old_edges = true;
    double width = 900;
};

// Renders a diagram in the figure convention: new 2-chromatic edges black,
// old 2-chromatic edges gray, 1-chromatic edges in their sites' color, new
// vertices as small squares, sites as filled disks in their color.
void render_svg(std::ostream& out, const Subdivision& sub, const ColoredSiteSet& sites,
                const SvgOptions& options = {});

}  // namespace cvd

#endif
