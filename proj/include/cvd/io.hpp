#ifndef CVD_IO_HPP
#define CVD_IO_HPP

#include <iosfwd>
#include <string>

#include "cvd/site_set.hpp"

namespace cvd {

struct SiteFileError : std::runtime_error {
    int line;
    SiteFileError(int line_number, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
          line(line_number) {}
};

// One site per line: "x y color" with x, y decimal or "p/q" and color a
// non-negative integer. Lines starting with '#' and blank lines are skipped.
// Colors must form a contiguous range 0..m-1. Throws SiteFileError.
ColoredSiteSet read_site_file(std::istream& in, Metric metric);
ColoredSiteSet read_site_file_path(const std::string& path, Metric metric);

void write_site_file(std::ostream& out, const ColoredSiteSet& sites);

}  // namespace cvd

#endif
