#ifndef CVD_SERIALIZE_HPP
#define CVD_SERIALIZE_HPP

#include <iosfwd>

#include "cvd/builder.hpp"

namespace cvd {

struct SerializeError : std::runtime_error {
    explicit SerializeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Text serialization of a diagram sequence. Deterministic: vertices are
// renumbered in lexicographic (x, y) order, half-edges by (origin, head),
// faces by their smallest half-edge.
void write_sequence(std::ostream& out, const BuildResult& result, const ColoredSiteSet& sites);

struct LoadedDiagram {
    Side side = Side::Min;
    int order = 0;
    bool refined = false;
    Subdivision sub;
};

struct LoadedSequence {
    ColoredSiteSet sites;
    Box box;
    std::vector<LoadedDiagram> items;

    const LoadedDiagram* find(Side side, int order, bool refined) const;
};

LoadedSequence read_sequence(std::istream& in);

}  // namespace cvd

#endif
