#ifndef CVD_GENERATOR_HPP
#define CVD_GENERATOR_HPP

#include <cstdint>

#include "cvd/site_set.hpp"

namespace cvd {

struct GeneratorParams {
    int n = 0;
    int m = 0;
    Metric metric = Metric::Euclidean;
    std::uint64_t seed = 0;
    long long bbox = 0;  // coordinates drawn from [-bbox, bbox]; 0 = auto
};

// Integer-coordinate sites, colors covering 0..m-1, rejection-sampled until
// check_general_position passes. Deterministic for a fixed seed.
ColoredSiteSet generate_sites(const GeneratorParams& params);

}  // namespace cvd

#endif
