#include "cvd/generator.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cvd {

namespace {

// Bounded draw built on raw engine output; std::uniform_int_distribution is
// implementation-defined, which would break byte-for-byte reproducibility.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ull;
    unsigned long long limit = ~0ull - (~0ull % span);
    unsigned long long v;
    do {
        v = rng();
    } while (v >= limit);
    return lo + static_cast<long long>(v % span);
}

}  // namespace

ColoredSiteSet generate_sites(const GeneratorParams& params) {
    if (params.n < 1 || params.m < 1 || params.n < params.m)
        throw GeometryError("generator requires n >= m >= 1");
    long long bbox = params.bbox;
    if (bbox <= 0)
        bbox = std::max<long long>(64, 4ll * params.n * params.n);

    std::mt19937_64 rng(params.seed);
    ColoredSiteSet out;
    out.m = params.m;
    out.metric = params.metric;

    std::vector<int> colors(params.n);
    for (int i = 0; i < params.n; ++i)
        colors[i] = i < params.m ? i : static_cast<int>(draw(rng, 0, params.m - 1));
    for (int i = params.n - 1; i > 0; --i)
        std::swap(colors[i], colors[draw(rng, 0, i)]);

    std::set<std::pair<long long, long long>> used_pos;
    std::set<long long> used_x, used_y;
    auto sample_position = [&](int id) {
        for (int attempt = 0; attempt < 100000; ++attempt) {
            long long x = draw(rng, -bbox, bbox);
            long long y = draw(rng, -bbox, bbox);
            if (used_pos.count({x, y})) continue;
            if (params.metric == Metric::Linf && (used_x.count(x) || used_y.count(y))) continue;
            used_pos.insert({x, y});
            used_x.insert(x);
            used_y.insert(y);
            out.sites[id].position = Point2{Rational(static_cast<long>(x)),
                                            Rational(static_cast<long>(y))};
            return;
        }
        throw GeometryError("generator could not place a distinct site");
    };

    out.sites.resize(params.n);
    for (int i = 0; i < params.n; ++i) {
        out.sites[i].id = i;
        out.sites[i].color = colors[i];
        sample_position(i);
    }

    for (int round = 0; round < 256; ++round) {
        GeneralPositionReport report = check_general_position(out);
        if (report.ok) {
            out.validate();
            return out;
        }
        std::set<int> to_resample;
        for (const auto& v : report.violations)
            to_resample.insert(*std::max_element(v.site_ids.begin(), v.site_ids.end()));
        for (int id : to_resample) {
            auto& p = out.sites[id].position;
            used_pos.erase({p.x.get_num().get_si(), p.y.get_num().get_si()});
            used_x.erase(p.x.get_num().get_si());
            used_y.erase(p.y.get_num().get_si());
            sample_position(id);
        }
    }
    throw GeometryError("generator failed to reach general position");
}

}  // namespace cvd
