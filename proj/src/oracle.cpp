#include "cvd/oracle.hpp"

#include <algorithm>

namespace cvd {

ColorDistanceProfile profile(const Point2& x, const ColoredSiteSet& sites) {
    ColorDistanceProfile out;
    out.per_color.resize(sites.m);
    std::vector<bool> seen(sites.m, false);
    for (const Site& s : sites.sites) {
        Rational d = sites.metric == Metric::Euclidean ? squared_distance(x, s.position)
                                                       : linf_distance(x, s.position);
        auto& e = out.per_color[s.color];
        if (!seen[s.color]) {
            seen[s.color] = true;
            e.nearest = d;
            e.farthest = d;
            e.argmin_site = s.id;
            e.argmax_site = s.id;
            continue;
        }
        if (d < e.nearest) {
            e.nearest = d;
            e.argmin_site = s.id;
        }
        if (d > e.farthest) {
            e.farthest = d;
            e.argmax_site = s.id;
        }
    }
    return out;
}

KSetResult k_set(const Point2& x, const ColoredSiteSet& sites, int k, Side side) {
    if (k < 1 || k > sites.m) throw GeometryError("k out of range in k_set");
    ColorDistanceProfile prof = profile(x, sites);
    std::vector<int> order(sites.m);
    for (int i = 0; i < sites.m; ++i) order[i] = i;
    auto key = [&](int color) -> const Rational& {
        return side == Side::Min ? prof.per_color[color].nearest
                                 : prof.per_color[color].farthest;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int c = cmp(key(a), key(b));
        if (c != 0) return side == Side::Min ? c < 0 : c > 0;
        return a < b;
    });
    KSetResult result;
    if (k < sites.m && key(order[k - 1]) == key(order[k])) {
        result.on_boundary = true;
        return result;
    }
    for (int i = 0; i < k; ++i) result.colors.insert(order[i]);
    result.kth_color = order[k - 1];
    result.witness_site = side == Side::Min ? prof.per_color[order[k - 1]].argmin_site
                                            : prof.per_color[order[k - 1]].argmax_site;
    return result;
}

ValidationReport validate_diagram(const Subdivision& diagram, const ColoredSiteSet& sites, int k,
                                  Side side, int samples_per_face, bool refined) {
    ValidationReport report;
    for (int f = 0; f < static_cast<int>(diagram.faces.size()); ++f) {
        if (diagram.faces[f].is_outer_face) continue;
        ++report.faces_checked;
        const FaceLabel& label = diagram.faces[f].label;
        for (const Point2& x : diagram.interior_samples(f, samples_per_face)) {
            ++report.samples_checked;
            KSetResult ks = k_set(x, sites, k, side);
            if (ks.on_boundary) {
                report.mismatches.push_back({f, x, "sample on a region boundary"});
                continue;
            }
            std::set<int> expect(label.colors.begin(), label.colors.end());
            if (ks.colors != expect) {
                report.mismatches.push_back({f, x, "color set differs from oracle"});
                continue;
            }
            if (!refined) continue;
            if (label.assoc_site < 0) {
                report.mismatches.push_back({f, x, "refined face without associated site"});
                continue;
            }
            const Site& assoc = sites.sites[label.assoc_site];
            if (assoc.color != ks.kth_color) {
                report.mismatches.push_back({f, x, "associated color is not the k-th color"});
                continue;
            }
            Rational d = sites.metric == Metric::Euclidean
                             ? squared_distance(x, assoc.position)
                             : linf_distance(x, assoc.position);
            ColorDistanceProfile prof = profile(x, sites);
            const Rational& realized = side == Side::Min ? prof.per_color[assoc.color].nearest
                                                         : prof.per_color[assoc.color].farthest;
            if (d != realized)
                report.mismatches.push_back({f, x, "associated site does not realize d_i"});
        }
    }
    return report;
}

}  // namespace cvd
