#include "cvd/serialize.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace cvd {

namespace {

void write_subdivision(std::ostream& out, const Subdivision& sub, Side side, int order,
                       bool refined) {
    const int nv = static_cast<int>(sub.vertices.size());
    const int nh = static_cast<int>(sub.half.size());

    std::vector<int> vorder(nv);
    for (int i = 0; i < nv; ++i) vorder[i] = i;
    std::sort(vorder.begin(), vorder.end(),
              [&](int a, int b) { return sub.vertices[a].p < sub.vertices[b].p; });
    std::vector<int> vid(nv);
    for (int i = 0; i < nv; ++i) vid[vorder[i]] = i;

    std::vector<int> horder(nh);
    for (int i = 0; i < nh; ++i) horder[i] = i;
    std::sort(horder.begin(), horder.end(), [&](int a, int b) {
        int ao = vid[sub.half[a].origin], ah = vid[sub.head(a)];
        int bo = vid[sub.half[b].origin], bh = vid[sub.head(b)];
        if (ao != bo) return ao < bo;
        return ah < bh;
    });
    std::vector<int> hid(nh);
    for (int i = 0; i < nh; ++i) hid[horder[i]] = i;

    const int nf = static_cast<int>(sub.faces.size());
    std::vector<int> fkey(nf, INT32_MAX);
    for (int h = 0; h < nh; ++h)
        fkey[sub.half[h].face] = std::min(fkey[sub.half[h].face], hid[h]);
    std::vector<int> forder(nf);
    for (int i = 0; i < nf; ++i) forder[i] = i;
    std::sort(forder.begin(), forder.end(), [&](int a, int b) {
        bool oa = sub.faces[a].is_outer_face, ob = sub.faces[b].is_outer_face;
        if (oa != ob) return ob;  // outer face last
        return fkey[a] < fkey[b];
    });
    std::vector<int> fid(nf);
    for (int i = 0; i < nf; ++i) fid[forder[i]] = i;

    out << "diagram " << (side == Side::Min ? "min" : "max") << " " << order << " "
        << (refined ? "refined" : "coarse") << "\n";
    out << "vertices " << nv << "\n";
    for (int i = 0; i < nv; ++i) {
        const auto& v = sub.vertices[vorder[i]];
        out << "v " << i << " " << to_string(v.p.x) << " " << to_string(v.p.y) << " "
            << (v.on_box ? 1 : 0) << "\n";
    }
    out << "halfedges " << nh << "\n";
    for (int i = 0; i < nh; ++i) {
        int h = horder[i];
        const auto& he = sub.half[h];
        const EdgeAttr& attr = sub.attr(h);
        out << "h " << i << " " << vid[he.origin] << " " << hid[sub.twin(h)] << " "
            << hid[he.next] << " " << hid[he.prev] << " " << fid[he.face] << " "
            << attr.chromaticity << " " << (attr.is_new ? 1 : 0) << " " << attr.site_a << " "
            << attr.site_b << "\n";
    }
    out << "faces " << nf << "\n";
    for (int i = 0; i < nf; ++i) {
        const auto& f = sub.faces[forder[i]];
        out << "f " << i << " " << (f.outer >= 0 ? hid[f.outer] : -1) << " " << f.holes.size();
        std::vector<int> holes;
        for (int h : f.holes) holes.push_back(hid[h]);
        std::sort(holes.begin(), holes.end());
        for (int h : holes) out << " " << h;
        out << " " << (f.is_outer_face ? 1 : 0) << " ";
        if (f.label.colors.empty()) {
            out << "-";
        } else {
            for (std::size_t c = 0; c < f.label.colors.size(); ++c)
                out << (c ? "," : "") << f.label.colors[c];
        }
        out << " ";
        if (f.label.assoc_site >= 0) out << f.label.assoc_site;
        else out << "-";
        out << "\n";
    }
    out << "end\n";
}

std::string next_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    throw SerializeError("unexpected end of diagram file");
}

}  // namespace

void write_sequence(std::ostream& out, const BuildResult& result, const ColoredSiteSet& sites) {
    out << "cvd-diagram-sequence v1\n";
    out << "metric " << (sites.metric == Metric::Euclidean ? "l2" : "linf") << "\n";
    out << "sites " << sites.n() << " " << sites.m << "\n";
    for (const Site& s : sites.sites)
        out << "s " << s.id << " " << to_string(s.position.x) << " " << to_string(s.position.y)
            << " " << s.color << "\n";
    out << "box " << to_string(result.box.xmin) << " " << to_string(result.box.ymin) << " "
        << to_string(result.box.xmax) << " " << to_string(result.box.ymax) << "\n";
    for (const DiagramSequence* seq : {&result.min_side, &result.max_side}) {
        for (std::size_t i = 0; i < seq->refined.size(); ++i) {
            write_subdivision(out, seq->refined[i], seq->side, static_cast<int>(i) + 1, true);
            write_subdivision(out, seq->coarse[i], seq->side, static_cast<int>(i) + 1, false);
        }
    }
    out << "end-sequence\n";
}

const LoadedDiagram* LoadedSequence::find(Side side, int order, bool refined) const {
    for (const auto& item : items)
        if (item.side == side && item.order == order && item.refined == refined) return &item;
    return nullptr;
}

LoadedSequence read_sequence(std::istream& in) {
    LoadedSequence seq;
    if (next_line(in) != "cvd-diagram-sequence v1")
        throw SerializeError("not a diagram sequence file");
    {
        std::istringstream ls(next_line(in));
        std::string tag, metric;
        ls >> tag >> metric;
        if (tag != "metric" || (metric != "l2" && metric != "linf"))
            throw SerializeError("bad metric line");
        seq.sites.metric = metric == "l2" ? Metric::Euclidean : Metric::Linf;
    }
    int n = 0, m = 0;
    {
        std::istringstream ls(next_line(in));
        std::string tag;
        ls >> tag >> n >> m;
        if (tag != "sites" || n < 1 || m < 1) throw SerializeError("bad sites line");
        seq.sites.m = m;
    }
    for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_line(in));
        std::string tag, xs, ys;
        int id, color;
        ls >> tag >> id >> xs >> ys >> color;
        if (tag != "s" || id != i) throw SerializeError("bad site record");
        Site s;
        s.id = id;
        s.position = Point2{parse_rational(xs), parse_rational(ys)};
        s.color = color;
        seq.sites.sites.push_back(std::move(s));
    }
    seq.sites.validate();
    {
        std::istringstream ls(next_line(in));
        std::string tag, a, b, c, d;
        ls >> tag >> a >> b >> c >> d;
        if (tag != "box") throw SerializeError("bad box line");
        seq.box = Box{parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d)};
    }

    std::string line;
    while ((line = next_line(in)) != "end-sequence") {
        std::istringstream header(line);
        std::string tag, side_s, kind_s;
        int order;
        header >> tag >> side_s >> order >> kind_s;
        if (tag != "diagram" || (side_s != "min" && side_s != "max") ||
            (kind_s != "refined" && kind_s != "coarse") || order < 1)
            throw SerializeError("bad diagram header: " + line);
        LoadedDiagram item;
        item.side = side_s == "min" ? Side::Min : Side::Max;
        item.order = order;
        item.refined = kind_s == "refined";
        Subdivision& sub = item.sub;
        sub.box = seq.box;

        int nv = 0;
        {
            std::istringstream ls(next_line(in));
            std::string t;
            ls >> t >> nv;
            if (t != "vertices" || nv < 0) throw SerializeError("bad vertices header");
        }
        sub.vertices.resize(nv);
        for (int i = 0; i < nv; ++i) {
            std::istringstream ls(next_line(in));
            std::string t, xs, ys;
            int id, on_box;
            ls >> t >> id >> xs >> ys >> on_box;
            if (t != "v" || id != i) throw SerializeError("bad vertex record");
            sub.vertices[i].p = Point2{parse_rational(xs), parse_rational(ys)};
            sub.vertices[i].on_box = on_box != 0;
        }

        int nh = 0;
        {
            std::istringstream ls(next_line(in));
            std::string t;
            ls >> t >> nh;
            if (t != "halfedges" || nh < 0 || nh % 2 != 0)
                throw SerializeError("bad halfedges header");
        }
        struct RawHalf {
            int origin, twin, next, prev, face, chroma, is_new, sa, sb;
        };
        std::vector<RawHalf> raw(nh);
        for (int i = 0; i < nh; ++i) {
            std::istringstream ls(next_line(in));
            std::string t;
            int id;
            RawHalf& r = raw[i];
            ls >> t >> id >> r.origin >> r.twin >> r.next >> r.prev >> r.face >> r.chroma >>
                r.is_new >> r.sa >> r.sb;
            if (t != "h" || id != i || !ls) throw SerializeError("bad halfedge record");
        }
        // Rebuild the twin-paired memory layout.
        std::vector<int> mem(nh, -1);
        sub.half.resize(nh);
        sub.attrs.resize(nh / 2);
        int next_slot = 0;
        for (int i = 0; i < nh; ++i) {
            if (mem[i] >= 0) continue;
            int j = raw[i].twin;
            if (j < 0 || j >= nh || raw[j].twin != i || j == i)
                throw SerializeError("broken twin pairing");
            mem[i] = next_slot;
            mem[j] = next_slot + 1;
            EdgeAttr attr;
            attr.site_a = raw[i].sa;
            attr.site_b = raw[i].sb;
            attr.chromaticity = raw[i].chroma;
            attr.is_new = raw[i].is_new != 0;
            sub.attrs[next_slot / 2] = attr;
            next_slot += 2;
        }
        for (int i = 0; i < nh; ++i) {
            auto& he = sub.half[mem[i]];
            const RawHalf& r = raw[i];
            if (r.origin < 0 || r.origin >= nv || r.next < 0 || r.next >= nh || r.prev < 0 ||
                r.prev >= nh)
                throw SerializeError("halfedge index out of range");
            he.origin = r.origin;
            he.next = mem[r.next];
            he.prev = mem[r.prev];
            he.face = r.face;
        }

        int nf = 0;
        {
            std::istringstream ls(next_line(in));
            std::string t;
            ls >> t >> nf;
            if (t != "faces" || nf < 1) throw SerializeError("bad faces header");
        }
        sub.faces.resize(nf);
        sub.outer_face = -1;
        for (int i = 0; i < nf; ++i) {
            std::istringstream ls(next_line(in));
            std::string t;
            int id, outer, hole_count;
            ls >> t >> id >> outer >> hole_count;
            if (t != "f" || id != i || hole_count < 0) throw SerializeError("bad face record");
            auto& f = sub.faces[i];
            f.outer = outer >= 0 ? mem[outer] : -1;
            for (int hidx = 0; hidx < hole_count; ++hidx) {
                int h;
                ls >> h;
                if (h < 0 || h >= nh) throw SerializeError("hole halfedge out of range");
                f.holes.push_back(mem[h]);
            }
            int is_outer;
            std::string colors_s, assoc_s;
            ls >> is_outer >> colors_s >> assoc_s;
            if (!ls) throw SerializeError("truncated face record");
            f.is_outer_face = is_outer != 0;
            if (f.is_outer_face) {
                if (sub.outer_face >= 0) throw SerializeError("two outer faces");
                sub.outer_face = i;
            }
            if (colors_s != "-") {
                std::istringstream cs(colors_s);
                std::string piece;
                while (std::getline(cs, piece, ',')) f.label.colors.push_back(std::stoi(piece));
            }
            if (assoc_s != "-") f.label.assoc_site = std::stoi(assoc_s);
        }
        for (int i = 0; i < nh; ++i)
            if (sub.half[mem[i]].face < 0 || sub.half[mem[i]].face >= nf)
                throw SerializeError("halfedge face out of range");
        if (sub.outer_face < 0) throw SerializeError("no outer face");
        if (next_line(in) != "end") throw SerializeError("missing diagram terminator");
        try {
            sub.check_invariants();
        } catch (const GeometryError& e) {
            throw SerializeError(std::string("inconsistent diagram: ") + e.what());
        }
        seq.items.push_back(std::move(item));
    }
    return seq;
}

}  // namespace cvd
