#ifndef STOKES_SVG_RENDER_HPP
#define STOKES_SVG_RENDER_HPP

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/stokes_graph.hpp"

namespace stokes {

struct SvgOptions {
    int width = 800;
    int height = 600;
    double margin_factor = 0.18;
    bool tint_faces = true;
    bool edge_labels = false;
    int polyline_stride = 4;
};

namespace detail {

inline std::string svgnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct SvgMapper {
    double x0, y0, sx, sy;
    int H;
    std::string map(cplx z) const {
        double px = (z.real() - x0) * sx;
        double py = H - (z.imag() - y0) * sy;
        return svgnum(px) + "," + svgnum(py);
    }
};

inline const char* face_fill(FaceType t) {
    switch (t) {
        case FaceType::End: return "#fdf3d0";
        case FaceType::Strip: return "#d9f2dc";
        case FaceType::Ring: return "#f6dbe8";
        case FaceType::Circle: return "#d8e6f7";
        default: return "#eeeeee";
    }
}

} // namespace detail

// Deterministic SVG rendering of a traced graph.  Faces are tinted by type
// (painted large to small so nested faces stay visible), trajectories drawn
// as paths, zeros as dots, poles as crosses.
inline std::string render_svg(const StokesGraph& g, const std::vector<Face>& faces,
                              const QuadDiff& qd, const SvgOptions& opts = {}) {
    // View box around the finite critical points.
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
    for (const auto& r : qd.roots.roots) {
        xmin = std::min(xmin, r.value.real());
        xmax = std::max(xmax, r.value.real());
        ymin = std::min(ymin, r.value.imag());
        ymax = std::max(ymax, r.value.imag());
    }
    double w = std::max(xmax - xmin, 1.0), h = std::max(ymax - ymin, 1.0);
    xmin -= opts.margin_factor * w;
    xmax += opts.margin_factor * w;
    ymin -= opts.margin_factor * h;
    ymax += opts.margin_factor * h;
    // Keep the aspect ratio of the viewport.
    double need = double(opts.width) / double(opts.height);
    double have = (xmax - xmin) / (ymax - ymin);
    if (have < need) {
        double grow = 0.5 * ((ymax - ymin) * need - (xmax - xmin));
        xmin -= grow;
        xmax += grow;
    } else {
        double grow = 0.5 * ((xmax - xmin) / need - (ymax - ymin));
        ymin -= grow;
        ymax += grow;
    }
    detail::SvgMapper M{xmin, ymin, opts.width / (xmax - xmin), opts.height / (ymax - ymin),
                        opts.height};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n";
    svg << "<rect width=\"" << opts.width << "\" height=\"" << opts.height
        << "\" fill=\"#ffffff\"/>\n";

    // Face tint layer: paint in descending bounding-box area.
    if (opts.tint_faces && !g.cycles.empty()) {
        struct Paint { double area; std::string path; const char* fill; };
        std::vector<Paint> paints;
        for (const auto& f : faces) {
            if (f.type == FaceType::Unknown) continue;
            std::string path;
            double axmin = 1e300, axmax = -1e300, aymin = 1e300, aymax = -1e300;
            for (int ci : f.cycles) {
                const auto& poly = g.cycles[size_t(ci)].poly;
                if (poly.empty()) continue;
                path += "M" + M.map(poly.front()) + " ";
                for (size_t i = 1; i < poly.size(); i += size_t(opts.polyline_stride))
                    path += "L" + M.map(poly[i]) + " ";
                path += "L" + M.map(poly.back()) + " Z ";
                for (const auto& z : poly) {
                    axmin = std::min(axmin, z.real());
                    axmax = std::max(axmax, z.real());
                    aymin = std::min(aymin, z.imag());
                    aymax = std::max(aymax, z.imag());
                }
            }
            if (path.empty()) continue;
            paints.push_back({(axmax - axmin) * (aymax - aymin), path, detail::face_fill(f.type)});
        }
        std::sort(paints.begin(), paints.end(), [](const Paint& a, const Paint& b) {
            if (a.area != b.area) return a.area > b.area;
            return a.path < b.path;
        });
        for (const auto& p : paints)
            svg << "<path d=\"" << p.path << "\" fill=\"" << p.fill
                << "\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
    }

    // Axes.
    svg << "<line x1=\"0\" y1=\"" << detail::svgnum(opts.height - (0.0 - ymin) * M.sy)
        << "\" x2=\"" << opts.width << "\" y2=\""
        << detail::svgnum(opts.height - (0.0 - ymin) * M.sy)
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << detail::svgnum((0.0 - xmin) * M.sx) << "\" y1=\"0\" x2=\""
        << detail::svgnum((0.0 - xmin) * M.sx) << "\" y2=\"" << opts.height
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

    // Trajectories.
    for (const auto& e : g.edges) {
        svg << "<path d=\"M" << M.map(e.pts.front());
        for (size_t i = 1; i + 1 < e.pts.size(); i += size_t(opts.polyline_stride))
            svg << " L" << M.map(e.pts[i]);
        svg << " L" << M.map(e.pts.back())
            << "\" fill=\"none\" stroke=\"#1a1a8c\" stroke-width=\"1.6\"/>\n";
        if (opts.edge_labels) {
            cplx mid = e.pts[e.pts.size() / 2];
            svg << "<text x=\"" << detail::svgnum((mid.real() - xmin) * M.sx) << "\" y=\""
                << detail::svgnum(opts.height - (mid.imag() - ymin) * M.sy)
                << "\" font-size=\"10\" fill=\"#333333\">" << e.label << "</text>\n";
        }
    }

    // Poles as crosses.
    for (double p : {-1.0, 1.0}) {
        double px = (p - xmin) * M.sx, py = opts.height - (0.0 - ymin) * M.sy;
        svg << "<path d=\"M" << detail::svgnum(px - 5) << "," << detail::svgnum(py - 5) << " L"
            << detail::svgnum(px + 5) << "," << detail::svgnum(py + 5) << " M"
            << detail::svgnum(px - 5) << "," << detail::svgnum(py + 5) << " L"
            << detail::svgnum(px + 5) << "," << detail::svgnum(py - 5)
            << "\" stroke=\"#c02020\" stroke-width=\"2\" fill=\"none\"/>\n";
    }
    // Zeros as dots.
    for (const auto& r : qd.roots.roots) {
        double px = (r.value.real() - xmin) * M.sx;
        double py = opts.height - (r.value.imag() - ymin) * M.sy;
        svg << "<circle cx=\"" << detail::svgnum(px) << "\" cy=\"" << detail::svgnum(py)
            << "\" r=\"4\" fill=\"#202020\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

// Minimal rendering for the empty asymptotic graph: axes and poles only.
inline std::string render_empty_svg(const SvgOptions& opts = {}) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n";
    svg << "<rect width=\"" << opts.width << "\" height=\"" << opts.height
        << "\" fill=\"#ffffff\"/>\n";
    double cx = opts.width / 2.0, cy = opts.height / 2.0, s = opts.width / 6.0;
    svg << "<line x1=\"0\" y1=\"" << detail::svgnum(cy) << "\" x2=\"" << opts.width << "\" y2=\""
        << detail::svgnum(cy) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << detail::svgnum(cx) << "\" y1=\"0\" x2=\"" << detail::svgnum(cx)
        << "\" y2=\"" << opts.height << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    for (double p : {-1.0, 1.0}) {
        double px = cx + p * s, py = cy;
        svg << "<path d=\"M" << detail::svgnum(px - 5) << "," << detail::svgnum(py - 5) << " L"
            << detail::svgnum(px + 5) << "," << detail::svgnum(py + 5) << " M"
            << detail::svgnum(px - 5) << "," << detail::svgnum(py + 5) << " L"
            << detail::svgnum(px + 5) << "," << detail::svgnum(py - 5)
            << "\" stroke=\"#c02020\" stroke-width=\"2\" fill=\"none\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace stokes

#endif
