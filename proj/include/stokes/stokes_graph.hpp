#ifndef STOKES_STOKES_GRAPH_HPP
#define STOKES_STOKES_GRAPH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stokes/errors.hpp"
#include "stokes/qdiff.hpp"
#include "stokes/tracer.hpp"

namespace stokes {

enum class VertexKind { Zero, Pole, Infinity };
enum class FaceType { End, Strip, Ring, Circle, Unknown };

inline const char* to_string(FaceType t) {
    switch (t) {
        case FaceType::End: return "end";
        case FaceType::Strip: return "strip";
        case FaceType::Ring: return "ring";
        case FaceType::Circle: return "circle";
        case FaceType::Unknown: return "unknown";
    }
    return "?";
}

struct GraphVertex {
    int id = -1;
    VertexKind kind = VertexKind::Zero;
    cplx pos;            // unused for Infinity
    int order = 1;       // zero multiplicity; 2 for poles; 4 for infinity
    int zero_index = -1; // into RootSet::roots
    int pole_k = 0;      // -1 or +1 for poles
    std::string name;    // e1..e4, -1, +1, oo
};

struct GraphEdge {
    int id = -1;
    std::array<int, 2> v{-1, -1};     // tail, head
    std::vector<cplx> pts;            // oriented tail -> head (head may be synthetic for oo)
    std::array<double, 2> angle{0, 0};  // outgoing angle at each end (pseudo-angle at oo)
    std::array<bool, 2> at_inf{false, false};
    std::array<bool, 2> inf_up{false, false};
    std::array<double, 2> arc_theta{0, 0};  // big-circle angle for oo ends
    std::string label;
};

// One traced boundary cycle (closed polyline in the plane after the big
// circle closure at infinity).
struct FaceCycle {
    std::vector<int> halfedges;        // walk order; halfedge h = 2*edge + side
    std::vector<cplx> poly;            // closed polyline
    cplx sample;                       // interior point next to the longest edge
    int pole_visits_m1 = 0, pole_visits_p1 = 0;
    int inf_visits_up = 0, inf_visits_down = 0, inf_visits_mixed = 0;
    std::set<int> zero_vertices;       // vertex ids of zeros on the cycle
    std::vector<double> corner_arcs;   // big-circle angles crossed (midpoint of each corner)
};

struct Face {
    int id = -1;
    std::vector<int> cycles;           // indices into StokesGraph::cycles
    FaceType type = FaceType::Unknown;
    std::vector<std::string> strip_vertices;  // two labels for strips
    std::vector<int> interior_poles;   // subset of {-1, +1}
    std::set<int> boundary_zero_vertices;
    int pole_boundary_visits_m1 = 0, pole_boundary_visits_p1 = 0;
    bool touches_infinity = false;
    bool is_left_end = false, is_right_end = false;
};

struct DomainConfig {
    std::vector<Face> faces;
    int n_end = 0, n_strip = 0, n_ring = 0, n_circle = 0;
    std::vector<std::string> strip_multiset;      // sorted "a|b" pairs
    std::vector<int> circle_centers;              // sorted pole signs
};

struct StokesGraph {
    QuarticCoeffs coeffs;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<int>> rotation;  // per vertex: halfedges sorted ccw by angle
    std::vector<FaceCycle> cycles;
    int components = 0;
    double scale = 1.0;
    double arc_radius = 0.0;

    int infinity_vertex = -1;
    int pole_vertex_m1 = -1, pole_vertex_p1 = -1;

    int halfedge_tail(int h) const { return edges[h / 2].v[h % 2]; }
    int halfedge_head(int h) const { return edges[h / 2].v[1 - h % 2]; }
    double halfedge_angle(int h) const { return edges[h / 2].angle[h % 2]; }
    int twin(int h) const { return h ^ 1; }
};

namespace detail {

inline int winding_number(cplx q, const std::vector<cplx>& poly) {
    int w = 0;
    const size_t n = poly.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        const cplx a = poly[i], b = poly[i + 1];
        if (a.imag() <= q.imag()) {
            if (b.imag() > q.imag()) {
                double cross = (b.real() - a.real()) * (q.imag() - a.imag())
                             - (q.real() - a.real()) * (b.imag() - a.imag());
                if (cross > 0) ++w;
            }
        } else {
            if (b.imag() <= q.imag()) {
                double cross = (b.real() - a.real()) * (q.imag() - a.imag())
                             - (q.real() - a.real()) * (b.imag() - a.imag());
                if (cross < 0) --w;
            }
        }
    }
    return w;
}

inline double poly_dist(cplx q, const std::vector<cplx>& poly) {
    double d = 1e300;
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        d = std::min(d, dist_point_segment(q, poly[i], poly[i + 1]));
    return d;
}

// Pseudo-angle of an infinity-terminated ray in the w = 1/z chart.
inline double inf_pseudo_angle(bool up, double asymptote) {
    double t = std::atan(asymptote) / M_PI;  // in (-1/2, 1/2)
    return up ? (-M_PI / 2.0 + t) : (M_PI / 2.0 - t);
}

inline bool ccw_arc_contains(double theta_from, double theta_to, double phi) {
    auto wrap = [](double x) {
        while (x < 0) x += 2.0 * M_PI;
        while (x >= 2.0 * M_PI) x -= 2.0 * M_PI;
        return x;
    };
    double span = wrap(theta_to - theta_from);
    if (span == 0.0) span = 2.0 * M_PI;
    return wrap(phi - theta_from) <= span;
}

} // namespace detail

// ---------------------------------------------------------------------------
// build_graph
// ---------------------------------------------------------------------------
inline StokesGraph build_graph(const std::vector<Trajectory>& trajectories, const QuadDiff& qd) {
    StokesGraph g;
    g.coeffs = qd.coeffs;
    g.scale = 1.0 + qd.roots.max_abs();

    // Vertices: zeros first (stable ids), then poles / infinity if incident.
    std::map<int, int> zero_vertex;  // root index -> vertex id
    for (size_t j = 0; j < qd.roots.roots.size(); ++j) {
        GraphVertex v;
        v.id = int(g.vertices.size());
        v.kind = VertexKind::Zero;
        v.pos = qd.roots.roots[j].value;
        v.order = qd.roots.roots[j].multiplicity;
        v.zero_index = int(j);
        v.name = "e" + std::to_string(j + 1);
        zero_vertex[int(j)] = v.id;
        g.vertices.push_back(v);
    }
    bool has_m1 = false, has_p1 = false, has_inf = false;
    double max_end = 0.0;
    for (const auto& t : trajectories) {
        switch (t.terminal.kind) {
            case TerminalKind::PoleMinus1: has_m1 = true; break;
            case TerminalKind::PolePlus1: has_p1 = true; break;
            case TerminalKind::InfinityUp:
            case TerminalKind::InfinityDown:
                has_inf = true;
                max_end = std::max(max_end, std::abs(t.points.back()));
                break;
            case TerminalKind::StepLimit:
                throw DanglingEdgeError("build_graph: ray from zero e"
                                        + std::to_string(t.start_zero + 1)
                                        + " hit the step limit without terminating");
            default: break;
        }
    }
    if (has_m1) {
        GraphVertex v;
        v.id = int(g.vertices.size());
        v.kind = VertexKind::Pole;
        v.pos = cplx(-1, 0);
        v.order = 2;
        v.pole_k = -1;
        v.name = "-1";
        g.pole_vertex_m1 = v.id;
        g.vertices.push_back(v);
    }
    if (has_p1) {
        GraphVertex v;
        v.id = int(g.vertices.size());
        v.kind = VertexKind::Pole;
        v.pos = cplx(1, 0);
        v.order = 2;
        v.pole_k = +1;
        v.name = "+1";
        g.pole_vertex_p1 = v.id;
        g.vertices.push_back(v);
    }
    g.arc_radius = 1.05 * std::max(max_end, 10.0 * g.scale);
    if (has_inf) {
        GraphVertex v;
        v.id = int(g.vertices.size());
        v.kind = VertexKind::Infinity;
        v.pos = cplx(0, 0);
        v.order = 4;
        v.name = "oo";
        g.infinity_vertex = v.id;
        g.vertices.push_back(v);
    }

    // Edges.
    for (const auto& t : trajectories) {
        GraphEdge e;
        e.id = int(g.edges.size());
        e.v[0] = zero_vertex.at(t.start_zero);
        e.pts = t.points;
        std::string head_name;
        switch (t.terminal.kind) {
            case TerminalKind::Zero:
                e.v[1] = zero_vertex.at(t.terminal.zero_index);
                e.pts.back() = g.vertices[e.v[1]].pos;
                head_name = g.vertices[e.v[1]].name;
                break;
            case TerminalKind::PoleMinus1:
                e.v[1] = g.pole_vertex_m1;
                e.pts.back() = cplx(-1, 0);
                head_name = "-1";
                break;
            case TerminalKind::PolePlus1:
                e.v[1] = g.pole_vertex_p1;
                e.pts.back() = cplx(1, 0);
                head_name = "+1";
                break;
            case TerminalKind::InfinityUp:
            case TerminalKind::InfinityDown: {
                e.v[1] = g.infinity_vertex;
                e.at_inf[1] = true;
                e.inf_up[1] = (t.terminal.kind == TerminalKind::InfinityUp);
                double x0 = t.terminal.asymptote;
                double y = std::sqrt(std::max(g.arc_radius * g.arc_radius - x0 * x0,
                                              0.25 * g.arc_radius * g.arc_radius));
                cplx endpt(x0, e.inf_up[1] ? y : -y);
                e.pts.push_back(endpt);
                e.arc_theta[1] = std::arg(endpt);
                head_name = e.inf_up[1] ? "+ioo" : "-ioo";
                break;
            }
            default:
                throw DanglingEdgeError("build_graph: unterminated ray");
        }
        // Outgoing angles.
        auto out_angle = [&](int side) -> double {
            if (e.at_inf[side]) return detail::inf_pseudo_angle(e.inf_up[side], e.pts.back().real());
            const std::vector<cplx>& p = e.pts;
            cplx vpos = g.vertices[e.v[side]].pos;
            if (side == 0) {
                for (size_t i = 1; i < p.size(); ++i)
                    if (std::abs(p[i] - vpos) > 1e-12) return std::arg(p[i] - vpos);
            } else {
                for (size_t i = p.size() - 1; i > 0; --i)
                    if (std::abs(p[i - 1] - vpos) > 1e-12) return std::arg(p[i - 1] - vpos);
            }
            return 0.0;
        };
        e.angle[0] = out_angle(0);
        e.angle[1] = out_angle(1);
        // Label: gamma_{a,b} with an l/c/r marker when the edge crosses the axis.
        std::string marker;
        for (size_t i = 0; i + 1 < e.pts.size(); ++i) {
            double y0 = e.pts[i].imag(), y1 = e.pts[i + 1].imag();
            if ((y0 > 0 && y1 <= 0) || (y0 <= 0 && y1 > 0)) {
                double w = y0 / (y0 - y1);
                double x = e.pts[i].real() + w * (e.pts[i + 1].real() - e.pts[i].real());
                if (std::abs(x) > 1e-9) marker = (x < -1.0) ? "l" : (x > 1.0 ? "r" : "c");
            }
        }
        e.label = "gamma(" + g.vertices[e.v[0]].name + "," + head_name + ")"
                + (marker.empty() ? "" : "^" + marker);
        g.edges.push_back(e);
    }

    // Rotation system.
    g.rotation.assign(g.vertices.size(), {});
    for (const auto& e : g.edges) {
        g.rotation[e.v[0]].push_back(2 * e.id);
        g.rotation[e.v[1]].push_back(2 * e.id + 1);
    }
    for (auto& rot : g.rotation)
        std::sort(rot.begin(), rot.end(), [&](int a, int b) {
            double aa = g.halfedge_angle(a), ab = g.halfedge_angle(b);
            if (aa != ab) return aa < ab;
            return a < b;
        });

    // Component count (union-find).
    std::vector<int> parent(g.vertices.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) parent[find(e.v[0])] = find(e.v[1]);
    std::set<int> comps;
    for (size_t i = 0; i < parent.size(); ++i) comps.insert(find(int(i)));
    g.components = g.edges.empty() ? 0 : int(comps.size());
    return g;
}

// ---------------------------------------------------------------------------
// Face tracing on the rotation system, with the big-circle closure at oo.
// ---------------------------------------------------------------------------
namespace detail {

inline void append_arc(std::vector<cplx>& poly, double R, double th_from, double th_to,
                       std::vector<double>* corner_mid) {
    auto wrap = [](double x) {
        while (x < 0) x += 2.0 * M_PI;
        while (x >= 2.0 * M_PI) x -= 2.0 * M_PI;
        return x;
    };
    double span = wrap(th_to - th_from);
    if (span == 0.0) span = 2.0 * M_PI;
    const int nseg = std::max(8, int(span / 0.05));
    for (int i = 1; i <= nseg; ++i) {
        double th = th_from + span * i / nseg;
        poly.push_back(R * cplx(std::cos(th), std::sin(th)));
    }
    if (corner_mid) corner_mid->push_back(wrap(th_from + 0.5 * span));
}

} // namespace detail

inline std::vector<FaceCycle> trace_face_cycles(StokesGraph& g) {
    const int H = int(g.edges.size()) * 2;
    std::vector<int> pred_of(H, -1);  // rotation predecessor lookup
    for (const auto& rot : g.rotation) {
        const int n = int(rot.size());
        for (int i = 0; i < n; ++i) pred_of[rot[i]] = rot[(i - 1 + n) % n];
    }
    std::vector<bool> used(H, false);
    std::vector<FaceCycle> cycles;
    for (int h0 = 0; h0 < H; ++h0) {
        if (used[h0]) continue;
        FaceCycle fc;
        int h = h0;
        int guard = 0;
        do {
            used[h] = true;
            fc.halfedges.push_back(h);
            const GraphEdge& e = g.edges[h / 2];
            const bool fwd = (h % 2 == 0);
            // Append the edge polyline in walk orientation.
            const auto& p = e.pts;
            if (fwd)
                fc.poly.insert(fc.poly.end(), p.begin(), p.end());
            else
                fc.poly.insert(fc.poly.end(), p.rbegin(), p.rend());
            // Head vertex bookkeeping.
            int head = g.halfedge_head(h);
            const GraphVertex& hv = g.vertices[head];
            int t = g.twin(h);
            int nxt = pred_of[t];
            if (hv.kind == VertexKind::Pole) {
                if (hv.pole_k < 0) fc.pole_visits_m1++;
                else fc.pole_visits_p1++;
            } else if (hv.kind == VertexKind::Zero) {
                fc.zero_vertices.insert(head);
            } else {
                // Infinity: close with a big-circle arc from the incoming ray's
                // crossing angle (ccw) to the outgoing ray's crossing angle.
                const GraphEdge& ein = g.edges[h / 2];
                const GraphEdge& eout = g.edges[nxt / 2];
                double th_in = ein.arc_theta[1 - h % 2];
                double th_out = eout.arc_theta[nxt % 2];
                bool in_up = ein.inf_up[1 - h % 2];
                bool out_up = eout.inf_up[nxt % 2];
                if (in_up && out_up) fc.inf_visits_up++;
                else if (!in_up && !out_up) fc.inf_visits_down++;
                else fc.inf_visits_mixed++;
                detail::append_arc(fc.poly, g.arc_radius, th_in, th_out, &fc.corner_arcs);
            }
            h = nxt;
            if (++guard > 4 * H + 8)
                throw EmbeddingError("trace_face_cycles: non-closing face walk");
        } while (h != h0);
        if (!fc.poly.empty()) fc.poly.push_back(fc.poly.front());
        // Interior sample: offset left of the longest polyline segment that
        // belongs to a real edge (not a synthetic arc).
        double best_len = -1.0;
        cplx best_p, best_t;
        int best_edge = -1;
        size_t best_idx = 0;
        for (int h2 : fc.halfedges) {
            const GraphEdge& e = g.edges[h2 / 2];
            const bool fwd = (h2 % 2 == 0);
            const auto& p = e.pts;
            for (size_t i = 0; i + 1 < p.size(); ++i) {
                cplx a = fwd ? p[i] : p[p.size() - 1 - i];
                cplx b = fwd ? p[i + 1] : p[p.size() - 2 - i];
                double len = std::abs(b - a);
                if (len > best_len) {
                    best_len = len;
                    best_p = 0.5 * (a + b);
                    best_t = (b - a) / len;
                    best_edge = h2 / 2;
                    best_idx = fwd ? i : p.size() - 2 - i;
                }
            }
        }
        if (best_len > 0.0) {
            double off = std::min(0.25 * best_len, 1e-2 * g.scale);
            // clearance against other edges, and against remote parts of the own edge
            for (const auto& e2 : g.edges) {
                if (e2.id == best_edge) {
                    double d = 1e300;
                    for (size_t i = 0; i + 1 < e2.pts.size(); ++i) {
                        if (std::llabs(long(i) - long(best_idx)) <= 3) continue;
                        d = std::min(d, detail::dist_point_segment(best_p, e2.pts[i], e2.pts[i + 1]));
                    }
                    off = std::min(off, 0.45 * std::max(d, 1e-9));
                } else {
                    off = std::min(off, 0.45 * std::max(detail::poly_dist(best_p, e2.pts), 1e-9));
                }
            }
            for (const auto& vx : g.vertices)
                if (vx.kind != VertexKind::Infinity)
                    off = std::min(off, 0.45 * std::max(std::abs(best_p - vx.pos), 1e-9));
            fc.sample = best_p + cplx(0, 1) * best_t * off;
        } else {
            fc.sample = cplx(0, 0);
        }
        cycles.push_back(std::move(fc));
    }
    return cycles;
}

// Refine the sample point: portions of other cycles might sit closer than the
// first guess assumed.  Nudge the offset down until the winding signature of
// the sample stabilizes under halving.
namespace detail {

inline std::vector<int> winding_vector(cplx q, const std::vector<FaceCycle>& cycles) {
    std::vector<int> w;
    w.reserve(cycles.size());
    for (const auto& fc : cycles) w.push_back(winding_number(q, fc.poly));
    return w;
}

} // namespace detail

// ---------------------------------------------------------------------------
// enumerate_faces: trace cycles, merge by winding signature, classify.
// ---------------------------------------------------------------------------
inline Face classify_face_impl(const StokesGraph&, Face f, const std::vector<FaceCycle>& cycles) {
    int pole_visits_m1 = 0, pole_visits_p1 = 0;
    int up = 0, down = 0, mixed = 0;
    for (int ci : f.cycles) {
        const auto& fc = cycles[ci];
        pole_visits_m1 += fc.pole_visits_m1;
        pole_visits_p1 += fc.pole_visits_p1;
        up += fc.inf_visits_up;
        down += fc.inf_visits_down;
        mixed += fc.inf_visits_mixed;
        for (int zv : fc.zero_vertices) f.boundary_zero_vertices.insert(zv);
    }
    f.pole_boundary_visits_m1 = pole_visits_m1;
    f.pole_boundary_visits_p1 = pole_visits_p1;
    f.touches_infinity = (up + down + mixed) > 0;

    // Interior poles: winding of the face boundary (all cycles, walk
    // orientation) around poles that are not boundary vertices.
    for (int k : {-1, +1}) {
        if (k == -1 && pole_visits_m1 > 0) continue;
        if (k == +1 && pole_visits_p1 > 0) continue;
        int w = 0;
        for (int ci : f.cycles) w += detail::winding_number(cplx(double(k), 0.0), cycles[ci].poly);
        if (w != 0) f.interior_poles.push_back(k);
    }

    const int visits = pole_visits_m1 + pole_visits_p1 + up + down + mixed;
    if (f.cycles.size() >= 2) {
        f.type = (f.cycles.size() == 2 && visits == 0) ? FaceType::Ring : FaceType::Unknown;
        return f;
    }
    if (visits == 0) {
        f.type = (f.interior_poles.size() == 1) ? FaceType::Circle : FaceType::Unknown;
        return f;
    }
    if (mixed == 1 && visits == 1) {
        f.type = FaceType::End;
        // Side: does the corner arc cross pi (left) or 0 (right)?
        for (int ci : f.cycles)
            for (double th : cycles[ci].corner_arcs) {
                double d_pi = std::abs(std::remainder(th - M_PI, 2.0 * M_PI));
                double d_0 = std::abs(std::remainder(th, 2.0 * M_PI));
                if (d_pi < d_0) f.is_left_end = true;
                else f.is_right_end = true;
            }
        return f;
    }
    if (visits == 2 && mixed == 0) {
        f.type = FaceType::Strip;
        for (int i = 0; i < pole_visits_m1; ++i) f.strip_vertices.push_back("-1");
        for (int i = 0; i < pole_visits_p1; ++i) f.strip_vertices.push_back("+1");
        for (int i = 0; i < up; ++i) f.strip_vertices.push_back("+ioo");
        for (int i = 0; i < down; ++i) f.strip_vertices.push_back("-ioo");
        std::sort(f.strip_vertices.begin(), f.strip_vertices.end());
        return f;
    }
    f.type = FaceType::Unknown;
    return f;
}

inline std::vector<Face> enumerate_faces(StokesGraph& g) {
    g.cycles = trace_face_cycles(g);
    if (g.cycles.empty()) {
        Face f;
        f.id = 0;
        f.type = FaceType::Unknown;  // the whole sphere; no critical graph
        return {f};
    }
    // Merge cycles whose samples lie in the same region of the plane.
    std::vector<std::vector<int>> sig;
    for (const auto& fc : g.cycles) sig.push_back(detail::winding_vector(fc.sample, g.cycles));
    std::vector<int> face_of(g.cycles.size(), -1);
    std::vector<Face> faces;
    for (size_t i = 0; i < g.cycles.size(); ++i) {
        if (face_of[i] >= 0) continue;
        Face f;
        f.id = int(faces.size());
        f.cycles.push_back(int(i));
        face_of[i] = f.id;
        for (size_t j = i + 1; j < g.cycles.size(); ++j) {
            if (face_of[j] < 0 && sig[j] == sig[i]) {
                f.cycles.push_back(int(j));
                face_of[j] = f.id;
            }
        }
        faces.push_back(std::move(f));
    }
    for (auto& f : faces) f = classify_face_impl(g, f, g.cycles);
    return faces;
}

// Public per-face classification (already-enumerated face).
inline FaceType classify_face(const StokesGraph& g, const Face& f) {
    Face copy = f;
    copy.interior_poles.clear();
    copy.boundary_zero_vertices.clear();
    copy.strip_vertices.clear();
    return classify_face_impl(g, copy, g.cycles).type;
}

inline DomainConfig make_domain_config(const StokesGraph&, const std::vector<Face>& faces) {
    DomainConfig dc;
    dc.faces = faces;
    for (const auto& f : faces) {
        switch (f.type) {
            case FaceType::End: dc.n_end++; break;
            case FaceType::Strip: {
                dc.n_strip++;
                std::string key = f.strip_vertices.size() == 2
                                      ? f.strip_vertices[0] + "|" + f.strip_vertices[1]
                                      : "?";
                dc.strip_multiset.push_back(key);
                break;
            }
            case FaceType::Ring: dc.n_ring++; break;
            case FaceType::Circle:
                dc.n_circle++;
                if (!f.interior_poles.empty()) dc.circle_centers.push_back(f.interior_poles[0]);
                break;
            default: break;
        }
    }
    std::sort(dc.strip_multiset.begin(), dc.strip_multiset.end());
    std::sort(dc.circle_centers.begin(), dc.circle_centers.end());
    return dc;
}

// ---------------------------------------------------------------------------
// structure_checks
// ---------------------------------------------------------------------------
struct StructureReport {
    bool euler_ok = false;
    bool degrees_ok = false;
    bool cycles_enclose_pole_ok = false;
    bool inventory_ok = false;
    bool conjugation_ok = false;
    int V = 0, E = 0, F = 0, C = 0;
    std::vector<std::string> failures;
    std::vector<std::string> info;  // non-asserted diagnostics

    bool all_ok() const {
        return euler_ok && degrees_ok && cycles_enclose_pole_ok && inventory_ok && conjugation_ok;
    }
};

inline StructureReport structure_checks(const StokesGraph& g, const std::vector<Face>& faces,
                                        const QuadDiff& qd) {
    StructureReport rep;
    rep.V = int(g.vertices.size());
    rep.E = int(g.edges.size());
    rep.F = int(faces.size());
    rep.C = g.components;

    rep.euler_ok = (rep.V - rep.E + rep.F == 1 + rep.C);
    if (!rep.euler_ok)
        rep.failures.push_back("Euler: V-E+F = " + std::to_string(rep.V - rep.E + rep.F)
                               + " != 1+C = " + std::to_string(1 + rep.C));

    rep.degrees_ok = true;
    for (const auto& v : g.vertices) {
        if (v.kind != VertexKind::Zero) continue;
        int deg = int(g.rotation[v.id].size());
        if (deg != v.order + 2) {
            rep.degrees_ok = false;
            rep.failures.push_back("degree(" + v.name + ") = " + std::to_string(deg)
                                   + " != order+2 = " + std::to_string(v.order + 2));
        }
    }

    rep.cycles_enclose_pole_ok = true;
    for (const auto& fc : g.cycles) {
        if (fc.pole_visits_m1 + fc.pole_visits_p1 + fc.inf_visits_up + fc.inf_visits_down
                + fc.inf_visits_mixed > 0)
            continue;  // passes through an infinite critical point; exempt
        int wm = std::abs(detail::winding_number(cplx(-1, 0), fc.poly));
        int wp = std::abs(detail::winding_number(cplx(1, 0), fc.poly));
        if (wm + wp == 0) {
            rep.cycles_enclose_pole_ok = false;
            rep.failures.push_back("closed boundary cycle enclosing no pole");
        }
    }

    DomainConfig dc = make_domain_config(g, faces);
    rep.inventory_ok = (dc.n_end == 2) && (dc.n_circle <= 2) && (dc.n_ring <= 1);
    if (!rep.inventory_ok)
        rep.failures.push_back("inventory: end=" + std::to_string(dc.n_end)
                               + " circle=" + std::to_string(dc.n_circle)
                               + " ring=" + std::to_string(dc.n_ring));

    // Conjugation symmetry of the face inventory: strips swap +ioo/-ioo.
    std::multiset<std::string> strips(dc.strip_multiset.begin(), dc.strip_multiset.end());
    std::multiset<std::string> mirrored;
    for (auto s : strips) {
        auto swap_inf = [](std::string t) {
            if (t == "+ioo") return std::string("-ioo");
            if (t == "-ioo") return std::string("+ioo");
            return t;
        };
        auto bar = s.find('|');
        std::string a = swap_inf(s.substr(0, bar)), b = swap_inf(s.substr(bar + 1));
        if (b < a) std::swap(a, b);
        mirrored.insert(a + "|" + b);
    }
    rep.conjugation_ok = (strips == mirrored);
    if (!rep.conjugation_ok) rep.failures.push_back("strip inventory not conjugation-symmetric");

    // Informational: the P - N count per circle face with boundary zeros at
    // half multiplicity (the naive half-count convention gives 1, not 2).
    for (const auto& f : faces) {
        if (f.type != FaceType::Circle) continue;
        double N = 0.0;
        for (int zv : f.boundary_zero_vertices) N += 0.5 * g.vertices[zv].order;
        double P = 2.0;
        rep.info.push_back("circle face P-N (half-count convention) = "
                           + std::to_string(P - N));
    }
    (void)qd;
    return rep;
}

} // namespace stokes

#endif
