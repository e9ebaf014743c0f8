#ifndef STOKES_REPORT_HPP
#define STOKES_REPORT_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "stokes/asymptotics.hpp"
#include "stokes/polynomials.hpp"
#include "stokes/qdiff.hpp"
#include "stokes/rabi_map.hpp"
#include "stokes/stokes_graph.hpp"
#include "stokes/taxonomy.hpp"
#include "stokes/tracer.hpp"

namespace stokes {

using json = nlohmann::ordered_json;

// All floating values go through one 17-significant-digit formatter so that
// identical runs serialize identical bytes.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json jnum(double v) { return json::parse(fmt17(v)); }
inline json jcplx(cplx z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

inline json to_json(const QuarticCoeffs& c) {
    return json{{"c3", jnum(c.c3)}, {"c2", jnum(c.c2)}, {"c1", jnum(c.c1)}, {"c0", jnum(c.c0)}};
}

inline json to_json(const LagrangeInvariants& v) {
    return json{{"D0", jnum(v.D0)}, {"P0", jnum(v.Pc)}, {"Q0", jnum(v.Qc)},
                {"R0", jnum(v.R0)}, {"S0", jnum(v.S0)}};
}

inline json to_json(const RootSet& rs) {
    json arr = json::array();
    for (const auto& r : rs.roots)
        arr.push_back(json{{"re", jnum(r.value.real())},
                           {"im", jnum(r.value.imag())},
                           {"multiplicity", r.multiplicity},
                           {"real", r.is_real}});
    return arr;
}

inline json to_json(const RootClass& rc) {
    return json{{"pattern", to_string(rc.pattern)},
                {"near_degenerate", rc.near_degenerate},
                {"pole_collision_minus1", rc.pole_collision_minus1},
                {"pole_collision_plus1", rc.pole_collision_plus1}};
}

inline json to_json(const CaseLabel& l) {
    json j{{"label", l.str()}};
    if (l.ok) {
        j["family"] = l.family;
        j["subcase"] = l.subpath;
        j["mirror"] = l.mirror;
        j["degenerate"] = l.degenerate;
    }
    if (!l.note.empty()) j["note"] = l.note;
    return j;
}

inline json to_json(const PredicateReport& r) {
    json arr = json::array();
    for (const auto& e : r.entries)
        arr.push_back(json{{"name", e.name},
                           {"value", jnum(e.value)},
                           {"relation", e.relation},
                           {"margin", jnum(e.margin)}});
    json j{{"entries", arr}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// Graph serialization (schema_version 1): vertices, edges with polylines,
// faces with boundary cycles and pole content.
inline json graph_to_json(const StokesGraph& g, const std::vector<Face>& faces,
                          int polyline_stride = 16) {
    json jg;
    jg["schema_version"] = 1;
    json vs = json::array();
    for (const auto& v : g.vertices) {
        const char* kind = v.kind == VertexKind::Zero ? "zero"
                         : v.kind == VertexKind::Pole ? "pole" : "infinity";
        vs.push_back(json{{"id", v.id},
                          {"kind", kind},
                          {"name", v.name},
                          {"position", jcplx(v.pos)},
                          {"order", v.order}});
    }
    jg["vertices"] = vs;
    json es = json::array();
    for (const auto& e : g.edges) {
        json poly = json::array();
        for (size_t i = 0; i < e.pts.size(); i += size_t(polyline_stride))
            poly.push_back(jcplx(e.pts[i]));
        if (!e.pts.empty()) poly.push_back(jcplx(e.pts.back()));
        es.push_back(json{{"id", e.id},
                          {"from", e.v[0]},
                          {"to", e.v[1]},
                          {"label", e.label},
                          {"polyline", poly}});
    }
    jg["edges"] = es;
    json fs = json::array();
    for (const auto& f : faces) {
        json jf{{"id", f.id}, {"type", to_string(f.type)}};
        jf["boundary_cycles"] = json::array();
        for (int ci : f.cycles) {
            json cyc = json::array();
            for (int h : g.cycles[size_t(ci)].halfedges)
                cyc.push_back(json{{"edge", h / 2}, {"reversed", h % 2 == 1}});
            jf["boundary_cycles"].push_back(cyc);
        }
        jf["interior_poles"] = f.interior_poles;
        if (f.type == FaceType::Strip) jf["strip_vertices"] = f.strip_vertices;
        json bz = json::array();
        for (int z : f.boundary_zero_vertices) bz.push_back(z);
        jf["boundary_zeros"] = bz;
        fs.push_back(jf);
    }
    jg["faces"] = fs;
    return jg;
}

struct ClassifyOutcome {
    json report;
    int exit_code = 0;  // 0 ok, 2 unclassified, 3 depressed refusal
    // Kept alive for rendering:
    bool traced = false;
    StokesGraph graph;
    std::vector<Face> faces;
    QuadDiff qd;
};

struct Tolerances {
    double root = 1e-9;     // quartic solve / clustering
    double pole = 1e-9;     // depressed-locus refusal
    double eq_band = 1e-5;  // analytic equality band (relative)
};

// End-to-end classification report for a coefficient quadruple.
inline ClassifyOutcome classify_coeffs(const QuarticCoeffs& c,
                                       const TraceOptions& topts = {},
                                       bool with_graph_json = false,
                                       const Tolerances& tols = {}) {
    ClassifyOutcome out;
    out.report["schema_version"] = 1;
    out.report["coefficients"] = to_json(c);
    LagrangeInvariants inv = lagrange_invariants(c);
    out.report["invariants"] = to_json(inv);

    const double scale = c.magnitude_scale();
    const double pm1 = c.eval(cplx(-1, 0)).real();
    const double pp1 = c.eval(cplx(1, 0)).real();
    out.report["P0_at_minus1"] = jnum(pm1);
    out.report["P0_at_plus1"] = jnum(pp1);
    if (std::abs(pm1) < tols.pole * scale || std::abs(pp1) < tols.pole * scale) {
        out.report["error"] = "depressed differential: a zero of P0 collides with a pole";
        out.exit_code = 3;
        return out;
    }

    RootClass rc = classify_roots(inv, c, tols.root);
    out.report["root_class"] = to_json(rc);
    out.qd = QuadDiff::make(c, tols.root, tols.pole);
    out.report["roots"] = to_json(out.qd.roots);
    out.report["delta"] = json{{"minus1", jnum(pole_data(c, -1).delta)},
                               {"plus1", jnum(pole_data(c, +1).delta)}};

    auto trajectories = trace_all(out.qd, topts);
    out.graph = build_graph(trajectories, out.qd);
    out.faces = enumerate_faces(out.graph);
    out.traced = true;
    DomainConfig dc = make_domain_config(out.graph, out.faces);
    json inventory{{"end", dc.n_end}, {"strip", dc.n_strip}, {"ring", dc.n_ring},
                   {"circle", dc.n_circle}};
    inventory["strip_vertices"] = dc.strip_multiset;
    inventory["circle_centers"] = dc.circle_centers;
    out.report["inventory"] = inventory;

    StructureReport sr = structure_checks(out.graph, out.faces, out.qd);
    out.report["structure"] = json{{"euler_ok", sr.euler_ok},
                                   {"degrees_ok", sr.degrees_ok},
                                   {"cycles_enclose_pole_ok", sr.cycles_enclose_pole_ok},
                                   {"inventory_ok", sr.inventory_ok},
                                   {"conjugation_ok", sr.conjugation_ok},
                                   {"V", sr.V},
                                   {"E", sr.E},
                                   {"F", sr.F},
                                   {"C", sr.C},
                                   {"failures", sr.failures}};

    CaseLabel geom = label_case_geometric(dc, out.graph, out.qd.roots);
    AnalyticResult ana = label_case_analytic(out.qd, tols.eq_band);
    CrossValidation cv = cross_validate(geom, ana);
    out.report["case_geometric"] = to_json(geom);
    json ja = to_json(ana.label);
    ja["status"] = ana.status == AnalyticStatus::Label ? "label"
                 : ana.status == AnalyticStatus::Undetermined ? "undetermined"
                 : ana.status == AnalyticStatus::Failed ? "failed" : "not-implemented";
    ja["predicates"] = to_json(ana.report);
    out.report["case_analytic"] = ja;
    out.report["cross_validation"] =
        json{{"verdict", to_string(cv.verdict)}, {"detail", cv.detail}};

    if (with_graph_json) out.report["graph"] = graph_to_json(out.graph, out.faces);
    if (!geom.ok) out.exit_code = 2;
    return out;
}

inline ClassifyOutcome classify_params(const RabiParams& p, const TraceOptions& topts = {},
                                       bool with_graph_json = false,
                                       const Tolerances& tols = {}) {
    QuarticCoeffs c = coeffs_from_params(p);
    ClassifyOutcome out = classify_coeffs(c, topts, with_graph_json, tols);
    json jp{{"delta_sq", jnum(p.delta_sq)}, {"energy", jnum(p.energy)}, {"g_sq", jnum(p.g_sq)}};
    out.report["parameters"] = jp;
    if (out.exit_code != 3) {
        LagrangeInvariants phys = invariants_from_params(p);
        out.report["invariants_physical_form"] = to_json(phys);
    }
    return out;
}

} // namespace stokes

#endif
