#ifndef STOKES_TAXONOMY_HPP
#define STOKES_TAXONOMY_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/qdiff.hpp"
#include "stokes/stokes_graph.hpp"

namespace stokes {

struct CaseLabel {
    bool ok = false;
    std::string family;   // "I", "II", "III"
    std::string subpath;  // e.g. "3-a-alpha"
    bool mirror = false;
    bool mirror_resolved = true;  // false when the analytic side cannot orient the pair
    bool degenerate = false;
    std::string note;

    std::string str() const {
        if (!ok) return "unclassified";
        std::string s = family;
        if (!subpath.empty()) s += "-" + subpath;
        if (degenerate) s += "-deg";
        if (mirror) s += "-m";
        return s;
    }
    bool same_base(const CaseLabel& o) const {
        return ok && o.ok && family == o.family && subpath == o.subpath
               && degenerate == o.degenerate;
    }
};

struct PredicateEntry {
    std::string name;      // the source equation tag
    double value = 0.0;
    std::string relation;  // e.g. "< 0", "= delta_-1"
    double margin = 0.0;   // distance from the decision boundary
};

struct PredicateReport {
    std::vector<PredicateEntry> entries;
    std::string note;
};

enum class AnalyticStatus { Label, Undetermined, NotImplemented, Failed };

struct AnalyticResult {
    AnalyticStatus status = AnalyticStatus::NotImplemented;
    CaseLabel label;
    PredicateReport report;
};

// ---------------------------------------------------------------------------
// Geometric classifier
// ---------------------------------------------------------------------------
namespace detail {

struct ZeroLayout {
    int nL = 0, nC = 0, nR = 0;    // real zeros (with multiplicity) per interval
    int n_real = 0;                // with multiplicity
    bool any_multiple = false;
    std::vector<double> reals;     // distinct real zero positions, ascending
    std::vector<cplx> upper;       // distinct upper-half zeros
};

inline ZeroLayout zero_layout(const RootSet& rs) {
    ZeroLayout L;
    for (const auto& r : rs.roots) {
        if (r.multiplicity > 1) L.any_multiple = true;
        if (r.is_real) {
            L.n_real += r.multiplicity;
            double x = r.value.real();
            if (x < -1.0) L.nL += r.multiplicity;
            else if (x > 1.0) L.nR += r.multiplicity;
            else L.nC += r.multiplicity;
            L.reals.push_back(x);
        } else if (r.value.imag() > 0.0) {
            L.upper.push_back(r.value);
        }
    }
    std::sort(L.reals.begin(), L.reals.end());
    std::sort(L.upper.begin(), L.upper.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    return L;
}

struct FaceZeroCounts {
    int total = 0, real = 0, complex_ = 0;
};

inline FaceZeroCounts face_zero_counts(const StokesGraph& g, const Face& f) {
    FaceZeroCounts c;
    for (int vid : f.boundary_zero_vertices) {
        const auto& v = g.vertices[vid];
        c.total++;
        if (std::abs(v.pos.imag()) < 1e-9 * (1.0 + std::abs(v.pos))) c.real++;
        else c.complex_++;
    }
    return c;
}

inline const Face* find_end(const std::vector<Face>& faces, bool left) {
    for (const auto& f : faces)
        if (f.type == FaceType::End && (left ? f.is_left_end : f.is_right_end)) return &f;
    return nullptr;
}

inline const Face* find_circle(const std::vector<Face>& faces, int pole) {
    for (const auto& f : faces)
        if (f.type == FaceType::Circle && f.interior_poles.size() == 1
            && f.interior_poles[0] == pole)
            return &f;
    return nullptr;
}

inline std::string strip_key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return a + "|" + b;
}

inline std::vector<std::string> mirror_strips(const std::vector<std::string>& strips) {
    // reflect across the imaginary axis: -1 <-> +1, +-ioo fixed
    std::vector<std::string> out;
    for (const auto& s : strips) {
        auto bar = s.find('|');
        auto flip = [](std::string t) {
            if (t == "-1") return std::string("+1");
            if (t == "+1") return std::string("-1");
            return t;
        };
        out.push_back(strip_key(flip(s.substr(0, bar)), flip(s.substr(bar + 1))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline CaseLabel label_case_geometric(const DomainConfig& dc, const StokesGraph& g,
                                      const RootSet& roots) {
    using namespace detail;
    CaseLabel out;
    const ZeroLayout L = zero_layout(roots);
    out.degenerate = L.any_multiple;

    std::vector<std::string> strips = dc.strip_multiset;  // sorted keys
    auto strips_are = [&](std::initializer_list<std::string> keys) {
        std::vector<std::string> v;
        for (auto& k : keys) v.push_back(k);
        std::sort(v.begin(), v.end());
        return strips == v;
    };
    auto K = strip_key;
    const bool ring = dc.n_ring == 1;

    auto dump = [&]() {
        std::ostringstream os;
        os << "inventory end=" << dc.n_end << " strip=" << dc.n_strip << " ring=" << dc.n_ring
           << " circle=" << dc.n_circle << " strips=[";
        for (const auto& s : strips) os << s << " ";
        os << "] pattern=(" << L.nL << "," << L.nC << "," << L.nR << ")";
        return os.str();
    };

    auto finish = [&](std::string family, std::string sub, bool mirror) {
        out.ok = true;
        out.family = std::move(family);
        out.subpath = std::move(sub);
        out.mirror = mirror;
        return out;
    };

    if (L.n_real == 0) {
        if (ring && dc.n_circle == 2 && strips.empty()) return finish("I", "1", false);
        if (!ring && dc.n_circle == 2 && strips_are({K("+ioo", "-ioo")}))
            return finish("I", "2", false);
        if (!ring && strips.empty() && dc.n_circle == 2) {
            const Face* cm = find_circle(dc.faces, -1);
            const Face* cp = find_circle(dc.faces, +1);
            if (cm && cp) {
                int zm = face_zero_counts(g, *cm).total;
                int zp = face_zero_counts(g, *cp).total;
                int distinct_zeros = int(roots.roots.size());
                if (zm == distinct_zeros && zp < distinct_zeros) return finish("I", "3", false);
                if (zp == distinct_zeros && zm < distinct_zeros) return finish("I", "3", true);
                if (out.degenerate && zm == zp) return finish("I", "3", false);
            }
        }
        out.note = "unmatched family I: " + dump();
        return out;
    }

    if (L.n_real == 2) {
        const bool m = (L.nR > 0 && L.nL == 0 && L.nC == 0)     // II-1 mirror: both right
                       || (L.nC > 0 && L.nR > 0)                 // II-3 mirror: middle + right
                       || false;
        if ((L.nL == 2 && L.nC == 0 && L.nR == 0) || (L.nR == 2 && L.nL == 0 && L.nC == 0)) {
            const int p = m ? +1 : -1;
            const Face* end_near = find_end(dc.faces, !m);  // left end for base
            const Face* circ = find_circle(dc.faces, p);
            if (strips_are({K("+ioo", "-ioo")}) && !ring) return finish("II", "1-a", m);
            if (ring && circ) {
                auto zc = face_zero_counts(g, *circ);
                if (zc.complex_ == 2 && zc.real == 0) return finish("II", "1-b", m);
                if (zc.real == 1 && zc.complex_ == 0) return finish("II", "1-d", m);
            }
            if (!ring && strips.empty() && end_near) {
                int n = face_zero_counts(g, *end_near).total;
                if (n == 1) return finish("II", "1-c", m);
                if (n == 3) return finish("II", "1-e", m);
            }
            out.note = "unmatched II-1: " + dump();
            return out;
        }
        if (L.nC == 2 && L.nL == 0 && L.nR == 0) {
            if (ring && strips.empty()) return finish("II", "2-a", false);
            const Face* le = find_end(dc.faces, true);
            const Face* re = find_end(dc.faces, false);
            if (strips_are({K("+ioo", "-ioo")}) && le && re) {
                bool complex_left = face_zero_counts(g, *le).complex_ == 2;
                return finish("II", "2-b", !complex_left);
            }
            if (!ring && strips.empty() && le && re) {
                if (face_zero_counts(g, *re).total == 4) return finish("II", "2-c", false);
                if (face_zero_counts(g, *le).total == 4) return finish("II", "2-c", true);
            }
            out.note = "unmatched II-2: " + dump();
            return out;
        }
        if ((L.nL == 1 && L.nC == 1) || (L.nC == 1 && L.nR == 1)) {
            const bool mm = (L.nR == 1);
            const std::string q = mm ? "+1" : "-1";
            if (!ring && strips_are({K(q, "+ioo"), K("-ioo", q), K(q, q)}))
                return finish("II", "3-a-alpha", mm);
            if (!ring && strips_are({K(q, "+ioo"), K("-ioo", q), K("+ioo", "-ioo")}))
                return finish("II", "3-a-beta", mm);
            if (!ring && strips_are({K(q, "+ioo"), K("-ioo", q)}))
                return finish("II", "3-a-gamma", mm);
            if (ring && strips_are({K(q, q)})) return finish("II", "3-b", mm);
            if (!ring && strips_are({K(q, q)})) return finish("II", "3-c", mm);
            out.note = "unmatched II-3: " + dump();
            return out;
        }
        if (L.nL == 1 && L.nR == 1) {
            const std::string S = K("-1", "+1");
            if (!ring
                && strips_are({S, K("-1", "+ioo"), K("-ioo", "-1"), K("+1", "+ioo"),
                               K("-ioo", "+1")}))
                return finish("II", "4-a-alpha", false);
            if (!ring && strips_are({S, K("-1", "+ioo"), K("-ioo", "-1"), K("-1", "-1")}))
                return finish("II", "4-a-beta", false);
            if (!ring && strips_are({S, K("+1", "+ioo"), K("-ioo", "+1"), K("+1", "+1")}))
                return finish("II", "4-a-beta", true);
            if (!ring && strips_are({S, K("-1", "+ioo"), K("-ioo", "-1")}))
                return finish("II", "4-a-gamma", false);
            if (!ring && strips_are({S, K("+1", "+ioo"), K("-ioo", "+1")}))
                return finish("II", "4-a-gamma", true);
            if (ring && strips_are({S, K("-1", "-1")})) return finish("II", "4-b-alpha", false);
            if (ring && strips_are({S, K("+1", "+1")})) return finish("II", "4-b-alpha", true);
            if (ring && strips_are({S})) return finish("II", "4-b-beta", false);
            // c-alpha keeps its extra strip on the heavy side (the -1 pole for
            // the base orientation with e1, e3, e4 on the left end boundary).
            if (!ring && strips_are({S, K("-1", "-1")})) return finish("II", "4-c-alpha", false);
            if (!ring && strips_are({S, K("+1", "+1")})) return finish("II", "4-c-alpha", true);
            if (!ring && strips_are({S})) return finish("II", "4-c-beta", false);
            out.note = "unmatched II-4: " + dump();
            return out;
        }
        out.note = "unmatched family II: " + dump();
        return out;
    }

    if (L.n_real == 4) {
        auto pat = std::array<int, 3>{L.nL, L.nC, L.nR};
        const std::string S = K("-1", "+1");
        if (pat == std::array<int, 3>{4, 0, 0} || pat == std::array<int, 3>{0, 0, 4}) {
            bool mm = (L.nR == 4);
            if (ring && dc.n_circle == 2 && strips.empty()) return finish("III", "1", mm);
            out.note = "unmatched III-1: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{0, 4, 0}) {
            if (!ring && dc.n_circle == 2 && strips_are({K("+ioo", "-ioo")}))
                return finish("III", "2", false);
            out.note = "unmatched III-2: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{3, 1, 0} || pat == std::array<int, 3>{0, 1, 3}) {
            bool mm = (L.nR == 3);
            const std::string q = mm ? "+1" : "-1";
            if (ring && dc.n_circle == 1 && strips_are({K(q, q)})) return finish("III", "3", mm);
            out.note = "unmatched III-3: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{3, 0, 1} || pat == std::array<int, 3>{1, 0, 3}) {
            bool mm = (L.nR == 3);
            const std::string n = mm ? "-1" : "+1";  // pole away from the triple
            const std::string q = mm ? "+1" : "-1";  // pole next to the triple
            if (!ring && strips_are({S, K(n, n), K(n, "+ioo"), K("-ioo", n)}))
                return finish("III", "4-a-alpha", mm);
            if (ring && strips_are({S, K(n, n)})) return finish("III", "4-a-beta", mm);
            if (!ring && strips_are({S, K(n, n)})) return finish("III", "4-a-gamma", mm);
            if (ring && strips_are({S, K(q, q)})) return finish("III", "4-b", mm);
            if (ring && strips_are({S})) return finish("III", "4-c", mm);
            out.note = "unmatched III-4: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{1, 3, 0} || pat == std::array<int, 3>{0, 3, 1}) {
            bool mm = (L.nR == 1);
            const std::string q = mm ? "+1" : "-1";
            if (!ring && dc.n_circle == 1
                && strips_are({K(q, "+ioo"), K("-ioo", q), K("+ioo", "-ioo")}))
                return finish("III", "5", mm);
            out.note = "unmatched III-5: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{2, 2, 0} || pat == std::array<int, 3>{0, 2, 2}) {
            bool mm = (L.nR == 2);
            if (dc.n_circle == 2 && !ring && strips_are({K("+ioo", "-ioo")}))
                return finish("III", "6-a", mm);
            if (dc.n_circle == 2 && ring && strips.empty()) return finish("III", "6-b", mm);
            if (dc.n_circle == 2 && !ring && strips.empty()) return finish("III", "6-c", mm);
            out.note = "unmatched III-6: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{2, 0, 2}) {
            const Face* cm = find_circle(dc.faces, -1);
            const Face* cp = find_circle(dc.faces, +1);
            if (dc.n_circle == 2 && !ring && strips_are({K("+ioo", "-ioo")}))
                return finish("III", "7-a", false);
            if (dc.n_circle == 2 && ring && strips.empty() && cm && cp) {
                if (face_zero_counts(g, *cm).total == 2) return finish("III", "7-b", false);
                if (face_zero_counts(g, *cp).total == 2) return finish("III", "7-b", true);
            }
            if (dc.n_circle == 2 && !ring && strips.empty() && cm && cp) {
                if (face_zero_counts(g, *cm).total == 3) return finish("III", "7-c", false);
                if (face_zero_counts(g, *cp).total == 3) return finish("III", "7-c", true);
            }
            out.note = "unmatched III-7: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{2, 1, 1} || pat == std::array<int, 3>{1, 1, 2}) {
            bool mm = (L.nL == 1);
            const std::string n = mm ? "-1" : "+1";  // pole on the single-zero side
            if (!ring && strips_are({K("+ioo", "-ioo"), K(n, "+ioo"), K("-ioo", n)}))
                return finish("III", "8-a", mm);
            if (!ring && strips_are({K(n, n), K(n, "+ioo"), K("-ioo", n)}))
                return finish("III", "8-b-alpha", mm);
            if (ring && strips_are({K(n, n)})) return finish("III", "8-b-beta", mm);
            if (!ring && strips_are({K(n, n)})) return finish("III", "8-b-gamma", mm);
            if (!ring && strips_are({K(n, "+ioo"), K("-ioo", n)})) return finish("III", "8-c", mm);
            out.note = "unmatched III-8: " + dump();
            return out;
        }
        if (pat == std::array<int, 3>{1, 2, 1}) {
            if (!ring && dc.n_circle == 0
                && strips_are({K("-1", "+ioo"), K("-ioo", "-1"), K("+1", "+ioo"),
                               K("-ioo", "+1"), K("+ioo", "-ioo")}))
                return finish("III", "9", false);
            out.note = "unmatched III-9: " + dump();
            return out;
        }
        out.note = "unmatched family III: " + dump();
        return out;
    }

    out.note = "real zero count " + std::to_string(L.n_real) + " (odd): " + dump();
    return out;
}

// ---------------------------------------------------------------------------
// Analytic classifier: the per-pattern predicate sets.
// ---------------------------------------------------------------------------
namespace detail {

struct PredicateEval {
    const QuadDiff* qd;
    PredicateReport* rep;
    double eq_band;  // absolute tolerance for the equality strata

    // Predicate paths live in the closed upper half plane; when the straight
    // segment grazes the other double pole, detour above it.
    std::vector<cplx> path(cplx a, cplx b) const {
        std::vector<cplx> pts{a};
        const double S = 1.0 + std::max(std::abs(a), std::abs(b));
        for (double px : {-1.0, 1.0}) {
            cplx p(px, 0.0);
            if (std::abs(a - p) < 1e-2 || std::abs(b - p) < 1e-2) continue;  // endpoint pole
            if (dist_point_segment(p, a, b) < 1e-3 * S)
                pts.push_back(cplx(px, 0.35 * S));
        }
        if (pts.size() == 3) {
            bool ascending = a.real() < b.real();
            if ((pts[1].real() > pts[2].real()) == ascending) std::swap(pts[1], pts[2]);
        }
        pts.push_back(b);
        return pts;
    }
    double im_len(cplx a, cplx b) const {
        return std::abs(q_length_chain(path(a, b), qd->coeffs).value.imag());
    }
    // Signed Im with the principal branch germ at the start point, for
    // difference limits where the orientation of the pair matters.
    double im_signed(cplx a, cplx b) const {
        return q_length_chain(path(a, b), qd->coeffs).value.imag();
    }
    double im_chain(std::vector<cplx> pts) const {
        return std::abs(q_length_chain(pts, qd->coeffs).value.imag());
    }
    double re_len(cplx a, cplx b) const {
        return std::abs(q_length_chain(path(a, b), qd->coeffs).value.real());
    }

    // Richardson-extrapolated limit of f(eps) over eps = 1e-3, 1e-4, 1e-5.
    template <class F>
    double limit(F f, const char* name) const {
        double f1 = f(1e-3), f2 = f(1e-4), f3 = f(1e-5);
        double r12 = (10.0 * f2 - f1) / 9.0;
        double r23 = (10.0 * f3 - f2) / 9.0;
        double lim = (100.0 * r23 - r12) / 99.0;
        rep->entries.push_back({name, lim, "limit", std::abs(r23 - r12)});
        return lim;
    }

    void record(const char* name, double value, const char* rel, double margin) const {
        rep->entries.push_back({name, value, rel, margin});
    }

    int sign_banded(double v) const { return (v > eq_band) ? 1 : (v < -eq_band ? -1 : 0); }
};

} // namespace detail

inline AnalyticResult label_case_analytic(const QuadDiff& qd, double eq_band_rel = 1e-5) {
    using detail::ZeroLayout;
    AnalyticResult res;
    const ZeroLayout L = detail::zero_layout(qd.roots);
    auto& rep = res.report;

    double delta_m = 0.0, delta_p = 0.0;
    try {
        delta_m = pole_data(qd.coeffs, -1).delta;
        delta_p = pole_data(qd.coeffs, +1).delta;
    } catch (const StokesError& e) {
        res.status = AnalyticStatus::Failed;
        rep.note = e.what();
        return res;
    }
    const double eq_band = eq_band_rel * (1.0 + delta_m + delta_p);
    detail::PredicateEval ev{&qd, &rep, eq_band};

    auto label = [&](std::string fam, std::string sub, bool mirror, bool resolved = true) {
        res.status = AnalyticStatus::Label;
        res.label.ok = true;
        res.label.family = std::move(fam);
        res.label.subpath = std::move(sub);
        res.label.mirror = mirror;
        res.label.mirror_resolved = resolved;
        res.label.degenerate = L.any_multiple;
        return res;
    };
    auto undet = [&](std::string why) {
        res.status = AnalyticStatus::Undetermined;
        rep.note = std::move(why);
        return res;
    };

    try {
        if (L.n_real == 4) {
            // Unique-configuration patterns need only the interval counts,
            // which track multiplicity, so they stay safe for merged zeros.
            auto pat0 = std::array<int, 3>{L.nL, L.nC, L.nR};
            if (pat0 == std::array<int, 3>{4, 0, 0}) return label("III", "1", false);
            if (pat0 == std::array<int, 3>{0, 0, 4}) return label("III", "1", true);
            if (pat0 == std::array<int, 3>{0, 4, 0}) return label("III", "2", false);
            if (pat0 == std::array<int, 3>{3, 1, 0}) return label("III", "3", false);
            if (pat0 == std::array<int, 3>{0, 1, 3}) return label("III", "3", true);
            if (pat0 == std::array<int, 3>{1, 3, 0}) return label("III", "5", false);
            if (pat0 == std::array<int, 3>{0, 3, 1}) return label("III", "5", true);
            if (pat0 == std::array<int, 3>{1, 2, 1}) return label("III", "9", false);
        }
        if (L.any_multiple)
            return undet("merged zeros: the predicate set needs distinct zeros");

        if (L.n_real == 0 && L.upper.size() == 2) {
            const cplx u1 = L.upper[0], u2 = L.upper[1];
            auto lim_at = [&](double pole, cplx za, cplx zb, const char* name) {
                return ev.limit(
                    [&](double eps) {
                        cplx b(pole + eps, 0.0);
                        return ev.im_len(b, za) - ev.im_len(b, zb);
                    },
                    name);
            };
            // With u1 the smaller-Re upper zero, the separated configuration
            // (strip between the two pole complexes) reads (-, +); every ring
            // configuration reads one of the other strict sign patterns.
            double l1 = lim_at(-1.0, u1, u2, "eqI(1)1");
            double l2 = lim_at(+1.0, u1, u2, "eqI(1)2");
            int s1 = ev.sign_banded(l1), s2 = ev.sign_banded(l2);
            if (s1 < 0 && s2 > 0) return label("I", "2", false);
            if (s1 != 0 && s2 != 0) return label("I", "1", false);
            if (s1 == 0 && s2 == 0) {
                // I-3 stratum; the auxiliary inequality (a=0, b=2 unless collinear).
                cplx a(0.0, 0.0), b(2.0, 0.0);
                auto collinear = [&](cplx p) {
                    cplx d1 = u2 - u1, d2 = p - u1;
                    return std::abs(d1.real() * d2.imag() - d1.imag() * d2.real())
                           < 1e-9 * (1.0 + std::abs(d1) * std::abs(d2));
                };
                for (int t = 0; t < 3 && (collinear(a) || collinear(b)); ++t) {
                    a += cplx(0.1, 0.0);
                    b += cplx(0.1, 0.0);
                }
                double v = (ev.re_len(b, u1) + ev.re_len(a, u1))
                         - (ev.re_len(b, u2) + ev.re_len(a, u2));
                ev.record("I.3a", v, "> 0 for the zero on both circle boundaries", std::abs(v));
                return label("I", "3", false, false);
            }
            return undet("family I: one limit inside the equality band");
        }

        if (L.n_real == 2 && L.upper.size() == 1) {
            const cplx u = L.upper[0];
            if (L.nL == 2 || L.nR == 2) {  // II-1 and mirror
                const bool m = (L.nR == 2);
                const double pole = m ? +1.0 : -1.0;
                const double e2 = m ? L.reals[0] : L.reals[1];  // inner real zero
                double l1 = ev.limit(
                    [&](double eps) {
                        cplx b(pole + (m ? eps : -eps), 0.0);
                        return ev.im_len(b, cplx(e2, 0)) - ev.im_len(b, u);
                    },
                    "eqII-1(a)-1");
                double l2 = ev.limit(
                    [&](double eps) {
                        cplx b(-pole, eps);
                        return ev.im_len(b, cplx(e2, 0)) - ev.im_len(b, u);
                    },
                    "eqII-1(a)-2");
                // The two limits share one magnitude W; the realized sign
                // patterns are (-,+) for a, (+,+) for b and (+,-) for d (the
                // last differs from the printed text, which claims (-,-); the
                // traced geometry decides).
                int s1 = ev.sign_banded(l1), s2 = ev.sign_banded(l2);
                if (s1 < 0 && s2 > 0) return label("II", "1-a", m);
                if (s1 > 0 && s2 > 0) return label("II", "1-b", m);
                if (s1 > 0 && s2 < 0) return label("II", "1-d", m);
                return undet("II-1: equality stratum (subcases c/e) or inconsistent signs");
            }
            if (L.nC == 2) {  // II-2
                // The two limit quantities coincide in magnitude identically
                // (one strip/ring width W).  W < 0: both real zeros sit on
                // their pole circles (subcase a); W > 0: the complex pair owns
                // one end (subcase b), oriented by the signed-germ version;
                // W = 0: boundary stratum (subcase c), oriented by Re parts.
                const double e1 = L.reals[0], e2 = L.reals[1];
                double w_abs = ev.limit(
                    [&](double eps) {
                        cplx b(-1.0 + eps, 0.0);
                        return ev.im_len(b, cplx(e1, 0)) - ev.im_len(b, u);
                    },
                    "eqII-2(a)-1");
                ev.record("delta_-1 vs delta_+1", delta_m - delta_p,
                          "> 0 when the complex pair bounds the circle at -1", 0);
                int s = ev.sign_banded(w_abs);
                if (s < 0) return label("II", "2-a", false);
                // The circle whose boundary carries the complex pair is the
                // longer one; that pole decides the orientation.
                if (s > 0) return label("II", "2-b", delta_m < delta_p);
                double re1 = ev.re_len(cplx(e1, 0), u), re2 = ev.re_len(cplx(e2, 0), u);
                ev.record("II-2-c: Re[e1,e3] vs Re[e2,e3]", re1 - re2, "< 0 for the base", 0);
                res.label.note = "boundary stratum W = 0";
                return label("II", "2-c", re1 > re2);
            }
            if ((L.nL == 1 && L.nC == 1) || (L.nC == 1 && L.nR == 1)) {  // II-3
                const bool m = (L.nR == 1);
                const double d = m ? delta_p : delta_m;
                const double e1 = m ? L.reals[1] : L.reals[0];  // beyond the pole
                const double e2 = m ? L.reals[0] : L.reals[1];  // between the poles
                const double A = ev.im_len(cplx(e1, 0), u);
                const double B = ev.im_len(cplx(e2, 0), u);
                struct Row { const char* name; double resid; const char* sub; };
                std::vector<Row> rows = {
                    {"eqII3-a-alpha: 2Im[e1,e3]+2Im[e2,e3]=delta", 2 * A + 2 * B - d, "3-a-alpha"},
                    {"eqII3-a-beta: 2Im[e1,e3]=2Im[e2,e3]+delta", 2 * A - 2 * B - d, "3-a-beta"},
                    {"II3-a-gamma: Im[e1,e3]=delta", A - d, "3-a-gamma"},
                    {"II3-b: 2Im[e2,e3]=2Im[e1,e3]+delta", 2 * B - 2 * A - d, "3-b"},
                    {"II3-c: 2Im[e2,e3]=delta", 2 * B - d, "3-c"},
                };
                std::vector<const Row*> hits;
                for (auto& r : rows) {
                    ev.record(r.name, r.resid, "= 0", std::abs(r.resid));
                    if (std::abs(r.resid) <= eq_band) hits.push_back(&r);
                }
                if (hits.size() == 1) return label("II", hits[0]->sub, m);
                return undet(hits.empty() ? "II-3: no relation holds within the band"
                                          : "II-3: several relations within the band");
            }
            if (L.nL == 1 && L.nR == 1) {  // II-4
                // Each subcase satisfies an exact identity linking
                // D = delta_-1 - delta_+1 with A = Im[eL,u], B = Im[eR,u]; the
                // identities partition the (A, B, D) space.
                const double eL = L.reals[0], eR = L.reals[1];
                const double A = ev.im_len(cplx(eL, 0), u);
                const double B = ev.im_len(cplx(eR, 0), u);
                const double D = delta_m - delta_p;
                ev.record("Im[eL,e3]", A, "", 0);
                ev.record("Im[eR,e3]", B, "", 0);
                ev.record("delta_-1", delta_m, "", 0);
                ev.record("delta_+1", delta_p, "", 0);
                const int sA = ev.sign_banded(A), sB = ev.sign_banded(B);
                const int sD = ev.sign_banded(D);
                if (sA == 0 && sB == 0) return label("II", "4-c-beta", false);
                if (sA == 0 && sD != 0) return (sD > 0) ? label("II", "4-c-alpha", false)
                                                        : label("II", "4-a-gamma", true);
                if (sB == 0 && sD != 0) return (sD > 0) ? label("II", "4-a-gamma", false)
                                                        : label("II", "4-c-alpha", true);
                if (sA == 0 || sB == 0) return undet("II-4: degenerate (A or B zero with D zero)");
                // The identities hold to quadrature accuracy; a near-symmetric
                // point can sit inside the band of the other row, so compare
                // residual scales rather than testing each band in isolation.
                const double q_err = 1e-7 * (1.0 + delta_m + delta_p);
                const double d1 = std::abs(D - 2 * (A - B));  // a-alpha family
                const double d2 = std::abs(D - 2 * (B - A));  // b-alpha family
                const bool r1 = d1 <= std::max(q_err, 1e-3 * d2);
                const bool r2 = d2 <= std::max(q_err, 1e-3 * d1);
                if (r1 && r2) {
                    // Balanced heights (A = B, D = 0): separate the five-strip
                    // configuration from the ring one by the position of the
                    // complex pair relative to the middle strip's upper side:
                    // 2 Im[x0, u] equals delta_-1 - 2A when u lies on that
                    // side, delta_-1 + 2A when the ring intervenes.
                    double G0 = 2.0 * ev.im_len(cplx(0.0, 0.0), u);
                    double e_aa = std::abs(delta_m - G0 - 2 * A);
                    double e_bb = std::abs(delta_m - G0 + 2 * A);
                    ev.record("II-4 balanced tiebreak 2Im[0,u]", G0, "vs delta_-1 -+ 2A",
                              std::min(e_aa, e_bb));
                    return (e_aa < e_bb) ? label("II", "4-a-alpha", false)
                                         : label("II", "4-b-beta", false);
                }
                if (std::abs(D - 2 * (A + B)) <= eq_band) return label("II", "4-a-beta", false);
                if (std::abs(D + 2 * (A + B)) <= eq_band) return label("II", "4-a-beta", true);
                if (r1) return label("II", "4-a-alpha", false);
                if (r2) return (sD > 0) ? label("II", "4-b-alpha", false)
                                        : label("II", "4-b-alpha", true);
                if (d1 <= eq_band) return label("II", "4-a-alpha", false);
                if (d2 <= eq_band)
                    return (sD > 0) ? label("II", "4-b-alpha", false)
                                    : label("II", "4-b-alpha", true);
                return undet("II-4: no height identity holds within the band");
            }
            return undet("family II: unrecognized zero layout");
        }

        if (L.n_real == 4) {
            auto pat = std::array<int, 3>{L.nL, L.nC, L.nR};
            if (pat == std::array<int, 3>{3, 0, 1} || pat == std::array<int, 3>{1, 0, 3}) {
                const bool m = (L.nR == 3);
                // s = Im Q-length of the orthogonal interval between the middle
                // zeros of the triple.
                const double s = m ? ev.im_len(cplx(L.reals[1], 0), cplx(L.reals[2], 0))
                                   : ev.im_len(cplx(L.reals[1], 0), cplx(L.reals[2], 0));
                const double dn = m ? delta_p : delta_m;  // pole next to the triple
                const double df = m ? delta_m : delta_p;  // pole away from the triple
                ev.record("2 Im[e2,e3]", 2 * s, "", 0);
                ev.record("delta_near", dn, "", 0);
                ev.record("delta_far", df, "", 0);
                if (std::abs(df - dn) <= eq_band) return label("III", "4-c", m);
                if (std::abs(df - dn - 2 * s) <= eq_band) return label("III", "4-a-gamma", m);
                if (df < dn - eq_band) return label("III", "4-b", m);
                if (dn + 2 * s < df - eq_band) return label("III", "4-a-alpha", m);
                if (dn < df - eq_band && df < dn + 2 * s - eq_band)
                    return label("III", "4-a-beta", m);
                return undet("III-4: no row matched");
            }
            if (pat == std::array<int, 3>{2, 2, 0} || pat == std::array<int, 3>{0, 2, 2}) {
                const bool m = (L.nR == 2);
                const double e2 = m ? L.reals[2] : L.reals[1];  // inner zero of the outer pair
                const double e3 = m ? L.reals[1] : L.reals[2];  // near middle zero
                const double pole = m ? +1.0 : -1.0;
                double l = ev.limit(
                    [&](double eps) {
                        return ev.im_len(cplx(e2, 0), cplx(pole + (m ? eps : -eps), 0))
                             - ev.im_len(cplx(pole + (m ? -eps : eps), 0), cplx(e3, 0));
                    },
                    "III-6 limit");
                int sgn = ev.sign_banded(l);
                if (sgn < 0) return label("III", "6-a", m);
                if (sgn > 0) return label("III", "6-b", m);
                return label("III", "6-c", m);
            }
            if (pat == std::array<int, 3>{2, 0, 2}) {
                // As in II-2, the two pole limits coincide in magnitude (one
                // width W); W < 0 separates the nested-loop case (a), W > 0
                // the ring case (b), oriented by the signed-germ version.
                const double eIL = L.reals[1], eIR = L.reals[2];
                double w_abs = ev.limit(
                    [&](double eps) {
                        cplx b(-1.0, eps);
                        return ev.im_len(cplx(eIL, 0), b) - ev.im_len(cplx(eIR, 0), b);
                    },
                    "III-7 limit at -1");
                ev.record("delta_-1 vs delta_+1", delta_m - delta_p,
                          "> 0 when the far pair wraps the pole -1", 0);
                int s = ev.sign_banded(w_abs);
                if (s < 0) return label("III", "7-a", false);
                // In the ring case the wrapped pole carries the longer loop.
                if (s > 0) return label("III", "7-b", delta_m < delta_p);
                return label("III", "7-c", false, false);
            }
            if (pat == std::array<int, 3>{2, 1, 1} || pat == std::array<int, 3>{1, 1, 2}) {
                const bool m = (L.nL == 1);
                const double inner = m ? L.reals[2] : L.reals[1];  // inner zero of the pair
                const double mid = m ? L.reals[1] : L.reals[2];    // zero between the poles
                const double pole = m ? +1.0 : -1.0;
                const double d_far = m ? delta_m : delta_p;
                double m1 = ev.limit(
                    [&](double eps) {
                        cplx b(pole, eps);
                        return ev.im_len(cplx(inner, 0), b) - ev.im_len(cplx(mid, 0), b);
                    },
                    "III-8 limit");
                int s1 = ev.sign_banded(m1);
                if (s1 < 0) return label("III", "8-a", m);
                if (s1 == 0) return label("III", "8-c", m);
                double t = 2.0 * ev.im_chain({cplx(inner, 0), cplx(0, 1), cplx(mid, 0)});
                ev.record("2 Im([e2,i]+[i,e3])", t, "vs delta of the far pole", t - d_far);
                if (t < d_far - eq_band) return label("III", "8-b-alpha", m);
                if (t > d_far + eq_band) return label("III", "8-b-beta", m);
                return label("III", "8-b-gamma", m);
            }
            return undet("family III: unrecognized zero layout");
        }
    } catch (const SingularPathError& e) {
        res.status = AnalyticStatus::Failed;
        rep.note = std::string("q_length path failure: ") + e.what();
        return res;
    }

    res.status = AnalyticStatus::NotImplemented;
    rep.note = "no predicate set for this zero layout";
    return res;
}

// ---------------------------------------------------------------------------
// cross_validate
// ---------------------------------------------------------------------------
struct CrossValidation {
    enum class Verdict { Agree, Disagree, AnalyticUndetermined, AnalyticNotImplemented,
                         AnalyticFailed, GeometricUnclassified };
    Verdict verdict = Verdict::AnalyticNotImplemented;
    CaseLabel geometric;
    CaseLabel analytic;
    std::string detail;
};

inline const char* to_string(CrossValidation::Verdict v) {
    using V = CrossValidation::Verdict;
    switch (v) {
        case V::Agree: return "agree";
        case V::Disagree: return "disagree";
        case V::AnalyticUndetermined: return "analytic-undetermined";
        case V::AnalyticNotImplemented: return "analytic-not-implemented";
        case V::AnalyticFailed: return "analytic-failed";
        case V::GeometricUnclassified: return "geometric-unclassified";
    }
    return "?";
}

inline CrossValidation cross_validate(const CaseLabel& geom, const AnalyticResult& analytic) {
    CrossValidation cv;
    cv.geometric = geom;
    cv.analytic = analytic.label;
    if (!geom.ok) {
        cv.verdict = CrossValidation::Verdict::GeometricUnclassified;
        cv.detail = geom.note;
        return cv;
    }
    switch (analytic.status) {
        case AnalyticStatus::Undetermined:
            cv.verdict = CrossValidation::Verdict::AnalyticUndetermined;
            cv.detail = analytic.report.note;
            return cv;
        case AnalyticStatus::NotImplemented:
            cv.verdict = CrossValidation::Verdict::AnalyticNotImplemented;
            return cv;
        case AnalyticStatus::Failed:
            cv.verdict = CrossValidation::Verdict::AnalyticFailed;
            cv.detail = analytic.report.note;
            return cv;
        case AnalyticStatus::Label: break;
    }
    bool base = geom.same_base(analytic.label);
    bool mirror_ok = !analytic.label.mirror_resolved || geom.mirror == analytic.label.mirror;
    cv.verdict = (base && mirror_ok) ? CrossValidation::Verdict::Agree
                                     : CrossValidation::Verdict::Disagree;
    if (cv.verdict == CrossValidation::Verdict::Disagree)
        cv.detail = "geometric " + geom.str() + " vs analytic " + analytic.label.str();
    return cv;
}

} // namespace stokes

#endif
