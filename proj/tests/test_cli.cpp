#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(STOKES_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string tmp(const char* name) { return std::string("cli_test_") + name; }

// Minimal structural schema validation: required keys with type tags.
bool validate(const json& schema, const json& doc, std::string* why) {
    for (auto it = schema.begin(); it != schema.end(); ++it) {
        const std::string& key = it.key();
        if (!doc.contains(key)) {
            *why = "missing key: " + key;
            return false;
        }
        const json& spec = it.value();
        const json& val = doc[key];
        if (spec.is_object()) {
            if (!val.is_object()) { *why = key + " should be an object"; return false; }
            if (!validate(spec, val, why)) return false;
        } else if (spec.is_string()) {
            std::string t = spec.get<std::string>();
            bool ok = (t == "number" && val.is_number()) || (t == "string" && val.is_string())
                   || (t == "bool" && val.is_boolean()) || (t == "array" && val.is_array())
                   || (t == "integer" && val.is_number_integer()) || t == "any";
            if (!ok) { *why = key + " should be " + t; return false; }
        }
    }
    return true;
}

} // namespace

TEST_CASE("classify: end-to-end JSON report with c3 = 1/g^2") {
    std::string out = tmp("classify.json");
    int rc = run("classify --delta 0 --energy 0.4 --gsq 1", out);
    CHECK(rc == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["coefficients"]["c3"] == 1.0);
    CHECK(doc.contains("case_geometric"));
    CHECK(doc["structure"]["euler_ok"] == true);
    json schema = json::parse(slurp(std::string(STOKES_TEST_DATA_DIR) + "/classify_schema.json"));
    std::string why;
    CHECK_MESSAGE(validate(schema, doc, &why), why);
    std::remove(out.c_str());
}

TEST_CASE("classify: depressed coefficients exit 3 and name P0(+-1)") {
    std::string out = tmp("depressed.json");
    int rc = run("classify --coeffs 0,0,0,-1", out);
    CHECK(rc == 3);
    json doc = json::parse(slurp(out));
    CHECK(doc.contains("error"));
    std::remove(out.c_str());
}

TEST_CASE("classify: the depressed parameter locus E = -g^2 + 1 exits 3") {
    std::string out = tmp("depressed2.json");
    int rc = run("classify --delta 0 --energy 0 --gsq 1", out);
    CHECK(rc == 3);
    std::remove(out.c_str());
}

TEST_CASE("classify: asymptotic source reports the region") {
    std::string out = tmp("asym.json");
    int rc = run("classify --asymptotic 2,1", out);
    CHECK(rc == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["asymptotic"]["region"] == "I4");
    CHECK(doc["case_geometric"]["label"] == "I-1");
    std::remove(out.c_str());
}

TEST_CASE("classify + render twice: byte-identical JSON and SVG") {
    std::string o1 = tmp("det1.json"), o2 = tmp("det2.json");
    std::string s1 = tmp("det1.svg"), s2 = tmp("det2.svg");
    CHECK(run("classify --delta 1 --energy -0.7 --gsq 0.9 --svg " + s1, o1) == 0);
    CHECK(run("classify --delta 1 --energy -0.7 --gsq 0.9 --svg " + s2, o2) == 0);
    CHECK(slurp(o1) == slurp(o2));
    std::string svg1 = slurp(s1), svg2 = slurp(s2);
    CHECK(!svg1.empty());
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") == 0);
    for (auto& f : {o1, o2, s1, s2}) std::remove(f.c_str());
}

TEST_CASE("render: SVG contains one path per traced edge plus poles and zeros") {
    std::string svg = tmp("render.svg");
    CHECK(run("render --asymptotic 2,1 --svg " + svg, tmp("render.json")) == 0);
    std::string body = slurp(svg);
    // I-1 has 7 edges; each edge is one stroked path with stroke #1a1a8c
    size_t count = 0, pos = 0;
    while ((pos = body.find("#1a1a8c", pos)) != std::string::npos) { ++count; ++pos; }
    CHECK(count == 7);
    CHECK(body.find("circle") != std::string::npos);
    std::remove(svg.c_str());
    std::remove(tmp("render.json").c_str());
}

TEST_CASE("sweep: 3x3 grid emits 9 rows in row-major order, thread invariant") {
    std::string o1 = tmp("sweep1.jsonl"), o8 = tmp("sweep8.jsonl");
    std::string grid = "sweep --gsq 1 --grid energy=-2:2:3,delta=0:2:3";
    CHECK(run(grid + " --threads 1", o1) == 0);
    CHECK(run(grid + " --threads 8", o8) == 0);
    std::string b1 = slurp(o1);
    CHECK(b1 == slurp(o8));
    int rows = 0;
    std::istringstream ss(b1);
    std::string line;
    double prev_energy = -1e300;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        ++rows;
        json row = json::parse(line);
        CHECK(row.contains("invariants"));
        double e = row["parameters"]["energy"].get<double>();
        CHECK(e >= prev_energy);  // row-major: energy is the slow axis
        prev_energy = e;
    }
    CHECK(rows == 9);
    std::remove(o1.c_str());
    std::remove(o8.c_str());
}

TEST_CASE("sweep across D0 = 0 reports a sign change between adjacent rows") {
    std::string out = tmp("sweepd0.jsonl");
    // sweep E across the I <-> III transition at fixed g^2=100, delta=100:
    // the asymptotic picture crosses region boundaries, so D0 changes sign.
    CHECK(run("sweep --gsq 100 --delta 100 --grid energy=-250:150:41", out) == 0);
    std::istringstream ss(slurp(out));
    std::string line;
    int sign_changes = 0;
    double prev = 0;
    bool first = true;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        json row = json::parse(line);
        double d0 = row["invariants"]["D0"].get<double>();
        if (!first && d0 * prev < 0) ++sign_changes;
        prev = d0;
        first = false;
    }
    CHECK(sign_changes >= 1);
    std::remove(out.c_str());
}

TEST_CASE("map: special configurations and parameter recovery") {
    std::string out = tmp("map.json");
    CHECK(run("map --special vertical-line:alpha=1,beta1=3", out) == 0);
    json doc = json::parse(slurp(out));
    CHECK(doc["feasible"] == true);
    CHECK(doc["beta2"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["parameters"]["g_sq"].get<double>() == doctest::Approx(-0.25));

    CHECK(run("map --special two-rays:theta1=0.7", out) == 0);
    doc = json::parse(slurp(out));
    CHECK(doc["feasible"] == false);
    CHECK(doc["witness"].get<double>() < 0.0);

    CHECK(run("map --coeffs 1,0.75,-2.5,-0.25", out) == 0);
    doc = json::parse(slurp(out));
    CHECK(doc["feasible"] == true);
    CHECK(doc["parameters"]["energy"].get<double>() == doctest::Approx(0.0));
    std::remove(out.c_str());
}

TEST_CASE("tolerance overrides are accepted and tighten the depressed refusal") {
    std::string out = tmp("tol.json");
    // P0(1) ~ 0.02 at this point; a loose pole tolerance refuses it.
    CHECK(run("classify --delta 0 --energy 0.01 --gsq 1", out) == 0);
    CHECK(run("classify --delta 0 --energy 0.01 --gsq 1 --tol-pole 0.01", out) == 3);
    std::remove(out.c_str());
}

TEST_CASE("empty asymptotic graph renders axes and poles only") {
    std::string svgf = tmp("empty.svg"), outf = tmp("empty.json");
    int rc = run("classify --asymptotic -1,0 --svg " + svgf, outf);
    CHECK(rc == 0);
    std::string svg = slurp(svgf);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("circle") == std::string::npos);  // no zeros drawn
    CHECK(svg.find("#c02020") != std::string::npos); // pole crosses present
    json doc = json::parse(slurp(outf));
    CHECK(doc["faces"] == 1);
    std::remove(svgf.c_str());
    std::remove(outf.c_str());
}

TEST_CASE("STOKES_RABI_THREADS environment override keeps output identical") {
    std::string o1 = tmp("env1.jsonl"), o2 = tmp("env2.jsonl");
    std::string base = std::string(STOKES_CLI_PATH)
                     + " sweep --gsq 1.1 --grid energy=-1:1:4,delta=0:1:3 --out ";
    CHECK(WEXITSTATUS(std::system(("STOKES_RABI_THREADS=1 " + base + o1).c_str())) == 0);
    CHECK(WEXITSTATUS(std::system(("STOKES_RABI_THREADS=7 " + base + o2).c_str())) == 0);
    CHECK(slurp(o1) == slurp(o2));
    CHECK(!slurp(o1).empty());
    std::remove(o1.c_str());
    std::remove(o2.c_str());
}

TEST_CASE("sweep over the asymptotic plane recovers the region partition") {
    std::string out = tmp("asweep.jsonl");
    CHECK(run("sweep --grid Da=0.2:3:8,Ea=-4:3:8", out) == 0);
    std::istringstream ss(slurp(out));
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        json row = json::parse(line);
        ++rows;
        std::string region = row["region"];
        std::string rc = row["root_class"];
        if (region == "I4") CHECK(rc == "FourComplex");
        if (region == "C4") CHECK(rc == "FourComplex");
        if (region == "IR") CHECK(rc == "TwoRealTwoComplex");
        if (region == "R4") CHECK(rc == "FourReal");
    }
    CHECK(rows == 64);
    std::remove(out.c_str());
}
