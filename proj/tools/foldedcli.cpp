#include "folded/approx.hpp"
#include "folded/axis.hpp"
#include "folded/decide.hpp"
#include "folded/fixtures.hpp"
#include "folded/json_io.hpp"
#include "folded/svg.hpp"
#include "folded/untangle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace folded;

namespace {

int exitAccepted = 0, exitRejected = 1, exitInvalid = 2, exitParse = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

Metric metric_of(const std::string& s) {
    if (s == "l2" || s == "L2") return Metric::L2;
    if (s == "linf" || s == "Linf" || s == "LINF") return Metric::Linf;
    throw CLI::ValidationError("--metric must be l2 or linf");
}

FoldedPolygon load_surface(const std::string& path, std::vector<std::string>* errs = nullptr) {
    RawSurface raw = parse_surface_document(read_file(path));
    ValidationResult v = validate(raw);
    if (!v.ok) {
        if (errs) *errs = v.violations;
        throw std::invalid_argument("surface " + path + " failed validation");
    }
    return *v.polygon;
}

struct ReportBuilder {
    JsonWriter w;
    bool timing = false;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void open(const std::string& command, const std::vector<std::string>& inputs,
              const std::string& metric, double eps, bool hasEps) {
        w.begin_object();
        w.key("command").value(command);
        w.key("inputs").begin_array();
        for (const auto& s : inputs) w.value(s);
        w.end_array();
        if (!metric.empty()) w.key("metric").value(metric);
        if (hasEps) w.key("epsilon").value(eps);
    }
    void diagnostics(const std::vector<std::string>& diag) {
        w.key("diagnostics").begin_array();
        for (const auto& d : diag) w.value(d);
        w.end_array();
    }
    std::string close() {
        if (timing) {
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            w.key("timing_ms").value(ms);
        }
        w.end_object();
        return w.str() + "\n";
    }
};

void write_mapping(JsonWriter& w, const MonotoneDiagonalMapping& map) {
    w.begin_object();
    w.key("offset").value(map.matching.offset);
    w.key("matching").begin_array();
    for (const auto& p : map.matching.pts) w.begin_array().value(p[0]).value(p[1]).end_array();
    w.end_array();
    w.key("diagonals").begin_array();
    for (const DiagonalWitness& d : map.witnesses) {
        w.begin_object();
        w.key("diag").value(d.placement.diag);
        w.key("u").begin_object();
        w.key("edge").value(d.placement.u.edge);
        w.key("t").value(d.placement.u.t);
        w.end_object();
        w.key("v").begin_object();
        w.key("edge").value(d.placement.v.edge);
        w.key("t").value(d.placement.v.t);
        w.end_object();
        w.key("edgeSeq").begin_array();
        for (int e : d.path.edgeSeq) w.value(e);
        w.end_array();
        w.key("tOnD").begin_array();
        for (double t : d.path.tOnD) w.value(t);
        w.end_array();
        w.key("sOnEdge").begin_array();
        for (double s : d.path.sOnEdge) w.value(s);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

void emit(const std::string& outPath, const std::string& text) {
    if (outPath.empty()) std::cout << text;
    else write_file(outPath, text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frechet distance for polygonal curves and folded polygons"};
    app.require_subcommand(1);

    std::string metricStr = "l2", outPath, outP, outQ, fixtureName;
    double epsilon = 0.0, tolerance = -1.0;
    bool hasEps = false, timing = false;
    std::uint64_t seed = 1;
    int faces = 4, rootEdge = 0;
    std::vector<std::string> files;

    auto addCommon = [&](CLI::App* c, int nfiles) {
        if (nfiles > 0) c->add_option("files", files)->expected(nfiles);
        c->add_option("--metric", metricStr, "l2 or linf");
        c->add_option("--out", outPath, "write the report here instead of stdout");
        c->add_flag("--timing", timing, "include timing in the report");
        c->add_option("--tolerance", tolerance, "override the feasibility tolerance");
        c->add_option("--seed", seed, "seed for randomized operations");
    };

    CLI::App* cValidate = app.add_subcommand("validate", "validate a surface document");
    addCommon(cValidate, 1);

    CLI::App* cCurves = app.add_subcommand("curves", "Frechet distance between two curves");
    addCommon(cCurves, 2);
    cCurves->add_option("--epsilon", epsilon)->each([&](const std::string&) { hasEps = true; });

    CLI::App* cDecide = app.add_subcommand("decide", "diagonal monotonicity test at epsilon");
    addCommon(cDecide, 2);
    cDecide->add_option("--epsilon", epsilon)->required()->each([&](const std::string&) { hasEps = true; });

    CLI::App* cApprox = app.add_subcommand("approx", "nine-approximation of the distance");
    addCommon(cApprox, 2);

    CLI::App* cFpt = app.add_subcommand("fpt", "exact decision/optimization (small subdivisions)");
    addCommon(cFpt, 2);
    cFpt->add_option("--epsilon", epsilon)->each([&](const std::string&) { hasEps = true; });

    CLI::App* cAxis = app.add_subcommand("axis", "exact distance for axis-parallel surfaces (linf)");
    addCommon(cAxis, 2);

    CLI::App* cUntangle = app.add_subcommand("untangle", "untangle feasibility per accepting class");
    addCommon(cUntangle, 2);
    cUntangle->add_option("--epsilon", epsilon)->required()->each([&](const std::string&) { hasEps = true; });
    cUntangle->add_option("--root", rootEdge, "root edge for the propagation cross-check");

    CLI::App* cRender = app.add_subcommand("render", "render a free-space diagram as SVG");
    addCommon(cRender, 2);
    cRender->add_option("--epsilon", epsilon)->required()->each([&](const std::string&) { hasEps = true; });

    CLI::App* cFixtures = app.add_subcommand("fixtures", "emit built-in surface fixtures");
    cFixtures->add_option("name", fixtureName, "appendixB|staircase|fan|randomFolded|slantedBump")
        ->required();
    cFixtures->add_option("--seed", seed);
    cFixtures->add_option("--faces", faces);
    cFixtures->add_option("--out-p", outP);
    cFixtures->add_option("--out-q", outQ);
    cFixtures->add_option("--out", outPath);

    CLI::App* cVerify = app.add_subcommand("verify", "re-verify a decide report from raw geometry");
    addCommon(cVerify, 3);

    CLI11_PARSE(app, argc, argv);

    try {
        Metric m = metric_of(metricStr);
        if (tolerance > 0) feas_tolerance() = tolerance;

        if (cValidate->parsed()) {
            ReportBuilder rb;
            rb.timing = timing;
            std::vector<std::string> errs;
            rb.open("validate", files, "", 0, false);
            try {
                RawSurface raw = parse_surface_document(read_file(files[0]));
                ValidationResult v = validate(raw);
                rb.w.key("result").begin_object();
                rb.w.key("valid").value(v.ok);
                if (v.ok) {
                    rb.w.key("faces").value((int)v.polygon->faces.size());
                    rb.w.key("interiorEdges").value((int)v.polygon->interiorEdges.size());
                    rb.w.key("boundaryVertices").value(v.polygon->boundary_size());
                }
                rb.w.end_object();
                rb.diagnostics(v.violations);
                emit(outPath, rb.close());
                return v.ok ? exitAccepted : exitInvalid;
            } catch (const std::runtime_error& e) {
                rb.w.key("result").begin_object().key("valid").value(false).end_object();
                rb.diagnostics({std::string("parse error: ") + e.what()});
                emit(outPath, rb.close());
                return exitParse;
            }
        }

        if (cCurves->parsed()) {
            PolyCurve f = parse_curve_document(read_file(files[0]));
            PolyCurve g = parse_curve_document(read_file(files[1]));
            ReportBuilder rb;
            rb.timing = timing;
            rb.open("curves", files, metricStr, epsilon, hasEps);
            rb.w.key("result").begin_object();
            bool accepted = true;
            if (hasEps) {
                accepted = frechet_decide(f, g, epsilon, m);
                rb.w.key("accepted").value(accepted);
            } else {
                rb.w.key("value").value(frechet_compute(f, g, m));
            }
            rb.w.end_object();
            rb.diagnostics({});
            emit(outPath, rb.close());
            return accepted ? exitAccepted : exitRejected;
        }

        if (cDecide->parsed() || cFpt->parsed() || cApprox->parsed() || cAxis->parsed() ||
            cUntangle->parsed() || cRender->parsed() || cVerify->parsed()) {
            // All of these need surfaces (verify: files[1], files[2]).
            size_t sOff = cVerify->parsed() ? 1 : 0;
            std::vector<std::string> errs;
            FoldedPolygon P, Q;
            try {
                P = load_surface(files[sOff + 0], &errs);
                Q = load_surface(files[sOff + 1], &errs);
            } catch (const std::invalid_argument& e) {
                ReportBuilder rb;
                rb.open("load", files, metricStr, 0, false);
                rb.w.key("result").begin_object().key("valid").value(false).end_object();
                errs.insert(errs.begin(), e.what());
                rb.diagnostics(errs);
                emit(outPath, rb.close());
                return exitInvalid;
            }

            if (cDecide->parsed()) {
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("decide", files, metricStr, epsilon, true);
                auto map = diagonal_monotonicity_test(P, Q, epsilon, m);
                rb.w.key("result").begin_object();
                rb.w.key("accepted").value(map.has_value());
                if (map) {
                    rb.w.key("witness");
                    write_mapping(rb.w, *map);
                }
                rb.w.end_object();
                rb.diagnostics({});
                emit(outPath, rb.close());
                return map ? exitAccepted : exitRejected;
            }
            if (cApprox->parsed()) {
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("approx", files, metricStr, 0, false);
                ApproxResult r = approx_compute(P, Q, m);
                rb.w.key("result").begin_object();
                rb.w.key("epsStar").value(r.epsStar);
                rb.w.key("lower").value(r.lower);
                rb.w.key("upper").value(r.upper);
                rb.w.key("swapped").value(r.swapped);
                if (r.witness) {
                    rb.w.key("witness");
                    write_mapping(rb.w, *r.witness);
                }
                rb.w.end_object();
                rb.diagnostics({});
                emit(outPath, rb.close());
                return exitAccepted;
            }
            if (cFpt->parsed()) {
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("fpt", files, metricStr, epsilon, hasEps);
                rb.w.key("result").begin_object();
                int code = exitAccepted;
                std::vector<std::string> diag;
                if (hasEps) {
                    FptResult r = fpt_decide(P, Q, epsilon, m);
                    rb.w.key("accepted").value(r.accepted);
                    rb.w.key("classesTried").value(r.classesTried);
                    if (r.indeterminate) diag.push_back("some classes were boundary-indeterminate");
                    if (r.witness && r.accepted) {
                        rb.w.key("witness");
                        write_mapping(rb.w, *r.witness);
                    }
                    code = r.accepted ? exitAccepted : exitRejected;
                } else {
                    rb.w.key("value").value(fpt_compute(P, Q, m));
                }
                rb.w.end_object();
                rb.diagnostics(diag);
                emit(outPath, rb.close());
                return code;
            }
            if (cAxis->parsed()) {
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("axis", files, "linf", 0, false);
                std::vector<std::string> diag;
                AxisParallelCertificate cp = is_axis_parallel(P), cq = is_axis_parallel(Q);
                if (!cp.pass || !cq.pass) {
                    rb.w.key("result").begin_object().key("certificate").value(false).end_object();
                    for (auto& o : cp.offending) diag.push_back("P: " + o);
                    for (auto& o : cq.offending) diag.push_back("Q: " + o);
                    rb.diagnostics(diag);
                    emit(outPath, rb.close());
                    return exitInvalid;
                }
                std::string note;
                double v = exact_axis_parallel(P, Q, &note);
                if (!note.empty()) diag.push_back(note);
                rb.w.key("result").begin_object();
                rb.w.key("certificate").value(true);
                rb.w.key("value").value(v);
                rb.w.end_object();
                rb.diagnostics(diag);
                emit(outPath, rb.close());
                return exitAccepted;
            }
            if (cUntangle->parsed()) {
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("untangle", files, metricStr, epsilon, true);
                auto maps = all_accepting_mappings(P, Q, epsilon, m);
                rb.w.key("result").begin_object();
                rb.w.key("acceptingClasses").value((int)maps.size());
                bool any = false, indet = false;
                rb.w.key("classes").begin_array();
                for (const auto& map : maps) {
                    FeasReport g = global_untangle_feasible(P, Q, map);
                    FeasReport t = propagate_edge_tree(
                        P, Q, map,
                        std::min(rootEdge, std::max(0, (int)Q.interiorEdges.size() - 1)));
                    rb.w.begin_object();
                    auto name = [](Feas f) {
                        return f == Feas::Feasible ? "feasible"
                               : f == Feas::Infeasible ? "infeasible" : "boundary-indeterminate";
                    };
                    rb.w.key("global").value(std::string(name(g.verdict)));
                    rb.w.key("propagation").value(std::string(name(t.verdict)));
                    if (!g.certificate.empty()) rb.w.key("certificate").value(g.certificate);
                    rb.w.end_object();
                    if (g.verdict == Feas::Feasible) any = true;
                    if (g.verdict == Feas::Indeterminate) indet = true;
                }
                rb.w.end_array();
                rb.w.key("untangleable").value(any);
                rb.w.end_object();
                rb.diagnostics(indet ? std::vector<std::string>{"boundary-indeterminate classes present"}
                                     : std::vector<std::string>{});
                emit(outPath, rb.close());
                return any ? exitAccepted : exitRejected;
            }
            if (cRender->parsed()) {
                std::string svg = render_surfaces_svg(P, Q, epsilon, m);
                emit(outPath, svg);
                return exitAccepted;
            }
            if (cVerify->parsed()) {
                nlohmann::json rep = nlohmann::json::parse(read_file(files[0]));
                double eps = rep.value("epsilon", 0.0);
                Metric rm = metric_of(rep.value("metric", std::string("l2")));
                ReportBuilder rb;
                rb.timing = timing;
                rb.open("verify", files, rep.value("metric", std::string("l2")), eps, true);
                bool ok = false;
                std::string why = "report carries no witness";
                if (rep.contains("result") && rep["result"].contains("witness")) {
                    const auto& w = rep["result"]["witness"];
                    MonotoneDiagonalMapping map;
                    map.eps = eps;
                    map.metric = rm;
                    map.matching.offset = w.value("offset", 0.0);
                    for (const auto& p : w["matching"])
                        map.matching.pts.push_back({p[0].get<double>(), p[1].get<double>()});
                    for (const auto& d : w["diagonals"]) {
                        DiagonalWitness dw;
                        dw.placement.diag = d["diag"].get<int>();
                        dw.placement.u = BoundaryPoint{d["u"]["edge"].get<int>(), d["u"]["t"].get<double>()};
                        dw.placement.v = BoundaryPoint{d["v"]["edge"].get<int>(), d["v"]["t"].get<double>()};
                        for (const auto& e : d["edgeSeq"]) dw.path.edgeSeq.push_back(e.get<int>());
                        for (const auto& t : d["tOnD"]) dw.path.tOnD.push_back(t.get<double>());
                        for (const auto& s : d["sOnEdge"]) dw.path.sOnEdge.push_back(s.get<double>());
                        dw.path.u = Q.boundary_point(dw.placement.u);
                        dw.path.v = Q.boundary_point(dw.placement.v);
                        dw.path.polyline.push_back(dw.path.u);
                        for (size_t i = 0; i < dw.path.edgeSeq.size(); ++i)
                            dw.path.polyline.push_back(
                                Q.interior_edge_segment(dw.path.edgeSeq[i]).at(dw.path.sOnEdge[i]));
                        dw.path.polyline.push_back(dw.path.v);
                        map.witnesses.push_back(dw);
                    }
                    ok = verify_mapping(P, Q, map, &why);
                }
                rb.w.key("result").begin_object().key("verified").value(ok).end_object();
                rb.diagnostics(ok ? std::vector<std::string>{} : std::vector<std::string>{why});
                emit(outPath, rb.close());
                return ok ? exitAccepted : exitRejected;
            }
        }

        if (cFixtures->parsed()) {
            if (fixtureName == "appendixB") {
                auto [P, Q] = appendix_b_pair();
                std::string sp = serialize_surface_document(P);
                std::string sq = serialize_surface_document(Q);
                if (!outP.empty()) write_file(outP, sp);
                if (!outQ.empty()) write_file(outQ, sq);
                if (outP.empty() && outQ.empty()) std::cout << sp << sq;
                return exitAccepted;
            }
            RawSurface s;
            if (fixtureName == "staircase") s = staircase_surface(faces);
            else if (fixtureName == "fan") s = fan_surface(faces);
            else if (fixtureName == "randomFolded") s = random_folded_surface(seed, faces);
            else if (fixtureName == "slantedBump") s = slanted_bump_surface();
            else {
                std::cerr << "unknown fixture: " << fixtureName << "\n";
                return exitInvalid;
            }
            emit(outPath, serialize_surface_document(s));
            return exitAccepted;
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitInvalid;
    }
    return exitAccepted;
}
