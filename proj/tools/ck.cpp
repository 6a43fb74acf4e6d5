// Command-line driver: verification suites, kernels, space dimensions and
// Fischer decompositions.
//
// Exit codes: 0 success, 1 a check or decomposition failed, 2 usage or
// parameter error, 3 input parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ck/suites.hpp"

using namespace ck;
using json = nlohmann::ordered_json;

namespace {

constexpr int kFail = 1, kUsage = 2, kParse = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_range(const char* name, int v, int lo, int hi) {
    if (v < lo || v > hi)
        throw UsageError(std::string("--") + name + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                         std::to_string(v));
}

json poly_json(const CliffPoly& p) {
    const Roster& r = p.roster();
    json terms = json::array();
    for (const auto& t : p.terms()) {
        std::string mono;
        for (int v = 0; v < r.nvars(); ++v) {
            int e = mono::exp(t.mono, v);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += r.var_name(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string blade = blade_str(t.blade, r.m);
        terms.push_back({{"blade", blade.empty() ? "1" : blade}, {"monomial", mono.empty() ? "1" : mono}, {"coef", t.c.str()}});
    }
    return terms;
}

std::string chart_name(Chart c) { return c == Chart::Real ? "real" : "complex"; }

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, const Grid& g, const std::string& format, bool verbose, int workers) {
    std::vector<std::string> suites;
    if (suite == "all")
        suites = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end())
        suites = {suite};
    else
        throw UsageError("unknown suite: " + suite);
    if (suite != "all") validate_grid(suite, g);

    std::size_t total_fail = 0;
    json out = json::array();
    for (const auto& s : suites) {
        Grid gs = g;
        if (suite == "all") {
            try {
                validate_grid(s, g);
            } catch (const std::invalid_argument&) {
                gs = {};  // an override outside this suite's range keeps its default grid
            }
        }
        Report r = run_suite(s, gs, workers);
        total_fail += r.failures();
        std::cerr << s << ": " << r.checks.size() << " checks, " << r.failures() << " failures, " << r.seconds << " s\n";
        if (format == "json") {
            json checks = json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"id", c.id}, {"anchor", c.anchor}, {"params", c.params}, {"status", c.pass ? "pass" : "fail"},
                                  {"residual", c.residual}});
            out.push_back({{"suite", s}, {"checks_total", r.checks.size()}, {"failures", r.failures()}, {"checks", checks}});
            continue;
        }
        // text: per-identity summary, then every failing check
        std::map<std::string, std::pair<std::size_t, std::size_t>> by_id;
        std::vector<std::string> order;
        std::map<std::string, std::string> anchor_of;
        for (const auto& c : r.checks) {
            if (!by_id.count(c.id)) {
                order.push_back(c.id);
                anchor_of[c.id] = c.anchor;
            }
            auto& e = by_id[c.id];
            ++e.first;
            e.second += !c.pass;
        }
        std::cout << "suite " << s << ": " << r.checks.size() << " checks, " << r.failures() << " failures\n";
        for (const auto& id : order)
            std::cout << "  " << id << " [" << anchor_of[id] << "]: " << by_id[id].first << " checks, " << by_id[id].second
                      << " failures\n";
        for (const auto& c : r.checks)
            if (!c.pass || verbose)
                std::cout << "  " << (c.pass ? "PASS " : "FAIL ") << c.id << " [" << c.anchor << "] " << c.params
                          << (c.residual.empty() ? "" : ": " + c.residual) << "\n";
    }
    if (format == "json") std::cout << json{{"suites", out}, {"failures", total_fail}}.dump(2) << "\n";
    else std::cout << (total_fail ? "FAILED: " + std::to_string(total_fail) + " checks" : std::string("all checks passed")) << "\n";
    return total_fail ? kFail : 0;
}

// ---------------------------------------------------------------------------
// kernel

struct KernelArgs {
    std::string kind, route = "closed", chart = "real", format = "text";
    int k = 1, m = 3, p = 1, q = 0, n = 2;
    bool trace = false;
};

int cmd_kernel(const KernelArgs& a) {
    bool hermitian = a.kind == "koornwinder" || a.kind == "hermitian" || a.kind == "fischer-complex";
    if (a.chart != "real" && a.chart != "complex") throw UsageError("--chart must be real or complex");
    if (a.route != "closed" && a.route != "operational") throw UsageError("--route must be closed or operational");
    if (a.trace && a.kind != "hermitian") throw UsageError("--trace applies to the hermitian kernel only");
    if (!hermitian && a.chart == "complex") throw UsageError("Euclidean kernels live in the real chart");

    KernelPoly kp;
    json params;
    std::vector<std::pair<std::string, CliffPoly>> stages;
    std::vector<int> poles;
    if (a.kind == "zonal" || a.kind == "fischer" || a.kind == "monogenic") {
        require_range("m", a.m, a.kind == "monogenic" ? 3 : (a.kind == "zonal" ? 2 : 1), 6);
        require_range("k", a.k, 0, 8);
        params = {{"kind", a.kind}, {"k", a.k}, {"m", a.m}};
        if (a.kind == "zonal") kp = zonal_harmonic(a.k, a.m);
        else if (a.kind == "fischer") kp = fischer_kernel(a.k, a.m);
        else {
            require_range("k", a.k, 0, 6);
            kp = a.route == "closed" ? monogenic_kernel_closed(a.k, a.m) : monogenic_kernel_operational(a.k, a.m);
            params["route"] = a.route;
        }
    } else if (hermitian) {
        require_range("n", a.n, a.kind == "fischer-complex" ? 1 : 2, 3);
        require_range("p", a.p, 0, 4);
        require_range("q", a.q, 0, 4);
        params = {{"kind", a.kind}, {"p", a.p}, {"q", a.q}, {"n", a.n}};
        if (a.kind == "koornwinder") kp = koornwinder_kernel(a.p, a.q, a.n);
        else if (a.kind == "fischer-complex") kp = fischer_kernel_complex(a.p, a.q, a.n);
        else {
            HermitianForms f(a.n);
            poles = normalization_dpq(a.p, a.q, a.n).pole_nodes;
            if (a.trace) {
                HermitianTrace t = hermitian_trace(a.p, a.q, a.n, &f);
                stages = {{"K_{p+1,q+1}", t.harmonic},
                          {"dz K", t.stage1},
                          {"dz^dagger dz K", t.stage2},
                          {"(dz^dagger dz K) du^dagger", t.stage3},
                          {"(dz^dagger dz K) du^dagger du", t.stage4}};
                if (a.p > a.q && a.q >= 1) {
                    HermitianStages c = hermitian_stages_closed(a.p, a.q, f);
                    params["stages_match_closed_form"] = t.stage1 == c.stage1 && t.stage2 == c.stage2 && t.stage3 == c.stage3;
                }
            }
            kp = a.route == "closed" ? hermitian_kernel_closed(a.p, a.q, a.n, &f) : hermitian_kernel_operational(a.p, a.q, a.n, &f);
            params["route"] = a.route;
            params["pole_nodes"] = poles;
        }
    } else {
        throw UsageError("unknown kernel kind: " + a.kind);
    }
    Chart target = a.chart == "real" ? Chart::Real : Chart::Complex;
    auto out = [&](const CliffPoly& p) { return hermitian ? convert(p, target) : p; };
    params["chart"] = chart_name(target);

    if (a.format == "json") {
        json j{{"params", params}, {"bidegree", {kp.deg_a, kp.deg_b}}, {"terms", poly_json(out(kp.poly))}};
        if (!stages.empty()) {
            json st = json::array();
            for (const auto& [label, p] : stages) st.push_back({{"stage", label}, {"terms", poly_json(out(p))}});
            j["stages"] = st;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [label, p] : stages) std::cout << label << ": " << out(p).str() << "\n";
        if (params.contains("stages_match_closed_form"))
            std::cout << "stages match closed form: " << (params["stages_match_closed_form"].get<bool>() ? "yes" : "no") << "\n";
        if (!poles.empty()) {
            std::cerr << "note: pole nodes dropped from d(beta):";
            for (int j : poles) std::cerr << " " << j;
            std::cerr << "\n";
        }
        std::cout << (stages.empty() ? "" : "kernel: ") << out(kp.poly).str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// dims

struct DimsArgs {
    std::string space, format = "text";
    int m = 3, k = 0, n = 2, p = 0, q = 0, j = 0;
    bool clifford = false, elements = false;
};

SpaceDesc make_desc(const DimsArgs& a) {
    static const std::map<std::string, Space> kinds{{"P", Space::P},     {"H", Space::H},     {"M", Space::M},
                                                    {"Ppq", Space::Ppq}, {"Hpq", Space::Hpq}, {"Pj", Space::Pj},
                                                    {"Hj", Space::Hj},   {"Mj", Space::Mj}};
    auto it = kinds.find(a.space);
    if (it == kinds.end()) throw UsageError("unknown space: " + a.space + " (P, H, M, Ppq, Hpq, Pj, Hj, Mj)");
    SpaceDesc d;
    d.kind = it->second;
    if (d.euclidean()) {
        require_range("m", a.m, 1, 8);
        require_range("k", a.k, 0, 8);
        d.m = a.m;
        d.k = a.k;
        d.clifford = a.clifford || d.kind == Space::M;
    } else {
        require_range("n", a.n, 1, 4);
        require_range("p", a.p, 0, 6);
        require_range("q", a.q, 0, 6);
        d.n = a.n;
        d.p = a.p;
        d.q = a.q;
        if (d.spinor()) {
            require_range("j", a.j, 0, a.n);
            d.j = a.j;
        }
    }
    return d;
}

int cmd_dims(const DimsArgs& a) {
    SpaceDesc d = make_desc(a);
    auto b = basis(d);
    if (a.format == "json") {
        json params = d.euclidean() ? json{{"m", d.m}, {"k", d.k}, {"clifford", d.clifford}}
                                    : json{{"n", d.n}, {"p", d.p}, {"q", d.q}};
        if (d.spinor()) params["j"] = d.j;
        json j{{"space", space_name(d.kind)}, {"params", params}, {"dim", b->dim()}};
        if (a.elements) {
            json el = json::array();
            for (const auto& e : b->elements) el.push_back(e.str());
            j["elements"] = el;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << b->dim() << "\n";
        if (a.elements)
            for (const auto& e : b->elements) std::cout << e.str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
    std::string poly, file, mode = "harmonic", weight = "harmonic", format = "text";
    int m = 0, n = 0, p = -1, q = -1, j = -1;
};

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads the input, joining lines with spaces; parse errors are mapped back to line:column.
CliffPoly read_poly(const DecomposeArgs& a, const Roster& r) {
    std::string text;
    std::vector<std::size_t> line_start{0};
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw UsageError("cannot open " + a.file);
        std::string line;
        while (std::getline(in, line)) {
            text += line + " ";
            line_start.push_back(text.size());
        }
    } else {
        text = a.poly;
    }
    try {
        return CliffPoly::parse(r, text);
    } catch (const ParseError& e) {
        std::size_t col = e.column();
        std::size_t ln = std::upper_bound(line_start.begin(), line_start.end(), col) - line_start.begin();
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw ParseFailure("parse error at line " + std::to_string(ln) + ", column " + std::to_string(col - line_start[ln - 1] + 1) +
                           ": " + msg);
    }
}

int cmd_decompose(const DecomposeArgs& a) {
    if (a.poly.empty() == a.file.empty()) throw UsageError("give exactly one of --poly and --file");
    if ((a.m > 0) == (a.n > 0)) throw UsageError("give --m for a Euclidean input or --n for a Hermitian input");
    Decomposition dec;
    CliffPoly input;
    json params;
    if (a.m > 0) {
        require_range("m", a.m, 1, 8);
        if (a.mode != "harmonic" && a.mode != "monogenic") throw UsageError("--mode must be harmonic or monogenic");
        input = read_poly(a, Roster{a.m, 1, Chart::Real});
        dec = fischer_decompose_euclidean(input, a.mode == "harmonic" ? FischerMode::Harmonic : FischerMode::Monogenic);
        params = {{"m", a.m}, {"mode", a.mode}};
    } else {
        require_range("n", a.n, 1, 3);
        if (a.weight != "harmonic" && a.weight != "printed") throw UsageError("--weight must be harmonic or printed");
        Roster r{2 * a.n, 1, Chart::Complex};
        input = read_poly(a, r);
        int p = a.p, q = a.q, j = a.j;
        // infer the bidegree and the sector when not given
        if (p < 0 || q < 0) {
            if (input.is_zero()) throw UsageError("give --p and --q for a zero input");
            auto bd = input.slot_bidegree(input.terms().front().mono, 0);
            for (const auto& t : input.terms())
                if (input.slot_bidegree(t.mono, 0) != bd) throw UsageError("input is not bihomogeneous");
            p = bd.first;
            q = bd.second;
        }
        if (j < 0) {
            for (int jj = 0; jj <= a.n && j < 0; ++jj)
                if (SectorTest(a.n, jj).contains(input)) j = jj;
            if (j < 0) throw UsageError("input is not valued in a single spinor sector; give --j");
        }
        require_range("j", j, 0, a.n);
        HermitianWeight w = a.weight == "harmonic" ? hermitian_weight_harmonic(a.n, p, q, j) : hermitian_weight_literal(a.n, p, q, j);
        dec = fischer_decompose_hermitian(input, a.n, p, q, j, w);
        params = {{"n", a.n}, {"p", p}, {"q", q}, {"j", j}, {"weight", a.weight}};
    }
    bool reassembles = dec.consistent && dec.sum(input.roster()) == input;
    if (a.format == "json") {
        json parts = json::array();
        for (std::size_t i = 0; i < dec.parts.size(); ++i)
            parts.push_back({{"label", dec.labels[i]}, {"part", dec.parts[i].str()}, {"factor", dec.factors[i].str()}});
        std::cout << json{{"params", params},         {"input", input.str()},        {"consistent", dec.consistent},
                          {"unique", dec.unique},     {"reassembles", reassembles},  {"parts", parts},
                          {"notes", dec.notes}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "input: " << input.str() << "\n";
        if (!dec.consistent) std::cout << "input is not in the span of the summands\n";
        for (std::size_t i = 0; i < dec.parts.size(); ++i) {
            std::cout << dec.labels[i] << ": " << dec.parts[i].str() << "\n";
            if (dec.factors[i] != dec.parts[i]) std::cout << "  factor: " << dec.factors[i].str() << "\n";
        }
        std::cout << "unique: " << (dec.unique ? "yes" : "no") << "\n";
        for (const auto& note : dec.notes) std::cout << "note: " << note << "\n";
    }
    return reassembles ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of reproducing kernels and Fischer decompositions in Clifford analysis"};
    app.require_subcommand(1);
    std::vector<std::string> formats{"text", "json"};

    std::string suite = "all", vformat = "text";
    Grid grid;
    bool verbose = false;
    int workers = workers_from_env();
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "all or one of: orthopoly algebra operators duality kernels-euclidean kernels-hermitian normalization decompositions");
    verify->add_option("--m", grid.m, "largest real dimension");
    verify->add_option("--n", grid.n, "largest complex dimension (exact n for kernels-hermitian)");
    verify->add_option("--kmax", grid.kmax, "largest degree k");
    verify->add_option("--pmax", grid.pmax, "largest p");
    verify->add_option("--qmax", grid.qmax, "largest q");
    verify->add_option("--deg", grid.deg, "largest monomial degree for operator and duality sweeps");
    verify->add_option("--format", vformat)->check(CLI::IsMember(formats));
    verify->add_flag("--verbose", verbose, "list passing checks too");
    verify->add_option("--workers", workers, "worker threads (default CK_WORKERS or hardware)")->check(CLI::PositiveNumber);

    KernelArgs ka;
    auto* kernel = app.add_subcommand("kernel", "print a kernel");
    kernel->add_option("kind", ka.kind, "zonal | fischer | monogenic | koornwinder | fischer-complex | hermitian")->required();
    kernel->add_option("--k", ka.k);
    kernel->add_option("--m", ka.m);
    kernel->add_option("--p", ka.p);
    kernel->add_option("--q", ka.q);
    kernel->add_option("--n", ka.n);
    kernel->add_option("--route", ka.route, "closed | operational");
    kernel->add_option("--chart", ka.chart, "real | complex output coordinates for Hermitian kernels");
    kernel->add_flag("--trace", ka.trace, "print the Dirac stages of the hermitian kernel");
    kernel->add_option("--format", ka.format)->check(CLI::IsMember(formats));

    DimsArgs da;
    auto* dims = app.add_subcommand("dims", "dimension (and basis) of a polynomial space");
    dims->add_option("--space", da.space, "P | H | M | Ppq | Hpq | Pj | Hj | Mj")->required();
    dims->add_option("--m", da.m);
    dims->add_option("--k", da.k);
    dims->add_option("--n", da.n);
    dims->add_option("--p", da.p);
    dims->add_option("--q", da.q);
    dims->add_option("--j", da.j);
    dims->add_flag("--clifford", da.clifford, "tensor P or H with the Clifford algebra");
    dims->add_flag("--elements", da.elements, "print the basis");
    dims->add_option("--format", da.format)->check(CLI::IsMember(formats));

    DecomposeArgs de;
    auto* decompose = app.add_subcommand("decompose", "Fischer decomposition of a polynomial");
    decompose->add_option("--poly", de.poly, "polynomial text");
    decompose->add_option("--file", de.file, "file holding the polynomial text");
    decompose->add_option("--m", de.m, "real dimension (Euclidean input in x1..xm)");
    decompose->add_option("--n", de.n, "complex dimension (Hermitian input in z1..zn, zb1..zbn)");
    decompose->add_option("--mode", de.mode, "harmonic | monogenic");
    decompose->add_option("--p", de.p);
    decompose->add_option("--q", de.q);
    decompose->add_option("--j", de.j);
    decompose->add_option("--weight", de.weight, "harmonic | printed");
    decompose->add_option("--format", de.format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    try {
        if (*verify) return cmd_verify(suite, grid, vformat, verbose, workers);
        if (*kernel) return cmd_kernel(ka);
        if (*dims) return cmd_dims(da);
        if (*decompose) return cmd_decompose(de);
    } catch (const ParseFailure& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
