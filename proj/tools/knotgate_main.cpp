#include "CLI11.hpp"

#include "knotgate/diagram.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/holonomy.hpp"
#include "knotgate/jsonio.hpp"
#include "knotgate/linkgate.hpp"
#include "knotgate/tolerances.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace knotgate;

namespace {

const double kPi = std::acos(-1.0);

// --- input helpers ---------------------------------------------------------

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
    const std::string s = strip(text);
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + text + "'");
    }
    if (pos != s.size()) throw ValidationError("trailing characters in number: '" + text + "'");
    return v;
}

// radians, or pi fractions like "pi", "-pi", "7pi/10", "0.5pi"
double parse_angle(const std::string& text) {
    const std::string s = strip(text);
    const size_t p = s.find("pi");
    if (p == std::string::npos) return parse_number(s);
    const std::string prefix = s.substr(0, p);
    const std::string suffix = s.substr(p + 2);
    double coef = 1.0;
    if (prefix == "-")
        coef = -1.0;
    else if (!prefix.empty() && prefix != "+")
        coef = parse_number(prefix);
    double denom = 1.0;
    if (!suffix.empty()) {
        if (suffix[0] != '/')
            throw ValidationError("malformed angle: '" + text + "' (expected pi or pi/N)");
        denom = parse_number(suffix.substr(1));
        if (denom == 0.0) throw ValidationError("zero denominator in angle: '" + text + "'");
    }
    return coef * kPi / denom;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<double>> parse_points_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_number(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- output helpers --------------------------------------------------------

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_complex(const cplx& z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string fmt_mat2(const Mat2& m) {
    std::ostringstream o;
    o << "[[" << fmt_complex(m.at(0, 0)) << ", " << fmt_complex(m.at(0, 1)) << "], ["
      << fmt_complex(m.at(1, 0)) << ", " << fmt_complex(m.at(1, 1)) << "]]";
    return o.str();
}

std::string fmt_mat4_rows(const Mat4& m, const std::string& indent) {
    std::ostringstream o;
    for (int r = 0; r < 4; ++r) {
        o << indent << "[";
        for (int c = 0; c < 4; ++c) o << (c ? ", " : "") << fmt_complex(m.at(r, c));
        o << "]\n";
    }
    return o.str();
}

std::string fmt_presentation(const Presentation& p) {
    std::ostringstream o;
    o << "<";
    for (size_t i = 0; i < p.generators.size(); ++i) o << (i ? ", " : "") << p.generators[i];
    o << " | ";
    for (size_t i = 0; i < p.relators.size(); ++i) o << (i ? ", " : "") << format_word(p.relators[i]);
    o << ">";
    return o.str();
}

std::string fmt_axis_angle(const Mat2& u) {
    const json aa = json_axis_angle(u);
    std::ostringstream o;
    o << "axis = [" << fmt_real(aa["axis"][0]) << ", " << fmt_real(aa["axis"][1]) << ", "
      << fmt_real(aa["axis"][2]) << "], angle = " << fmt_real(aa["angle"])
      << ", global phase = " << fmt_real(aa["global_phase"]);
    return o.str();
}

std::string fmt_rep(const Representation& rep) {
    std::ostringstream o;
    if (!rep.label.empty()) o << "label: " << rep.label << "\n";
    o << "presentation: " << fmt_presentation(rep.presentation) << "\n";
    for (size_t i = 0; i < rep.images.size(); ++i)
        o << rep.presentation.generators[i] << " = " << fmt_mat2(quat_to_su2(rep.images[i]))
          << "\n";
    o << "residual = " << fmt_real(rep.residual) << "\n";
    return o.str();
}

void emit(bool json_mode, const std::string& command, const json& inputs, const json& result,
          const std::string& human) {
    if (json_mode)
        std::cout << dump_json(envelope(command, inputs, result));
    else
        std::cout << human;
}

// --- shared construction ---------------------------------------------------

Representation rep_from_flags(const std::string& type, const std::string& theta_text,
                              bool negate_c, bool negate_s) {
    if (type == "fibonacci") return fibonacci_rep();
    if (type == "kl") {
        if (theta_text.empty())
            throw ValidationError("--type kl needs --theta (radians or pi fraction)");
        return kl_family(kl_params(parse_angle(theta_text), negate_c, negate_s));
    }
    throw ValidationError("UnknownRepType: '" + type + "' (expected fibonacci or kl)");
}

Mat2 parse_target(const std::string& value) {
    if (value == "identity") return Mat2::identity();
    if (value == "i") return quat_to_su2(Quaternion{0, 1, 0, 0});
    if (value == "j") return quat_to_su2(Quaternion{0, 0, 1, 0});
    if (value == "k") return quat_to_su2(Quaternion{0, 0, 0, 1});
    if (value.rfind("axis:", 0) == 0) {
        // axis:NX,NY,NZ:ANGLE builds exp(i angle/2 axis.sigma)
        const std::string body = value.substr(5);
        const size_t colon = body.rfind(':');
        if (colon == std::string::npos)
            throw ValidationError("axis target needs the form axis:NX,NY,NZ:ANGLE");
        std::vector<double> n;
        std::istringstream cells(body.substr(0, colon));
        std::string cell;
        while (std::getline(cells, cell, ',')) n.push_back(parse_number(cell));
        if (n.size() != 3) throw ValidationError("axis target needs three axis components");
        const double angle = parse_angle(body.substr(colon + 1));
        const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (norm < 1e-12) throw ValidationError("axis target needs a nonzero axis");
        const double h = std::sin(angle / 2.0);
        // quaternion components sit along i(sigma_z, sigma_y, sigma_x)
        return quat_to_su2(Quaternion{std::cos(angle / 2.0), n[2] / norm * h, n[1] / norm * h,
                                      n[0] / norm * h});
    }
    if (std::ifstream probe(value); probe) return mat2_from_json(parse_json(read_input(value)));
    if (!value.empty() && (value[0] == '[' || value[0] == '{'))
        return mat2_from_json(parse_json(value));
    throw ValidationError("unknown target preset or unreadable file: '" + value + "'");
}

// --- subcommand handlers ---------------------------------------------------

struct PresentArgs {
    std::string knot, pd_text, pd_file;
    bool reduce = false;
    bool json_mode = false;
};

void run_present(const PresentArgs& a) {
    const int sources = !a.knot.empty() + !a.pd_text.empty() + !a.pd_file.empty();
    if (sources != 1)
        throw ValidationError("present needs exactly one of --knot, --pd, --pd-file");
    PDCode pd;
    json inputs = json::object();
    if (!a.knot.empty()) {
        pd = catalog(a.knot).pd;
        inputs["knot"] = a.knot;
    } else {
        pd = parse_pd(!a.pd_text.empty() ? a.pd_text : read_input(a.pd_file));
        inputs["pd"] = serialize_pd(pd);
    }
    inputs["reduce"] = a.reduce;
    Presentation pres = wirtinger_presentation(pd);
    if (a.reduce) pres = reduce_presentation(pres);
    emit(a.json_mode, "present", inputs, json_presentation(pres), fmt_presentation(pres) + "\n");
}

struct RepArgs {
    std::string type, theta, input = "-";
    bool negate_c = false, negate_s = false, check = false, solve = false;
    int seeds = 10;
    bool json_mode = false;
};

void run_rep(const RepArgs& a) {
    if (a.solve == !a.type.empty())
        throw ValidationError("rep needs exactly one of --type or --solve");
    json inputs = json::object();
    Representation rep;
    if (a.solve) {
        if (a.seeds < 1) throw ValidationError("--seeds must be positive");
        rep = rep_solve_best(presentation_from_json(parse_json(read_input(a.input))), a.seeds);
        inputs["solve"] = true;
        inputs["seeds"] = a.seeds;
    } else {
        rep = rep_from_flags(a.type, a.theta, a.negate_c, a.negate_s);
        inputs["type"] = a.type;
        if (!a.theta.empty()) inputs["theta"] = a.theta;
        if (a.negate_c) inputs["negate_c"] = true;
        if (a.negate_s) inputs["negate_s"] = true;
    }
    inputs["check"] = a.check;
    if (a.check) {
        const double residual = verify(rep);
        if (!(residual <= 1e-12) && !is_valid(rep))
            throw NumericError("CheckFailed: residual " + std::to_string(residual) +
                               " exceeds tolerance");
    }
    emit(a.json_mode, "rep", inputs, json_representation(rep), fmt_rep(rep));
}

struct ModularArgs {
    std::string word;
    bool json_mode = false;
};

void run_modular(const ModularArgs& a) {
    const Word w = parse_word(a.word);
    const IMat2 m = modular_images(w);
    std::ostringstream human;
    human << "[[" << m.e[0] << ", " << m.e[1] << "], [" << m.e[2] << ", " << m.e[3] << "]]\n";
    emit(a.json_mode, "modular", json{{"word", a.word}},
         json{{"matrix", json_imat2(m)}, {"det", idet(m)}}, human.str());
}

struct HolonomyArgs {
    std::string word, rep = "fibonacci", theta;
    std::string loop, points, latitude = "pi/2", family = "spin";
    int refine = 1000;
    int band = -1;
    bool flatness = false;
    std::string delta = "1e-2";
    int grid = 5;
    bool json_mode = false;
};

HamiltonianFamily family_from_flags(const std::string& name) {
    if (name == "spin") return spin_family();
    throw ValidationError("UnknownFamily: '" + name + "' (expected spin)");
}

void run_holonomy(const HolonomyArgs& a) {
    const bool word_mode = !a.word.empty();
    const bool loop_mode = !a.loop.empty() || !a.points.empty();
    if (word_mode + loop_mode + a.flatness != 1)
        throw ValidationError(
            "holonomy needs exactly one mode: --word, --loop/--points, or --flatness");

    if (word_mode) {
        const Representation rep = rep_from_flags(a.rep, a.theta, false, false);
        const FlatConnection conn = connection_from_rep(rep);
        const Mat2 h = word_holonomy(conn, parse_word(a.word));
        json inputs{{"word", a.word}, {"rep", a.rep}};
        if (!a.theta.empty()) inputs["theta"] = a.theta;
        emit(a.json_mode, "holonomy", inputs,
             json{{"holonomy", json_mat2(h)}, {"axis_angle", json_axis_angle(h)}},
             fmt_mat2(h) + "\n" + fmt_axis_angle(h) + "\n");
        return;
    }

    const HamiltonianFamily fam = family_from_flags(a.family);

    if (a.flatness) {
        const double delta = parse_number(a.delta);
        if (a.grid < 1) throw ValidationError("--grid must be positive");
        json rows = json::array();
        std::ostringstream human;
        human << "theta, phi, flatness_residual (delta = " << fmt_real(delta) << ")\n";
        // chart band away from the poles where the gauge is smooth
        for (int i = 0; i < a.grid; ++i) {
            const double theta =
                0.35 + (1.25 - 0.35) * (a.grid == 1 ? 0.5 : double(i) / (a.grid - 1));
            for (int j = 0; j < a.grid; ++j) {
                const double phi = 2.0 * kPi * j / a.grid;
                const double res = flatness_residual(fam, {theta, phi}, delta);
                rows.push_back(json{{"theta", theta}, {"phi", phi}, {"residual", res}});
                human << fmt_real(theta) << ", " << fmt_real(phi) << ", " << fmt_real(res)
                      << "\n";
            }
        }
        emit(a.json_mode, "holonomy",
             json{{"flatness", true}, {"family", a.family}, {"delta", delta}, {"grid", a.grid}},
             json{{"rows", rows}}, human.str());
        return;
    }

    Loop loop;
    json inputs{{"family", a.family}};
    if (!a.loop.empty() && !a.points.empty())
        throw ValidationError("give either --loop or --points, not both");
    if (!a.loop.empty()) {
        if (a.loop == "equator")
            loop = equator_loop(a.refine);
        else if (a.loop == "latitude")
            loop = latitude_loop(parse_angle(a.latitude), a.refine);
        else
            throw ValidationError("UnknownLoop: '" + a.loop + "' (expected equator or latitude)");
        inputs["loop"] = a.loop;
        inputs["refine"] = a.refine;
        if (a.loop == "latitude") inputs["latitude"] = a.latitude;
    } else {
        loop = make_loop(parse_points_csv(read_input(a.points)));
        inputs["points"] = a.points;
    }

    const Mat2 t = loop_transport_full(fam, loop);
    json result{{"transport", json_mat2(t)}, {"axis_angle", json_axis_angle(t)}};
    std::ostringstream human;
    human << fmt_mat2(t) << "\n" << fmt_axis_angle(t) << "\n";
    if (a.band >= 0) {
        const cplx phase = loop_transport_abelian(fam, loop, a.band);
        inputs["band"] = a.band;
        result["band_phase"] = json_complex(phase);
        result["band_phase_arg"] = std::arg(phase);
        human << "band " << a.band << " phase = " << fmt_complex(phase)
              << " (arg = " << fmt_real(std::arg(phase)) << ")\n";
    }
    emit(a.json_mode, "holonomy", inputs, result, human.str());
}

struct LinkgateArgs {
    std::string link, time = "0", t_max = "pi";
    bool scan = false;
    int samples = 64;
    bool json_mode = false;
};

void run_linkgate(const LinkgateArgs& a) {
    if (a.link.empty()) throw ValidationError("linkgate needs --link");
    const LinkGateSpec spec = link_spec(a.link);
    const double t = parse_angle(a.time);
    const TwoQubitGate gate = evolve(spec, t);
    const double lambda = entangling_power(gate);

    json inputs{{"link", a.link}, {"time", a.time}};
    json result{{"over", spec.over_count},
                {"under", spec.under_count},
                {"hamiltonian", json_mat4(gate.hamiltonian)},
                {"time", gate.time},
                {"unitary", json_mat4(gate.unitary)},
                {"lambda_min", lambda}};

    std::ostringstream human;
    human << "link: " << spec.name << " (over = " << spec.over_count
          << ", under = " << spec.under_count << ")\n";
    human << "H =\n" << fmt_mat4_rows(gate.hamiltonian, "  ");
    human << "U(" << fmt_real(t) << ") =\n" << fmt_mat4_rows(gate.unitary, "  ");
    human << "lambda_min = " << fmt_real(lambda) << "\n";

    if (a.scan) {
        const double t_max = parse_angle(a.t_max);
        const auto scan = entangling_scan(spec, t_max, a.samples);
        inputs["scan"] = true;
        inputs["t_max"] = a.t_max;
        inputs["samples"] = a.samples;
        json rows = json::array();
        human << "t, lambda_min\n";
        for (const auto& [ti, li] : scan) {
            rows.push_back(json::array({ti, li}));
            human << fmt_real(ti) << ", " << fmt_real(li) << "\n";
        }
        result["scan"] = std::move(rows);
    }
    emit(a.json_mode, "linkgate", inputs, result, human.str());
}

struct CompileArgs {
    std::string rep = "fibonacci", theta, target;
    int max_len = 12;
    double eps = 0.2;
    bool coverage_mode = false;
    int samples = 200;
    std::uint64_t seed = 0;
    bool json_mode = false;
};

void run_compile(const CompileArgs& a) {
    const Representation rep = rep_from_flags(a.rep, a.theta, false, false);
    json inputs{{"rep", a.rep}};
    if (!a.theta.empty()) inputs["theta"] = a.theta;
    inputs["max_len"] = a.max_len;
    inputs["eps"] = a.eps;

    if (a.coverage_mode) {
        inputs["coverage"] = true;
        inputs["samples"] = a.samples;
        inputs["seed"] = a.seed;
        const CoverageReport report = coverage(rep, a.eps, a.max_len, a.samples, a.seed);
        std::ostringstream human;
        human << "covered fraction = " << fmt_real(report.covered_fraction) << " ("
              << report.sample_count << " samples, eps = " << fmt_real(report.epsilon)
              << ", max_len = " << report.max_len << ", seed = " << report.seed << ")\n";
        emit(a.json_mode, "compile", inputs, json_coverage(report), human.str());
        return;
    }

    if (a.target.empty()) throw ValidationError("compile needs --target-json or --coverage");
    inputs["target"] = a.target;
    const Mat2 target = parse_target(a.target);
    const CompileResult r = compile_word(rep, target, a.max_len, a.eps);
    std::ostringstream human;
    human << "word = " << (r.word.empty() ? "(empty)" : format_word(r.word))
          << " (length " << r.word.size() << ")\n";
    human << "dist = " << fmt_real(r.dist) << "\n";
    human << "explored = " << r.explored << "\n";
    human << "achieved = " << fmt_mat2(r.achieved) << "\n";
    human << fmt_axis_angle(r.achieved) << "\n";
    emit(a.json_mode, "compile", inputs, json_compile_result(r), human.str());
}

struct CharacterArgs {
    std::string knot, input;
    int seeds = 64;
    bool json_mode = false;
};

void run_character(const CharacterArgs& a) {
    if (a.knot.empty() == a.input.empty())
        throw ValidationError("character needs exactly one of --knot or --input");
    Presentation pres;
    json inputs = json::object();
    if (!a.knot.empty()) {
        pres = reduce_presentation(wirtinger_presentation(catalog(a.knot).pd));
        inputs["knot"] = a.knot;
    } else {
        pres = presentation_from_json(parse_json(read_input(a.input)));
        inputs["input"] = a.input;
    }
    inputs["seeds"] = a.seeds;
    if (a.seeds < 0) throw ValidationError("--seeds must be non-negative");
    const std::vector<CharacterPoint> pts = character_scan(pres, ScanGrid{a.seeds});
    emit(a.json_mode, "character", inputs, json_character_points(pts), character_csv(pts));
}

struct CatalogArgs {
    std::string name;
    bool json_mode = false;
};

json json_catalog_entry(const CatalogEntry& e) {
    json out{{"name", e.name},
             {"pd", serialize_pd(e.pd)},
             {"arcs", e.pd.arc_count},
             {"components", e.pd.num_components},
             {"crossings", e.pd.crossings.size()},
             {"expected_presentation", json_presentation(e.expected_presentation)}};
    if (e.crossing_counts)
        out["crossing_counts"] =
            json{{"over", e.crossing_counts->over}, {"under", e.crossing_counts->under}};
    return out;
}

void run_catalog(const CatalogArgs& a) {
    if (!a.name.empty()) {
        const CatalogEntry e = catalog(a.name);
        std::ostringstream human;
        human << e.name << ": " << e.pd.crossings.size() << " crossings, "
              << e.pd.num_components << " component(s)\n";
        human << "pd: " << serialize_pd(e.pd) << "\n";
        human << "expected: " << fmt_presentation(e.expected_presentation) << "\n";
        if (e.crossing_counts)
            human << "crossing counts: over = " << e.crossing_counts->over
                  << ", under = " << e.crossing_counts->under << "\n";
        emit(a.json_mode, "catalog", json{{"name", a.name}}, json_catalog_entry(e), human.str());
        return;
    }
    json entries = json::array();
    std::ostringstream human;
    for (const std::string& name : catalog_names()) {
        const CatalogEntry e = catalog(name);
        entries.push_back(json_catalog_entry(e));
        human << e.name << ": " << e.pd.crossings.size() << " crossings, "
              << e.pd.num_components << " component(s), expected "
              << fmt_presentation(e.expected_presentation) << "\n";
    }
    emit(a.json_mode, "catalog", json::object(), json{{"entries", entries}}, human.str());
}

int run(int argc, char** argv) {
    CLI::App app{"knot groups, SU(2) representations, holonomy, and two-qubit link gates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    PresentArgs present_args;
    auto* present = app.add_subcommand("present", "PD code to Wirtinger presentation");
    present->add_option("--knot", present_args.knot, "catalog diagram name");
    present->add_option("--pd", present_args.pd_text, "inline PD code text");
    present->add_option("--pd-file", present_args.pd_file, "PD code file ('-' for stdin)");
    present->add_flag("--reduce", present_args.reduce, "eliminate redundant generators");
    present->add_flag("--json", present_args.json_mode, "JSON output");

    RepArgs rep_args;
    auto* rep = app.add_subcommand("rep", "construct, verify, or solve SU(2) representations");
    rep->add_option("--type", rep_args.type, "named representation: fibonacci or kl");
    rep->add_option("--theta", rep_args.theta, "kl angle (radians or pi fraction)");
    rep->add_flag("--negate-c", rep_args.negate_c, "other sign branch for c");
    rep->add_flag("--negate-s", rep_args.negate_s, "other sign branch for s");
    rep->add_flag("--check", rep_args.check, "verify the relator residual");
    rep->add_flag("--solve", rep_args.solve, "solve for images from a presentation JSON");
    rep->add_option("--input", rep_args.input, "presentation JSON file ('-' for stdin)");
    rep->add_option("--seeds", rep_args.seeds, "solver restarts");
    rep->add_flag("--json", rep_args.json_mode, "JSON output");

    ModularArgs modular_args;
    auto* modular = app.add_subcommand("modular", "braid word to SL(2,Z) image");
    modular->add_option("--word", modular_args.word, "braid word over a, b")->required();
    modular->add_flag("--json", modular_args.json_mode, "JSON output");

    HolonomyArgs holonomy_args;
    auto* holonomy =
        app.add_subcommand("holonomy", "word holonomy, loop transport, and flatness scans");
    holonomy->add_option("--word", holonomy_args.word, "word for connection holonomy");
    holonomy->add_option("--rep", holonomy_args.rep, "connection source: fibonacci or kl");
    holonomy->add_option("--theta", holonomy_args.theta, "kl angle for --rep kl");
    holonomy->add_option("--loop", holonomy_args.loop, "parametric loop: equator or latitude");
    holonomy->add_option("--latitude", holonomy_args.latitude, "latitude angle");
    holonomy->add_option("--refine", holonomy_args.refine, "loop refinement");
    holonomy->add_option("--points", holonomy_args.points, "CSV loop points ('-' for stdin)");
    holonomy->add_option("--family", holonomy_args.family, "Hamiltonian family (spin)");
    holonomy->add_option("--band", holonomy_args.band, "also report this band's abelian phase");
    holonomy->add_flag("--flatness", holonomy_args.flatness, "scan curvature residuals");
    holonomy->add_option("--delta", holonomy_args.delta, "plaquette side for --flatness");
    holonomy->add_option("--grid", holonomy_args.grid, "grid size per axis for --flatness");
    holonomy->add_flag("--json", holonomy_args.json_mode, "JSON output");

    LinkgateArgs linkgate_args;
    auto* linkgate = app.add_subcommand("linkgate", "two-qubit gate of a 2-component link");
    linkgate->add_option("--link", linkgate_args.link, "catalog link name");
    linkgate->add_option("--time", linkgate_args.time, "evolution time (radians or pi fraction)");
    linkgate->add_flag("--scan", linkgate_args.scan, "tabulate entangling power over time");
    linkgate->add_option("--t-max", linkgate_args.t_max, "scan end time");
    linkgate->add_option("--samples", linkgate_args.samples, "scan sample count");
    linkgate->add_flag("--json", linkgate_args.json_mode, "JSON output");

    CompileArgs compile_args;
    auto* compile = app.add_subcommand("compile", "approximate an SU(2) target by a word");
    compile->add_option("--rep", compile_args.rep, "image source: fibonacci or kl");
    compile->add_option("--theta", compile_args.theta, "kl angle for --rep kl");
    compile->add_option("--target-json", compile_args.target,
                        "target: file, inline JSON, identity, i, j, k, or axis:NX,NY,NZ:ANGLE");
    compile->add_option("--max-len", compile_args.max_len, "word length budget (<= 24)");
    compile->add_option("--eps", compile_args.eps, "acceptance distance");
    compile->add_flag("--coverage", compile_args.coverage_mode, "coverage over random targets");
    compile->add_option("--samples", compile_args.samples, "coverage sample count");
    compile->add_option("--seed", compile_args.seed, "coverage RNG seed");
    compile->add_flag("--json", compile_args.json_mode, "JSON output");

    CharacterArgs character_args;
    auto* character = app.add_subcommand("character", "character variety scan (trace triples)");
    character->add_option("--knot", character_args.knot, "catalog diagram name");
    character->add_option("--input", character_args.input,
                          "presentation JSON file ('-' for stdin)");
    character->add_option("--seeds", character_args.seeds, "random solver starts");
    character->add_flag("--json", character_args.json_mode, "JSON output");

    CatalogArgs catalog_args;
    auto* catalog_cmd = app.add_subcommand("catalog", "built-in diagram catalog");
    catalog_cmd->add_option("--name", catalog_args.name, "single entry to show");
    catalog_cmd->add_flag("--json", catalog_args.json_mode, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (present->parsed()) run_present(present_args);
    if (rep->parsed()) run_rep(rep_args);
    if (modular->parsed()) run_modular(modular_args);
    if (holonomy->parsed()) run_holonomy(holonomy_args);
    if (linkgate->parsed()) run_linkgate(linkgate_args);
    if (compile->parsed()) run_compile(compile_args);
    if (character->parsed()) run_character(character_args);
    if (catalog_cmd->parsed()) run_catalog(catalog_args);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
