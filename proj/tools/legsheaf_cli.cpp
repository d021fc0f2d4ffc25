// Command-line front end: builds Legendrian fronts from formal types,
// validates sheaf/gluing/mutation data, and runs the bundled demos.
//
// Exit codes: 0 success or validation pass, 1 validation fail,
// 2 malformed input or computation error.

#include "legsheaf/json_io.hpp"
#include "legsheaf/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace legsheaf;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::parse_error, "cannot open " + path + " for writing");
    out << content;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int report_exit(const validation_report& r) {
    emit(to_json(r));
    return r.pass ? 0 : 1;
}

// Resolve a front sheaf document whose "front" member may be a file path.
json resolve_front_member(json j, const std::string& base_dir) {
    if (j.contains("front") && j.at("front").is_string()) {
        std::string path = j.at("front").get<std::string>();
        if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
        j["front"] = read_json_file(path);
    }
    return j;
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

int cmd_front_build(const std::string& type_path, const std::string& eps_text, const std::string& out_path,
                    const std::string& svg_path, std::size_t samples) {
    formal_type type = formal_type_from_json(read_json_file(type_path));
    rational eps = parse_rational(eps_text);
    front_diagram d = build_front(type, eps);
    json j = to_json(d);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    if (!svg_path.empty()) write_file(svg_path, emit_svg(d, eps, samples));
    emit(json{{"strands", d.strands},
              {"crossings", d.crossings.size()},
              {"components", d.components.size()}});
    return 0;
}

int cmd_validate_line(const std::string& in_path) {
    json j = read_json_file(in_path);
    line_points pts;
    line_sheaf s;
    line_sheaf_from_json(j, pts, s);
    return report_exit(validate_line(pts, s));
}

int cmd_validate_sheaf(const std::string& in_path) {
    json j = resolve_front_member(read_json_file(in_path), dir_of(in_path));
    front_sheaf s = front_sheaf_from_json(j);
    validation_report r = validate_front_sheaf(s);
    if (!r.pass) return report_exit(r);
    json out = to_json(r);
    out["invariants"] = to_json(invariants_report(s));
    emit(out);
    return 0;
}

int cmd_monodromy(const std::string& in_path, std::size_t component) {
    json j = resolve_front_member(read_json_file(in_path), dir_of(in_path));
    front_sheaf s = front_sheaf_from_json(j);
    validation_report r = validate_front_sheaf(s);
    if (!r.pass) return report_exit(r);
    exact_matrix m = monodromy(s, component);
    json poly = json::array();
    for (const auto& c : characteristic_polynomial(m)) poly.push_back(render(c));
    emit(json{{"component", component}, {"monodromy", to_json(m)}, {"char_poly", std::move(poly)}});
    return 0;
}

int cmd_mutate_act(const std::string& in_path, const std::string& word, const std::string& out_path) {
    exceptional_sequence s = sequence_from_json(read_json_file(in_path));
    s = apply_braid_word(s, word);
    json j = to_json(s);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    emit(j);
    return 0;
}

int cmd_mutate_period(const std::string& in_path, std::size_t max_iter) {
    sod_pair p = pair_from_json(read_json_file(in_path));
    auto period = mutation_period(p, max_iter);
    emit(json{{"period", period ? json(*period) : json(nullptr)}});
    return 0;
}

int cmd_schober_decategorify(const std::string& flags_path, const std::string& front_path,
                             const std::string& out_path) {
    front_diagram d = front_from_json(read_json_file(front_path));
    stokes_schober_shadow shadow = shadow_from_json(read_json_file(flags_path), std::move(d));
    front_sheaf s = decategorify_schober(shadow);
    json j = to_json(s);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    validation_report r = validate_front_sheaf(s);
    json out = to_json(r);
    out["invariants"] = to_json(invariants_report(s));
    emit(out);
    return r.pass ? 0 : 1;
}

int cmd_schober_validate(const std::string& in_path, std::optional<std::size_t> strand_override) {
    json j = read_json_file(in_path);
    if (j.contains("sheaf")) j["sheaf"] = resolve_front_member(j["sheaf"], dir_of(in_path));
    irregular_gluing gd = gluing_from_json(j);
    if (strand_override) gd.zero_strand = *strand_override;
    return report_exit(validate_irregular_gluing(gd));
}

formal_type airy_type() {
    return formal_type::from_classes({parse_class("(2/3)*z^(-3/2)")});
}

formal_type spherical_type(unsigned n) {
    std::string e = "z^(-" + std::to_string(n) + ")";
    return formal_type::from_classes({parse_class(e), parse_class("i*" + e)});
}

int cmd_demo_airy(const std::string& svg_path) {
    rational eps = make_rational(1, 10);
    front_diagram d = build_front(airy_type(), eps);
    write_file(svg_path, emit_svg(d, eps, 256));
    emit(json{{"strands", d.strands},
              {"crossings", d.crossings.size()},
              {"components", d.components.size()}});
    return 0;
}

int cmd_demo_spherical(unsigned n, const std::string& svg_path) {
    if (n < 1) fail(errc::invalid_argument, "N must be at least 1");
    rational eps = make_rational(1, 10);
    front_diagram d = build_front(spherical_type(n), eps);
    write_file(svg_path.empty() ? "spherical" + std::to_string(n) + ".svg" : svg_path,
               emit_svg(d, eps, 256));
    // K0 shadow of the associated two-block decomposition: orthogonal
    // blocks, whose mutation period is what the lattice level sees.
    euler_lattice l = make_lattice({{bigint(1), bigint(0)}, {bigint(0), bigint(1)}});
    sod_pair pair = make_sod_pair(l, {{bigint(1), bigint(0)}}, {{bigint(0), bigint(1)}});
    auto period = mutation_period(pair, 100);
    emit(json{{"strands", d.strands},
              {"crossings", d.crossings.size()},
              {"components", d.components.size()},
              {"period", period ? json(*period) : json(nullptr)}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Legendrian front and microlocal sheaf calculator"};
    app.require_subcommand(1);

    std::string type_path, in_path, out_path, svg_path, front_path;
    std::string eps_text = "1/10";
    std::string word;
    std::size_t samples = 256, component = 0, max_iter = 100;
    std::optional<std::size_t> strand;
    unsigned spherical_n = 2;

    auto* front_cmd = app.add_subcommand("front", "front diagram operations");
    front_cmd->require_subcommand(1);
    auto* build = front_cmd->add_subcommand("build", "build a front from a formal type");
    build->add_option("--type", type_path, "formal type JSON")->required();
    build->add_option("--epsilon", eps_text, "radius (rational, default 1/10)");
    build->add_option("--out", out_path, "write the front JSON here");
    build->add_option("--svg", svg_path, "write an SVG rendering here");
    build->add_option("--samples", samples, "SVG samples per strand (>= 16)");

    auto* sheaf_cmd = app.add_subcommand("sheaf", "sheaf validation and monodromy");
    sheaf_cmd->require_subcommand(1);
    auto* vline = sheaf_cmd->add_subcommand("validate-line", "validate a sheaf on the line");
    vline->add_option("--in", in_path, "line sheaf JSON")->required();
    auto* vfront = sheaf_cmd->add_subcommand("validate", "validate a sheaf on a front");
    vfront->add_option("--in", in_path, "front sheaf JSON")->required();
    auto* mono = sheaf_cmd->add_subcommand("monodromy", "microstalk monodromy of a component");
    mono->add_option("--in", in_path, "front sheaf JSON")->required();
    mono->add_option("--component", component, "component index")->required();

    auto* mutate_cmd = app.add_subcommand("mutate", "exceptional sequence mutation");
    mutate_cmd->require_subcommand(1);
    auto* act = mutate_cmd->add_subcommand("act", "apply a braid word");
    act->add_option("--in", in_path, "sequence JSON")->required();
    act->add_option("--word", word, "braid word, e.g. \"s1 s2 S1\"")->required();
    act->add_option("--out", out_path, "write the mutated sequence here");
    auto* period = mutate_cmd->add_subcommand("period", "period of iterated block mutation");
    period->add_option("--in", in_path, "block pair JSON")->required();
    period->add_option("--max", max_iter, "iteration bound (default 100)");

    auto* schober_cmd = app.add_subcommand("schober", "flag chains and gluing data");
    schober_cmd->require_subcommand(1);
    auto* decat = schober_cmd->add_subcommand("decategorify", "flag chain to front sheaf");
    decat->add_option("--in", in_path, "flags JSON")->required();
    decat->add_option("--front", front_path, "front JSON")->required();
    decat->add_option("--out", out_path, "write the front sheaf here");
    auto* gval = schober_cmd->add_subcommand("validate", "validate irregular gluing data");
    gval->add_option("--in", in_path, "gluing JSON")->required();
    gval->add_option("--strand", strand, "override the designated zero strand");

    auto* demo_cmd = app.add_subcommand("demo", "bundled demos");
    demo_cmd->require_subcommand(1);
    auto* airy = demo_cmd->add_subcommand("airy", "the classical two-sheet cubic-type front");
    airy->add_option("--svg", svg_path, "SVG output path (default airy.svg)");
    auto* spherical = demo_cmd->add_subcommand("spherical", "two-strand front with 2N crossings");
    spherical->add_option("N", spherical_n, "crossing half-count")->required();
    spherical->add_option("--svg", svg_path, "SVG output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) return cmd_front_build(type_path, eps_text, out_path, svg_path, samples);
        if (vline->parsed()) return cmd_validate_line(in_path);
        if (vfront->parsed()) return cmd_validate_sheaf(in_path);
        if (mono->parsed()) return cmd_monodromy(in_path, component);
        if (act->parsed()) return cmd_mutate_act(in_path, word, out_path);
        if (period->parsed()) return cmd_mutate_period(in_path, max_iter);
        if (decat->parsed()) return cmd_schober_decategorify(in_path, front_path, out_path);
        if (gval->parsed()) return cmd_schober_validate(in_path, strand);
        if (airy->parsed()) return cmd_demo_airy(svg_path.empty() ? "airy.svg" : svg_path);
        if (spherical->parsed()) return cmd_demo_spherical(spherical_n, svg_path);
    } catch (const legsheaf::calc_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
