#pragma once

#include "legsheaf/front_sheaf.hpp"
#include "legsheaf/line_sheaf.hpp"
#include "legsheaf/mutation.hpp"
#include "legsheaf/puiseux.hpp"
#include "legsheaf/report.hpp"
#include "legsheaf/schober.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace legsheaf {

// Insertion-ordered JSON keeps emitted documents byte-stable and readable.
using json = nlohmann::ordered_json;

// ---- scalars and matrices -------------------------------------------------

inline json to_json(const rational& r) { return detail::render_rational(r); }

inline rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(errc::parse_error, "expected a rational (integer or \"p/q\" string)");
}

inline bigint bigint_from_json(const json& j) {
    if (j.is_number_integer()) return bigint(j.get<std::int64_t>());
    if (j.is_string()) return bigint(j.get<std::string>());
    fail(errc::parse_error, "expected an integer (number or string)");
}

inline json to_json(const bigint& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline json to_json(const exact_matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(render(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline exact_matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        fail(errc::parse_error, "matrix needs rows, cols, entries");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != rows) fail(errc::parse_error, "matrix entries must have one array per row");
    exact_matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!e[i].is_array() || e[i].size() != cols) fail(errc::parse_error, "matrix row has wrong length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_scalar(e[i][k].get<std::string>());
    }
    return m;
}

// ---- formal types ----------------------------------------------------------

inline json to_json(const puiseux_class& c) {
    json terms = json::array();
    for (const auto& t : c.terms()) {
        json jt{{"exp", detail::render_exponent(t.exponent)}, {"coeff", render(t.coeff.base)}};
        if (!t.coeff.is_plain()) jt["turns"] = detail::render_exponent(t.coeff.turns);
        terms.push_back(std::move(jt));
    }
    return json{{"terms", std::move(terms)}};
}

inline puiseux_class class_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms")) fail(errc::parse_error, "class needs a terms array");
    std::vector<puiseux_term> terms;
    for (const auto& jt : j.at("terms")) {
        rational e = rational_from_json(jt.at("exp"));
        scalar c = parse_scalar(jt.at("coeff").get<std::string>());
        rational turns = jt.contains("turns") ? rational_from_json(jt.at("turns")) : rational(0);
        terms.push_back({e, phased_coeff(c, turns)});
    }
    return puiseux_class(std::move(terms));
}

inline json to_json(const formal_type& t) {
    json classes = json::array();
    for (const auto& orbit : t.orbits())
        for (const auto& c : orbit) classes.push_back(to_json(c));
    return json{{"classes", std::move(classes)}};
}

inline formal_type formal_type_from_json(const json& j) {
    if (!j.is_object() || !j.contains("classes")) fail(errc::parse_error, "formal type needs a classes array");
    std::vector<puiseux_class> classes;
    for (const auto& jc : j.at("classes")) {
        if (jc.is_string())
            classes.push_back(parse_class(jc.get<std::string>()));
        else
            classes.push_back(class_from_json(jc));
    }
    return formal_type::from_classes(classes);
}

// ---- front diagrams --------------------------------------------------------

inline json to_json(const front_diagram& d) {
    json crossings = json::array();
    for (const auto& fc : d.crossings)
        crossings.push_back(json{{"angle_turns", detail::render_exponent(fc.angle.turns)},
                                 {"angle_offset_rad", fc.angle.offset_rad},
                                 {"slot", fc.slot}});
    json j{{"strands", d.strands},
           {"crossings", std::move(crossings)},
           {"sector_orders", d.sector_orders},
           {"components", d.components}};
    json sc = json::array();
    for (const auto& [orbit, sheet] : d.strand_class) sc.push_back(json::array({orbit, sheet}));
    j["strand_class"] = std::move(sc);
    if (d.zero_orbit >= 0) j["zero_orbit"] = d.zero_orbit;
    return j;
}

inline front_diagram front_from_json(const json& j) {
    front_diagram d;
    d.strands = j.at("strands").get<std::size_t>();
    d.sector_orders = j.at("sector_orders").get<std::vector<std::vector<std::size_t>>>();
    d.components = j.at("components").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& jc : j.at("strand_class"))
        d.strand_class.emplace_back(jc[0].get<std::size_t>(), jc[1].get<std::size_t>());
    d.zero_orbit = j.contains("zero_orbit") ? j.at("zero_orbit").get<int>() : -1;
    if (d.strand_class.size() != d.strands) fail(errc::parse_error, "strand_class has wrong length");

    // Continuation permutation from (orbit, sheet) labels.
    d.deck_next.assign(d.strands, 0);
    for (std::size_t s = 0; s < d.strands; ++s) {
        auto [orbit, sheet] = d.strand_class[s];
        std::size_t orbit_size = 0, base = d.strands;
        for (std::size_t t = 0; t < d.strands; ++t)
            if (d.strand_class[t].first == orbit) {
                ++orbit_size;
                base = std::min(base, t);
            }
        d.deck_next[s] = base + (sheet + 1) % orbit_size;
    }

    const json& jcross = j.at("crossings");
    std::size_t n_cross = jcross.size();
    std::size_t n_sectors = d.sector_orders.size();
    if (n_sectors != (n_cross == 0 ? 1 : n_cross) && n_sectors != n_cross + 1)
        fail(errc::parse_error, "sector count inconsistent with crossing count");
    d.seam_crossing = n_cross > 0 && n_sectors == n_cross;
    for (std::size_t k = 0; k < n_cross; ++k) {
        front_crossing fc;
        fc.angle.turns = rational_from_json(jcross[k].at("angle_turns"));
        fc.angle.offset_rad = jcross[k].at("angle_offset_rad").get<double>();
        fc.slot = jcross[k].at("slot").get<std::size_t>();
        fc.west_sector = k;
        fc.east_sector = (k + 1) % n_sectors;
        const auto& west = d.sector_orders[fc.west_sector];
        if (fc.slot + 1 >= west.size()) fail(errc::parse_error, "crossing slot out of range");
        fc.lower_west = west[fc.slot];
        fc.upper_west = west[fc.slot + 1];
        d.crossings.push_back(fc);
    }
    return d;
}

// ---- line sheaves ----------------------------------------------------------

inline json to_json(const line_points& pts, const line_sheaf& s) {
    json co = json::array();
    for (auto c : pts.coorientations) co.push_back(c == coorientation::negative ? "-" : "+");
    json maps = json::array();
    for (const auto& m : s.maps) maps.push_back(to_json(m));
    return json{{"coorientations", std::move(co)}, {"dims", s.dims}, {"maps", std::move(maps)}};
}

inline void line_sheaf_from_json(const json& j, line_points& pts, line_sheaf& s) {
    pts.coorientations.clear();
    for (const auto& c : j.at("coorientations")) {
        std::string v = c.get<std::string>();
        if (v != "-" && v != "+") fail(errc::parse_error, "coorientation must be \"-\" or \"+\"");
        pts.coorientations.push_back(v == "-" ? coorientation::negative : coorientation::positive);
    }
    s.dims = j.at("dims").get<std::vector<std::size_t>>();
    s.maps.clear();
    for (const auto& m : j.at("maps")) s.maps.push_back(matrix_from_json(m));
}

// ---- front sheaves ---------------------------------------------------------

inline json to_json(const front_sheaf& s) {
    json edges = json::object();
    for (std::size_t k = 0; k < s.front.sectors(); ++k)
        for (std::size_t t = 0; t < s.front.strands; ++t)
            edges[detail::segment_name(k, t)] = to_json(s.edge_maps[k][t]);
    return json{{"front", to_json(s.front)},
                {"region_dims", s.region_dims},
                {"edge_maps", std::move(edges)},
                {"stwz_mode", s.stwz_mode}};
}

// The "front" member must already be an object (the CLI resolves file
// references before calling this).
inline front_sheaf front_sheaf_from_json(const json& j) {
    if (!j.contains("front") || !j.at("front").is_object())
        fail(errc::parse_error, "front sheaf needs an inline front object");
    front_diagram d = front_from_json(j.at("front"));
    std::vector<std::size_t> dims = j.at("region_dims").get<std::vector<std::size_t>>();
    std::vector<std::vector<exact_matrix>> edges(d.sectors(),
                                                 std::vector<exact_matrix>(d.strands));
    const json& je = j.at("edge_maps");
    std::size_t seen = 0;
    for (std::size_t k = 0; k < d.sectors(); ++k)
        for (std::size_t t = 0; t < d.strands; ++t) {
            std::string key = detail::segment_name(k, t);
            if (!je.contains(key)) fail(errc::parse_error, "missing edge map " + key);
            edges[k][t] = matrix_from_json(je.at(key));
            ++seen;
        }
    if (je.size() != seen) fail(errc::parse_error, "edge_maps contains unknown segment keys");
    bool stwz = j.contains("stwz_mode") && j.at("stwz_mode").get<bool>();
    return make_front_sheaf(std::move(d), std::move(dims), std::move(edges), stwz);
}

// ---- gluing data -----------------------------------------------------------

inline json to_json(const irregular_gluing& gd) {
    return json{{"sheaf", to_json(gd.sheaf)},
                {"zero_strand", gd.zero_strand},
                {"V_dim", gd.dim_v},
                {"f", to_json(gd.f)},
                {"g", to_json(gd.g)}};
}

inline irregular_gluing gluing_from_json(const json& j) {
    irregular_gluing gd;
    gd.sheaf = front_sheaf_from_json(j.at("sheaf"));
    gd.zero_strand = j.at("zero_strand").get<std::size_t>();
    gd.dim_v = j.at("V_dim").get<std::size_t>();
    gd.f = matrix_from_json(j.at("f"));
    gd.g = matrix_from_json(j.at("g"));
    return gd;
}

// ---- lattices, sequences, pairs, flags --------------------------------------

inline json to_json_ivec(const ivec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline ivec ivec_from_json(const json& j) {
    ivec v;
    for (const auto& x : j) v.push_back(bigint_from_json(x));
    return v;
}

inline json to_json_ivecs(const std::vector<ivec>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json_ivec(v));
    return a;
}

inline std::vector<ivec> ivecs_from_json(const json& j) {
    std::vector<ivec> vs;
    for (const auto& v : j) vs.push_back(ivec_from_json(v));
    return vs;
}

inline json to_json(const exceptional_sequence& s) {
    return json{{"gram", to_json_ivecs(s.lattice.gram)}, {"vectors", to_json_ivecs(s.vectors)}};
}

inline exceptional_sequence sequence_from_json(const json& j) {
    euler_lattice l = make_lattice(ivecs_from_json(j.at("gram")));
    return make_exceptional_sequence(std::move(l), ivecs_from_json(j.at("vectors")));
}

inline json to_json(const sod_pair& p) {
    return json{{"gram", to_json_ivecs(p.lattice.gram)},
                {"blockA", to_json_ivecs(p.block_a)},
                {"blockB", to_json_ivecs(p.block_b)}};
}

inline sod_pair pair_from_json(const json& j) {
    euler_lattice l = make_lattice(ivecs_from_json(j.at("gram")));
    return make_sod_pair(std::move(l), ivecs_from_json(j.at("blockA")), ivecs_from_json(j.at("blockB")));
}

// Flags document: { "gram": [[..]], "sector_flags": [sector][block][vector] }
// or { "gram": [[..]], "initial_flag": [block][vector] } with the remaining
// sectors generated by the forced mutations.
inline stokes_schober_shadow shadow_from_json(const json& j, front_diagram front) {
    stokes_schober_shadow s;
    s.front = std::move(front);
    s.lattice = make_lattice(ivecs_from_json(j.at("gram")));
    if (j.contains("sector_flags")) {
        for (const auto& jf : j.at("sector_flags")) {
            std::vector<std::vector<ivec>> flag;
            for (const auto& jb : jf) flag.push_back(ivecs_from_json(jb));
            s.sector_flags.push_back(std::move(flag));
        }
        return s;
    }
    if (!j.contains("initial_flag")) fail(errc::parse_error, "flags need sector_flags or initial_flag");
    std::vector<std::vector<ivec>> flag;
    for (const auto& jb : j.at("initial_flag")) flag.push_back(ivecs_from_json(jb));
    if (flag.size() != s.front.strands) fail(errc::flag_mismatch, "initial flag needs one block per strand");
    s.sector_flags.push_back(flag);
    for (std::size_t c = 0; c < s.front.crossings.size(); ++c) {
        const auto& fc = s.front.crossings[c];
        if (fc.east_sector == 0) break; // seam crossing closes the chain
        sod_pair pair{s.lattice, flag[fc.slot], flag[fc.slot + 1]};
        sod_pair mutated = block_left_mutation(pair);
        flag[fc.slot] = mutated.block_a;
        flag[fc.slot + 1] = mutated.block_b;
        s.sector_flags.push_back(flag);
    }
    return s;
}

// ---- reports ---------------------------------------------------------------

inline json to_json(const validation_report& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back(json{{"where", f.where}, {"what", f.what}});
    return json{{"pass", r.pass}, {"failures", std::move(fails)}};
}

inline json to_json(const sheaf_invariants& inv) {
    json mono = json::array();
    for (std::size_t c = 0; c < inv.monodromy_char_polys.size(); ++c) {
        json poly = json::array();
        for (const auto& coeff : inv.monodromy_char_polys[c]) poly.push_back(render(coeff));
        mono.push_back(json{{"component", c}, {"char_poly", std::move(poly)}});
    }
    return json{{"region_dims", inv.region_dims},
                {"bottom_region", inv.bottom_region},
                {"top_region", inv.top_region},
                {"crossings", inv.crossing_count},
                {"microstalk_dims", inv.microstalk_dims},
                {"monodromy", std::move(mono)}};
}

} // namespace legsheaf
