#include "legsheaf/json_io.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace legsheaf;
using testutil::rng_t;

namespace {

front_diagram disk_front() {
    return build_front(formal_type::from_classes({parse_class("0"), parse_class("z^(-2)")}),
                       make_rational(1, 10));
}

} // namespace

TEST_CASE("matrix json round trip") {
    rng_t rng(808);
    for (int iter = 0; iter < 50; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(0, 4);
        exact_matrix m = testutil::random_matrix(rng, dim(rng), dim(rng), iter % 2 == 0);
        CHECK(matrix_from_json(to_json(m)) == m);
    }
    json j = json::parse(R"({"rows":1,"cols":2,"entries":[["-3/2","1/2+1/2i"]]})");
    exact_matrix m = matrix_from_json(j);
    CHECK(m(0, 0) == parse_scalar("-3/2"));
    CHECK(m(0, 1) == parse_scalar("1/2+1/2i"));
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":2,"cols":1,"entries":[["1"]]})")), calc_error);
}

TEST_CASE("formal type json accepts strings and term objects") {
    json j = json::parse(R"j({"classes":["(2/3)*z^(-3/2)"]})j");
    formal_type t = formal_type_from_json(j);
    CHECK(t.class_count() == 2); // orbit completion

    json j2 = json::parse(R"({"classes":[{"terms":[{"exp":"-2","coeff":"i"}]}]})");
    formal_type t2 = formal_type_from_json(j2);
    CHECK(t2.class_count() == 1);

    formal_type back = formal_type_from_json(to_json(t));
    CHECK(back.class_count() == t.class_count());
}

TEST_CASE("front diagram json round trip") {
    for (front_diagram d :
         {disk_front(), build_front(formal_type::from_classes({parse_class("(2/3)*z^(-3/2)")}), make_rational(1, 10)),
          build_front(formal_type::from_classes({parse_class("0"), parse_class("i*z^(-3)")}), make_rational(1, 10))}) {
        front_diagram e = front_from_json(to_json(d));
        CHECK(e.strands == d.strands);
        CHECK(e.sector_orders == d.sector_orders);
        CHECK(e.components == d.components);
        CHECK(e.strand_class == d.strand_class);
        CHECK(e.deck_next == d.deck_next);
        CHECK(e.zero_orbit == d.zero_orbit);
        CHECK(e.seam_crossing == d.seam_crossing);
        REQUIRE(e.crossings.size() == d.crossings.size());
        for (std::size_t k = 0; k < d.crossings.size(); ++k) {
            CHECK(e.crossings[k].angle == d.crossings[k].angle);
            CHECK(e.crossings[k].slot == d.crossings[k].slot);
            CHECK(e.crossings[k].lower_west == d.crossings[k].lower_west);
            CHECK(e.crossings[k].upper_west == d.crossings[k].upper_west);
        }
    }
}

TEST_CASE("front sheaf json round trip") {
    front_diagram d = disk_front();
    front_regions reg = compute_regions(d);
    std::vector<std::size_t> dims(reg.count, 1);
    dims[reg.bottom] = 0;
    dims[reg.top] = 2;
    std::vector<std::vector<int>> u{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    std::vector<exact_matrix> middle(reg.count);
    std::vector<bool> seen(reg.count, false);
    std::size_t next = 0;
    for (std::size_t k = 0; k < d.sectors(); ++k) {
        std::size_t r = reg.cell_region[k][1];
        if (!seen[r]) {
            seen[r] = true;
            exact_matrix m(2, 1);
            m(0, 0) = scalar(rational(u[next][0]));
            m(1, 0) = scalar(rational(u[next][1]));
            ++next;
            middle[r] = m;
        }
    }
    std::vector<std::vector<exact_matrix>> edges(d.sectors(), std::vector<exact_matrix>(2));
    for (std::size_t k = 0; k < d.sectors(); ++k) {
        edges[k][d.sector_orders[k][0]] = exact_matrix(1, 0);
        edges[k][d.sector_orders[k][1]] = middle[reg.cell_region[k][1]];
    }
    front_sheaf s = make_front_sheaf(std::move(d), std::move(dims), std::move(edges), true);
    front_sheaf back = front_sheaf_from_json(to_json(s));
    CHECK(back.region_dims == s.region_dims);
    CHECK(back.edge_maps == s.edge_maps);
    CHECK(back.stwz_mode == s.stwz_mode);
    CHECK(validate_front_sheaf(back).pass == validate_front_sheaf(s).pass);
    CHECK(monodromy(back, back.front.component_of(0)) == monodromy(s, s.front.component_of(0)));
}

TEST_CASE("sequence and pair json") {
    json j = json::parse(R"({"gram":[[1,1],[0,1]],"vectors":[[1,0],[0,1]]})");
    exceptional_sequence s = sequence_from_json(j);
    CHECK(s.vectors.size() == 2);
    exceptional_sequence back = sequence_from_json(to_json(s));
    CHECK(back.vectors == s.vectors);

    json jp = json::parse(R"({"gram":[[1,1],[0,1]],"blockA":[[1,0]],"blockB":[[0,1]]})");
    sod_pair p = pair_from_json(jp);
    CHECK(mutation_period(p, 100) == std::size_t{3});
    sod_pair pback = pair_from_json(to_json(p));
    CHECK(pback.block_a == p.block_a);

    // Oversized entries survive via string encoding.
    exceptional_sequence big = s;
    big.vectors[0][0] = bigint("123456789012345678901234567890");
    big.vectors[0][1] = bigint(0);
    json jbig = to_json(big);
    CHECK(jbig.at("vectors")[0][0].is_string());
    CHECK(ivecs_from_json(jbig.at("vectors"))[0][0] == big.vectors[0][0]);
}

TEST_CASE("line sheaf json") {
    json j = json::parse(
        R"({"coorientations":["-"],"dims":[1,2],"maps":[{"rows":2,"cols":1,"entries":[["1"],["0"]]}]})");
    line_points pts;
    line_sheaf s;
    line_sheaf_from_json(j, pts, s);
    CHECK(validate_line(pts, s).pass);
    json back = to_json(pts, s);
    line_points pts2;
    line_sheaf s2;
    line_sheaf_from_json(back, pts2, s2);
    CHECK(s2.dims == s.dims);
    CHECK(s2.maps == s.maps);
}

TEST_CASE("validation report json") {
    validation_report r;
    r.add("map 0+1/2", "not injective");
    json j = to_json(r);
    CHECK(j.at("pass") == false);
    CHECK(j.at("failures")[0].at("where") == "map 0+1/2");
}

TEST_CASE("shadow json with explicit sector flags") {
    front_diagram d =
        build_front(formal_type::from_classes({parse_class("(2/3)*z^(-3/2)")}), make_rational(1, 10));
    json j = json::parse(R"({"gram":[[1,1],[0,1]],"initial_flag":[[[1,0]],[[0,1]]]})");
    stokes_schober_shadow s = shadow_from_json(j, d);
    REQUIRE(s.sector_flags.size() == 4);
    front_sheaf fs = decategorify_schober(s);
    CHECK(validate_front_sheaf(fs).pass);

    // The same chain given explicitly parses too.
    json full{{"gram", json::parse("[[1,1],[0,1]]")}};
    json flags = json::array();
    for (const auto& flag : s.sector_flags) {
        json jf = json::array();
        for (const auto& block : flag) jf.push_back(to_json_ivecs(block));
        flags.push_back(jf);
    }
    full["sector_flags"] = flags;
    stokes_schober_shadow s2 = shadow_from_json(full, d);
    CHECK(s2.sector_flags.size() == s.sector_flags.size());
}
