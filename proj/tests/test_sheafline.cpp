#include "legsheaf/line_sheaf.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace legsheaf;
using testutil::rng_t;

namespace {

exact_matrix mat(std::size_t rows, std::size_t cols, std::vector<int> vals) {
    exact_matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(rational(vals[i * cols + j]));
    return m;
}

vec qvec(std::vector<int> vals) {
    vec v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v[i] = scalar(rational(vals[i]));
    return v;
}

line_points pts(std::initializer_list<char> signs) {
    line_points p;
    for (char c : signs) p.coorientations.push_back(c == '-' ? coorientation::negative : coorientation::positive);
    return p;
}

} // namespace

TEST_CASE("validate_line accepts injective data") {
    line_sheaf s;
    s.dims = {1, 2};
    s.maps = {mat(2, 1, {1, 0})};
    CHECK(validate_line(pts({'-'}), s).pass);
}

TEST_CASE("validate_line reports the failing map") {
    line_sheaf s;
    s.dims = {1, 2};
    s.maps = {mat(2, 1, {0, 0})};
    auto r = validate_line(pts({'-'}), s);
    CHECK_FALSE(r.pass);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].where == "map 0+1/2");
}

TEST_CASE("maps out of the zero space are vacuously injective") {
    line_sheaf s;
    s.dims = {0, 1, 0};
    s.maps = {exact_matrix(1, 0), exact_matrix(1, 0)};
    CHECK(validate_line(pts({'-', '+'}), s).pass);
}

TEST_CASE("shape mismatch is an error, not a failed validation") {
    line_sheaf s;
    s.dims = {1, 2};
    s.maps = {mat(1, 2, {1, 0})}; // transposed shape
    CHECK_THROWS_AS(validate_line(pts({'-'}), s), calc_error);
    line_sheaf t;
    t.dims = {1};
    t.maps = {};
    CHECK_THROWS_AS(validate_line(pts({'-'}), t), calc_error);
}

TEST_CASE("microstalk on the line") {
    line_sheaf s;
    s.dims = {1, 2};
    s.maps = {mat(2, 1, {1, 0})};
    CHECK(microstalk_line(s, 0).quotient_dim() == 1);
    line_sheaf iso;
    iso.dims = {2, 2};
    iso.maps = {exact_matrix::identity(2)};
    CHECK(microstalk_line(iso, 0).quotient_dim() == 0);
    line_sheaf sky;
    sky.dims = {0, 2};
    sky.maps = {exact_matrix(2, 0)};
    CHECK(microstalk_line(sky, 0).quotient_dim() == 2);
    CHECK_THROWS_AS(microstalk_line(s, 1), calc_error);
}

TEST_CASE("disk data validation") {
    disk_beilinson b;
    b.dim_v = 1;
    b.dim_w = 1;
    b.f = mat(1, 1, {1});
    b.g = mat(1, 1, {1});
    CHECK_FALSE(validate_beilinson(b).pass); // 1 - 1 = 0

    b.g = mat(1, 1, {-1});
    CHECK(validate_beilinson(b).pass); // 1 - (-1) = 2

    disk_beilinson local;
    local.dim_v = 0;
    local.dim_w = 1;
    local.f = exact_matrix(1, 0);
    local.g = exact_matrix(0, 1);
    CHECK(validate_beilinson(local).pass); // local system case
}

TEST_CASE("disk monodromy") {
    disk_beilinson b;
    b.dim_v = 1;
    b.dim_w = 1;
    b.f = mat(1, 1, {1});
    b.g = mat(1, 1, {-1});
    CHECK(monodromy_beilinson(b) == mat(1, 1, {2}));

    disk_beilinson z;
    z.dim_v = 0;
    z.dim_w = 2;
    z.f = exact_matrix(2, 0);
    z.g = exact_matrix(0, 2);
    CHECK(monodromy_beilinson(z) == exact_matrix::identity(2));

    // f: Q -> Q^2 is v -> (v, 0); g: Q^2 -> Q is (x, y) -> y.  The round
    // trip on W sends (x, y) to (y, 0).
    disk_beilinson c;
    c.dim_v = 1;
    c.dim_w = 2;
    c.f = mat(2, 1, {1, 0});
    c.g = mat(1, 2, {0, 1});
    CHECK(monodromy_beilinson(c) == mat(2, 2, {1, -1, 0, 1}));
}

TEST_CASE("monodromy invertible whenever validation passes") {
    rng_t rng(31337);
    std::uniform_int_distribution<std::size_t> dim(0, 3);
    int passes = 0;
    for (int iter = 0; iter < 300; ++iter) {
        disk_beilinson b;
        b.dim_v = dim(rng);
        b.dim_w = dim(rng);
        b.f = testutil::random_matrix(rng, b.dim_w, b.dim_v);
        b.g = testutil::random_matrix(rng, b.dim_v, b.dim_w);
        if (validate_beilinson(b).pass) {
            ++passes;
            CHECK(is_invertible(monodromy_beilinson(b)));
        }
    }
    CHECK(passes > 0);
}

TEST_CASE("decategorify_line: flag of partial sums") {
    line_sheaf s = decategorify_line({{qvec({1, 0})}, {qvec({0, 1})}}, 2, pts({'-'}));
    CHECK(s.dims == std::vector<std::size_t>{1, 2});
    CHECK(validate_line(pts({'-'}), s).pass);
}

TEST_CASE("decategorify_line: single block") {
    line_sheaf s = decategorify_line({{qvec({1, 0}), qvec({0, 1})}}, 2, pts({}));
    CHECK(s.dims == std::vector<std::size_t>{2});
    CHECK(s.maps.empty());
}

TEST_CASE("decategorify_line: three-step flag and its microstalks") {
    line_sheaf s =
        decategorify_line({{qvec({1, 0, 0})}, {qvec({0, 1, 0})}, {qvec({0, 0, 1})}}, 3, pts({'-', '-'}));
    CHECK(s.dims == std::vector<std::size_t>{1, 2, 3});
    CHECK(validate_line(pts({'-', '-'}), s).pass);
    CHECK(microstalk_line(s, 0).quotient_dim() == 1);
    CHECK(microstalk_line(s, 1).quotient_dim() == 1);
}

TEST_CASE("decategorify_line rejects dependent blocks") {
    CHECK_THROWS_AS(decategorify_line({{qvec({1, 0})}, {qvec({1, 0})}}, 2, pts({'-'})), calc_error);
}

TEST_CASE("decategorify_line round trip on random block data") {
    rng_t rng(60601);
    std::uniform_int_distribution<std::size_t> nd(1, 4), points(0, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    int built = 0;
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = points(rng);
        line_points p;
        for (std::size_t i = 0; i < n; ++i)
            p.coorientations.push_back(sign(rng) ? coorientation::negative : coorientation::positive);
        // Random independent blocks: split the columns of an invertible
        // matrix into n+1 groups (some possibly empty).
        std::size_t ambient = nd(rng) + n;
        exact_matrix basis = testutil::random_invertible(rng, ambient);
        std::vector<std::vector<vec>> blocks(n + 1);
        std::uniform_int_distribution<std::size_t> which(0, n);
        std::size_t used = 0;
        for (std::size_t c = 0; c < ambient && used < ambient; ++c, ++used)
            blocks[which(rng)].push_back(basis.column(c));
        line_sheaf s = decategorify_line(blocks, ambient, p);
        CHECK(validate_line(p, s).pass);
        ++built;
        // Telescoping for all-negative signs: top dim is the sum of the
        // bottom dim and the microstalk dims.
        if (std::all_of(p.coorientations.begin(), p.coorientations.end(),
                        [](coorientation c) { return c == coorientation::negative; })) {
            std::size_t total = s.dims.front();
            for (std::size_t i = 0; i < s.maps.size(); ++i) total += microstalk_line(s, i).quotient_dim();
            CHECK(total == s.dims.back());
        }
    }
    CHECK(built == 200);
}

TEST_CASE("validate_line agrees with injectivity on random maps") {
    rng_t rng(8089);
    std::uniform_int_distribution<std::size_t> dim(0, 4);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t a = dim(rng), b = dim(rng);
        line_sheaf s;
        s.dims = {a, b};
        s.maps = {testutil::random_matrix(rng, b, a)};
        CHECK(validate_line(pts({'-'}), s).pass == is_injective(s.maps[0]));
    }
}
