#pragma once

// Shared test utilities: deterministic generators for exact data and the
// independent brute-force oracles the suites check the library against.

#include "legsheaf/front_sheaf.hpp"
#include "legsheaf/matrix.hpp"
#include "legsheaf/mutation.hpp"
#include "legsheaf/puiseux.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace legsheaf;

using rng_t = std::mt19937_64;

inline rational random_rational(rng_t& rng, int max_num = 4, int max_den = 3) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rational(bigint(num(rng)), bigint(den(rng)));
}

inline scalar random_scalar(rng_t& rng, bool gaussian = false) {
    scalar s(random_rational(rng));
    if (gaussian) s.im = random_rational(rng);
    return s;
}

inline exact_matrix random_matrix(rng_t& rng, std::size_t rows, std::size_t cols, bool gaussian = false) {
    exact_matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(rng, gaussian);
    return m;
}

// Random invertible matrix: product of elementary shears and swaps.
inline exact_matrix random_invertible(rng_t& rng, std::size_t n) {
    exact_matrix m = exact_matrix::identity(n);
    if (n == 0) return m;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (std::size_t step = 0; step < 3 * n; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        scalar c{make_rational(bigint(coef(rng)), 1)};
        for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    return m;
}

inline exact_matrix random_injective(rng_t& rng, std::size_t rows, std::size_t cols) {
    // cols <= rows; random full-rank columns via invertible times inclusion.
    exact_matrix inc(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) inc(j, j) = scalar(1);
    return random_invertible(rng, rows) * inc;
}

inline ivec random_ivec(rng_t& rng, std::size_t n, int bound = 2) {
    std::uniform_int_distribution<int> d(-bound, bound);
    ivec v(n);
    for (auto& x : v) x = bigint(d(rng));
    return v;
}

// Random unipotent upper-triangular Gram matrix (every standard basis
// sequence is then exceptional).
inline std::vector<ivec> random_unipotent_gram(rng_t& rng, std::size_t n, int bound = 3) {
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<ivec> g(n, ivec(n, bigint(0)));
    for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = 1;
        for (std::size_t j = i + 1; j < n; ++j) g[i][j] = bigint(d(rng));
    }
    return g;
}

// ---- independent oracles ----------------------------------------------------

// Brute-force exactness of 0 -> B -> L (+) R -> T -> 0 by explicit kernel
// and image spans (containment both ways), not rank arithmetic.
inline bool crossing_exact_oracle(std::size_t dim_b, std::size_t dim_l, std::size_t dim_r, std::size_t dim_t,
                                  const exact_matrix& f_bl, const exact_matrix& f_lt, const exact_matrix& f_br,
                                  const exact_matrix& f_rt) {
    if (f_lt * f_bl != f_rt * f_br) return false;
    exact_matrix stacked(dim_l + dim_r, dim_b);
    for (std::size_t i = 0; i < dim_l; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) stacked(i, j) = f_bl(i, j);
    for (std::size_t i = 0; i < dim_r; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) stacked(dim_l + i, j) = f_br(i, j);
    exact_matrix side(dim_t, dim_l + dim_r);
    for (std::size_t i = 0; i < dim_t; ++i) {
        for (std::size_t j = 0; j < dim_l; ++j) side(i, j) = f_lt(i, j);
        for (std::size_t j = 0; j < dim_r; ++j) side(i, dim_l + j) = -f_rt(i, j);
    }
    // Exact at B: trivial kernel of the stacked map.
    if (!kernel_basis(stacked).empty()) return false;
    // Exact at T: image of the side map is everything.
    std::vector<vec> side_cols;
    for (std::size_t j = 0; j < side.cols(); ++j) side_cols.push_back(side.column(j));
    if (make_quotient(dim_t, side_cols).quotient_dim() != 0) return false;
    // Exact in the middle: span(ker side) == span(im stacked).
    std::vector<vec> ker = kernel_basis(side);
    std::vector<vec> im;
    for (std::size_t j = 0; j < stacked.cols(); ++j) im.push_back(stacked.column(j));
    return canonical_span_basis(ker, dim_l + dim_r) == canonical_span_basis(im, dim_l + dim_r);
}

// Brute-force monodromy by chasing explicit coset representatives around a
// component, one linear solve per crossing, independent of the
// induced-quotient-map composition used by the library.
inline exact_matrix monodromy_oracle(const front_sheaf& s, std::size_t component) {
    std::size_t base = s.front.components[component].front();
    quotient_space base_q = cokernel(s.edge_maps[0][base]);
    std::size_t mu = base_q.quotient_dim();
    exact_matrix sect = base_q.section();

    exact_matrix m(mu, mu);
    std::size_t n_cross = s.front.crossings.size();
    for (std::size_t col = 0; col < mu; ++col) {
        vec rep = sect.column(col); // representative in the region above the base segment
        std::size_t sector = 0, strand = base;
        do {
            if (sector < n_cross) {
                const front_crossing& fc = s.front.crossings[sector];
                if (strand == fc.lower_west) {
                    // West microstalk L/B, rep lives in L; push into T.
                    const auto q = detail::square_at(s, fc);
                    rep = *q.f_lt * rep;
                } else if (strand == fc.upper_west) {
                    // West microstalk T/L with rep in T; find an east
                    // representative y in R with f_rt y = rep mod im f_lt.
                    const auto q = detail::square_at(s, fc);
                    exact_matrix joint(q.f_rt->rows(), q.f_rt->cols() + q.f_lt->cols());
                    for (std::size_t i = 0; i < joint.rows(); ++i) {
                        for (std::size_t j = 0; j < q.f_rt->cols(); ++j) joint(i, j) = (*q.f_rt)(i, j);
                        for (std::size_t j = 0; j < q.f_lt->cols(); ++j)
                            joint(i, q.f_rt->cols() + j) = (*q.f_lt)(i, j);
                    }
                    auto sol = solve_linear(joint, rep);
                    if (!sol) fail(errc::transport_not_iso, "oracle: no east representative");
                    vec y(q.f_rt->cols());
                    for (std::size_t j = 0; j < y.size(); ++j) y[j] = (*sol)[j];
                    rep = y;
                }
                if (fc.east_sector == 0) strand = s.front.deck_next[strand];
                sector = fc.east_sector;
            } else {
                strand = s.front.deck_next[strand];
                sector = 0;
            }
        } while (!(sector == 0 && strand == base));
        vec coords = base_q.project(rep);
        for (std::size_t i = 0; i < mu; ++i) m(i, col) = coords[i];
    }
    return m;
}

// ---- synthetic fronts --------------------------------------------------------

// Hand-built front diagram: two unramified strands crossing twice (the lens
// picture).  Strand 0 starts below.
inline front_diagram synthetic_lens_front() {
    front_diagram d;
    d.strands = 2;
    d.strand_class = {{0, 0}, {1, 0}};
    d.sheet_classes = {};
    d.deck_next = {0, 1};
    d.components = {{0}, {1}};
    d.zero_orbit = -1;
    d.seam_crossing = false;
    d.sector_orders = {{0, 1}, {1, 0}, {0, 1}};
    front_crossing c0;
    c0.angle = {make_rational(1, 4), 0.0};
    c0.slot = 0;
    c0.west_sector = 0;
    c0.east_sector = 1;
    c0.lower_west = 0;
    c0.upper_west = 1;
    front_crossing c1;
    c1.angle = {make_rational(3, 4), 0.0};
    c1.slot = 0;
    c1.west_sector = 1;
    c1.east_sector = 2;
    c1.lower_west = 1;
    c1.upper_west = 0;
    d.crossings = {c0, c1};
    return d;
}

} // namespace testutil
