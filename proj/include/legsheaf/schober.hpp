#pragma once

#include "legsheaf/front_sheaf.hpp"
#include "legsheaf/mutation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace legsheaf {

// K0 shadow of a Stokes structure on a front: per angular sector, an
// ordered flag of sublattice blocks of a fixed ambient lattice, one block
// per strand from bottom to top.  Crossing a Stokes ray at slot k replaces
// blocks (k, k+1) by their left mutation.
struct stokes_schober_shadow {
    front_diagram front;
    euler_lattice lattice;
    std::vector<std::vector<std::vector<ivec>>> sector_flags; // [sector][block][vector]
};

namespace detail {

inline std::vector<vec> to_rational_vectors(const std::vector<ivec>& block, std::size_t rank) {
    std::vector<vec> out;
    for (const auto& v : block) {
        if (v.size() != rank) fail(errc::shape_mismatch, "flag block vector has wrong rank");
        vec w(rank);
        for (std::size_t i = 0; i < rank; ++i) w[i] = scalar(rational(v[i]));
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace detail

// Checks the per-crossing mutation steps and the seam closure of a flag
// chain.  Blocks are compared as sublattices (Hermite forms).
inline void check_schober_flags(const stokes_schober_shadow& s) {
    std::size_t n_sec = s.front.sectors();
    if (s.sector_flags.size() != n_sec)
        fail(errc::flag_mismatch, "expected one flag per sector (" + std::to_string(n_sec) + ")");
    for (std::size_t k = 0; k < n_sec; ++k)
        if (s.sector_flags[k].size() != s.front.strands)
            fail(errc::flag_mismatch, "flag in sector " + std::to_string(k) + " must have one block per strand");

    auto hnf = [](const std::vector<ivec>& block) { return hermite_normal_form(block); };

    for (std::size_t c = 0; c < s.front.crossings.size(); ++c) {
        const auto& fc = s.front.crossings[c];
        const auto& west = s.sector_flags[fc.west_sector];
        const auto& east = s.sector_flags[fc.east_sector];
        sod_pair pair{s.lattice, west[fc.slot], west[fc.slot + 1]};
        sod_pair mutated = block_left_mutation(pair);
        for (std::size_t p = 0; p < s.front.strands; ++p) {
            std::vector<ivec> expected = p == fc.slot       ? mutated.block_a
                                         : p == fc.slot + 1 ? mutated.block_b
                                                            : west[p];
            if (hnf(east[p]) != hnf(expected))
                fail(errc::flag_mismatch, "flag after crossing " + std::to_string(c) +
                                              " is not the mutation of the flag before it (block " +
                                              std::to_string(p) + ")");
        }
    }
    if (!s.front.seam_crossing && n_sec > 1) {
        for (std::size_t p = 0; p < s.front.strands; ++p)
            if (hnf(s.sector_flags[n_sec - 1][p]) != hnf(s.sector_flags[0][p]))
                fail(errc::flag_mismatch, "flags do not close up across the seam (block " + std::to_string(p) + ")");
    }
}

// Turns a flag chain into sheaf data: each region gets the span of the
// partial sum of blocks below it, edge maps are the inclusions.  The output
// satisfies the crossing exactness conditions by construction and vanishes
// on the bottom region.
inline front_sheaf decategorify_schober(const stokes_schober_shadow& s) {
    check_schober_flags(s);
    std::size_t rank = s.lattice.rank;
    std::size_t n_sec = s.front.sectors();

    // Canonical basis of the partial sum below each gap, per sector.
    std::vector<std::vector<std::vector<vec>>> gap_basis(n_sec);
    for (std::size_t k = 0; k < n_sec; ++k) {
        std::vector<vec> acc;
        gap_basis[k].push_back(canonical_span_basis(acc, rank));
        for (std::size_t p = 0; p < s.front.strands; ++p) {
            for (const auto& v : detail::to_rational_vectors(s.sector_flags[k][p], rank)) acc.push_back(v);
            gap_basis[k].push_back(canonical_span_basis(acc, rank));
        }
    }

    front_regions regions = compute_regions(s.front);
    std::vector<std::vector<vec>> region_basis(regions.count);
    std::vector<bool> have(regions.count, false);
    for (std::size_t k = 0; k < n_sec; ++k)
        for (std::size_t g = 0; g <= s.front.strands; ++g) {
            std::size_t r = regions.cell_region[k][g];
            if (!have[r]) {
                region_basis[r] = gap_basis[k][g];
                have[r] = true;
            } else if (region_basis[r] != gap_basis[k][g]) {
                fail(errc::flag_mismatch, "partial sums disagree on a shared region");
            }
        }

    std::vector<std::size_t> region_dims(regions.count);
    for (std::size_t r = 0; r < regions.count; ++r) region_dims[r] = region_basis[r].size();

    std::vector<std::vector<exact_matrix>> edges(n_sec, std::vector<exact_matrix>(s.front.strands));
    for (std::size_t k = 0; k < n_sec; ++k)
        for (std::size_t t = 0; t < s.front.strands; ++t) {
            std::size_t p = s.front.position_in(k, t);
            edges[k][t] = inclusion_matrix(gap_basis[k][p], gap_basis[k][p + 1], rank);
        }

    return make_front_sheaf(s.front, std::move(region_dims), std::move(edges), /*stwz_mode=*/true);
}

// Gluing data for a front containing the zero class: a disk space V tied to
// the microstalk of the zero strand by maps f (microstalk to V) and
// g (V to microstalk) with both round trips invertible and
// id - g.f equal to the computed monodromy.
struct irregular_gluing {
    front_sheaf sheaf;
    std::size_t zero_strand = 0;
    std::size_t dim_v = 0;
    exact_matrix f; // dim_v x microstalk_dim
    exact_matrix g; // microstalk_dim x dim_v
};

inline validation_report validate_irregular_gluing(const irregular_gluing& gd) {
    const front_diagram& front = gd.sheaf.front;
    if (gd.zero_strand >= front.strands) fail(errc::shape_mismatch, "zero strand id out of range");
    if (front.zero_orbit < 0 ||
        front.strand_class[gd.zero_strand].first != static_cast<std::size_t>(front.zero_orbit))
        fail(errc::no_zero_strand, "designated strand does not carry the zero class");

    validation_report r = validate_front_sheaf(gd.sheaf);
    if (!r.pass) return r;

    std::size_t mu = microstalk(gd.sheaf, 0, gd.zero_strand).quotient_dim();
    if (gd.f.rows() != gd.dim_v || gd.f.cols() != mu || gd.g.rows() != mu || gd.g.cols() != gd.dim_v)
        fail(errc::shape_mismatch, "gluing maps have wrong shapes for microstalk dim " + std::to_string(mu));

    exact_matrix on_v = exact_matrix::identity(gd.dim_v) - gd.f * gd.g;
    exact_matrix on_mu = exact_matrix::identity(mu) - gd.g * gd.f;
    if (!is_invertible(on_v)) r.add("id - f.g on V", "not invertible");
    if (!is_invertible(on_mu)) r.add("id - g.f on microstalk", "not invertible");

    exact_matrix m = monodromy(gd.sheaf, front.component_of(gd.zero_strand));
    if (on_mu != m) r.add("monodromy equation", "id - g.f differs from the computed monodromy");
    return r;
}

// Deterministic summary of a sheaf: dimensions, microstalk dims per strand
// in each sector, and the characteristic polynomial of each component's
// monodromy.
struct sheaf_invariants {
    std::vector<std::size_t> region_dims;
    std::size_t bottom_region = 0;
    std::size_t top_region = 0;
    std::size_t crossing_count = 0;
    std::vector<std::vector<std::size_t>> microstalk_dims; // [sector][strand]
    std::vector<std::vector<scalar>> monodromy_char_polys; // per component
};

inline sheaf_invariants invariants_report(const front_sheaf& s) {
    sheaf_invariants inv;
    inv.region_dims = s.region_dims;
    inv.bottom_region = s.regions.bottom;
    inv.top_region = s.regions.top;
    inv.crossing_count = s.front.crossings.size();
    for (std::size_t k = 0; k < s.front.sectors(); ++k) {
        std::vector<std::size_t> row;
        for (std::size_t t = 0; t < s.front.strands; ++t) row.push_back(microstalk(s, k, t).quotient_dim());
        inv.microstalk_dims.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < s.front.components.size(); ++c)
        inv.monodromy_char_polys.push_back(characteristic_polynomial(monodromy(s, c)));
    return inv;
}

} // namespace legsheaf
