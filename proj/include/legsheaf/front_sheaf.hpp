#pragma once

#include "legsheaf/front.hpp"
#include "legsheaf/matrix.hpp"
#include "legsheaf/report.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace legsheaf {

// Pure-sheaf data on a front diagram: one vector space per face of the
// cylinder and one injective edge map per strand segment, directed from the
// region below the strand to the region above (downward co-orientation).
// Faces carry constant sheaves; all monodromy enters through crossings.
struct front_sheaf {
    front_diagram front;
    front_regions regions;
    std::vector<std::size_t> region_dims;
    std::vector<std::vector<exact_matrix>> edge_maps; // [sector][strand]
    bool stwz_mode = false;
};

inline front_sheaf make_front_sheaf(front_diagram front, std::vector<std::size_t> region_dims,
                                    std::vector<std::vector<exact_matrix>> edge_maps, bool stwz_mode) {
    front_sheaf s;
    s.front = std::move(front);
    s.regions = compute_regions(s.front);
    s.region_dims = std::move(region_dims);
    s.edge_maps = std::move(edge_maps);
    s.stwz_mode = stwz_mode;
    return s;
}

namespace detail {

inline std::string segment_name(std::size_t sector, std::size_t strand) {
    return std::to_string(sector) + ":" + std::to_string(strand);
}

// The four regions and four edge maps around a crossing:
//   B --f_bl--> L --f_lt--> T      (west side, bottom to top)
//   B --f_br--> R --f_rt--> T      (east side)
// East-side strand ids pick up the deck relabeling when the crossing sits
// at the seam.
struct crossing_square {
    std::size_t b, l, r, t; // region ids
    const exact_matrix* f_bl;
    const exact_matrix* f_lt;
    const exact_matrix* f_br;
    const exact_matrix* f_rt;
    std::size_t east_lower, east_upper; // east-side strand ids
};

inline crossing_square square_at(const front_sheaf& s, const front_crossing& fc) {
    crossing_square q;
    q.b = s.regions.cell_region[fc.west_sector][fc.slot];
    q.l = s.regions.cell_region[fc.west_sector][fc.slot + 1];
    q.r = s.regions.cell_region[fc.east_sector][fc.slot + 1];
    q.t = s.regions.cell_region[fc.west_sector][fc.slot + 2];
    bool through_seam = fc.east_sector == 0;
    q.east_lower = through_seam ? s.front.deck_next[fc.upper_west] : fc.upper_west;
    q.east_upper = through_seam ? s.front.deck_next[fc.lower_west] : fc.lower_west;
    q.f_bl = &s.edge_maps[fc.west_sector][fc.lower_west];
    q.f_lt = &s.edge_maps[fc.west_sector][fc.upper_west];
    q.f_br = &s.edge_maps[fc.east_sector][q.east_lower];
    q.f_rt = &s.edge_maps[fc.east_sector][q.east_upper];
    return q;
}

} // namespace detail

// Full acyclicity of the crossing square 0 -> B -> L (+) R -> T -> 0 with
// the combined maps x -> (f_bl x, f_br x) and (l, r) -> f_lt l - f_rt r.
// Rank arithmetic: the composite must vanish and the three spots are exact
// iff the stacked map has rank dim B, the side map has rank dim T, and the
// middle kernel dimension matches the image dimension.
inline validation_report check_crossing_exactness(std::size_t dim_b, std::size_t dim_l, std::size_t dim_r,
                                                  std::size_t dim_t, const exact_matrix& f_bl,
                                                  const exact_matrix& f_lt, const exact_matrix& f_br,
                                                  const exact_matrix& f_rt, const std::string& where = "crossing") {
    validation_report r;
    if (f_bl.cols() != dim_b || f_bl.rows() != dim_l || f_br.cols() != dim_b || f_br.rows() != dim_r ||
        f_lt.cols() != dim_l || f_lt.rows() != dim_t || f_rt.cols() != dim_r || f_rt.rows() != dim_t)
        fail(errc::shape_mismatch, "crossing maps disagree with region dimensions");
    if (f_lt * f_bl != f_rt * f_br) {
        r.add(where, "square does not commute (sequence is not a complex)");
        return r;
    }
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
    std::size_t rank_stacked = rank(stacked);
    std::size_t rank_side = rank(side);
    if (rank_stacked != dim_b) r.add(where, "not exact at B");
    if (rank_side != dim_t) r.add(where, "not exact at T");
    if (dim_l + dim_r - rank_side != rank_stacked) r.add(where, "not exact at the middle");
    return r;
}

inline void check_front_sheaf_shapes(const front_sheaf& s) {
    if (s.region_dims.size() != s.regions.count)
        fail(errc::shape_mismatch, "expected one dimension per region (" + std::to_string(s.regions.count) + ")");
    if (s.edge_maps.size() != s.front.sectors())
        fail(errc::shape_mismatch, "expected one edge-map row per sector");
    for (std::size_t k = 0; k < s.front.sectors(); ++k) {
        if (s.edge_maps[k].size() != s.front.strands)
            fail(errc::shape_mismatch, "expected one edge map per strand in sector " + std::to_string(k));
        for (std::size_t t = 0; t < s.front.strands; ++t) {
            std::size_t pos = s.front.position_in(k, t);
            std::size_t below = s.regions.cell_region[k][pos];
            std::size_t above = s.regions.cell_region[k][pos + 1];
            const exact_matrix& m = s.edge_maps[k][t];
            if (m.rows() != s.region_dims[above] || m.cols() != s.region_dims[below])
                fail(errc::shape_mismatch,
                     "edge map " + detail::segment_name(k, t) + " has wrong shape");
        }
    }
}

// Checks purity (injective edges), local constancy of segments along
// strands, full acyclicity at every crossing, and the bottom-vanishing
// condition in stwz mode.
inline validation_report validate_front_sheaf(const front_sheaf& s) {
    check_front_sheaf_shapes(s);
    validation_report r;

    for (std::size_t k = 0; k < s.front.sectors(); ++k)
        for (std::size_t t = 0; t < s.front.strands; ++t)
            if (!is_injective(s.edge_maps[k][t]))
                r.add("edge " + detail::segment_name(k, t), "not injective (purity fails)");

    // Segments of one strand must carry the same matrix across a sector
    // boundary that does not involve the strand, and across the plain seam
    // up to the deck relabeling.
    std::size_t n_sec = s.front.sectors();
    for (const auto& fc : s.front.crossings) {
        for (std::size_t t = 0; t < s.front.strands; ++t) {
            if (t == fc.lower_west || t == fc.upper_west) continue;
            std::size_t east_id = fc.east_sector == 0 ? s.front.deck_next[t] : t;
            if (s.edge_maps[fc.west_sector][t] != s.edge_maps[fc.east_sector][east_id])
                r.add("edge " + detail::segment_name(fc.east_sector, east_id),
                      "segment map changes along a strand away from its crossings");
        }
    }
    if (!s.front.seam_crossing) {
        for (std::size_t t = 0; t < s.front.strands; ++t)
            if (s.edge_maps[n_sec - 1][t] != s.edge_maps[0][s.front.deck_next[t]])
                r.add("edge " + detail::segment_name(0, s.front.deck_next[t]),
                      "segment map changes across the seam");
    }

    for (std::size_t c = 0; c < s.front.crossings.size(); ++c) {
        const auto& fc = s.front.crossings[c];
        detail::crossing_square q = detail::square_at(s, fc);
        validation_report cr = check_crossing_exactness(
            s.region_dims[q.b], s.region_dims[q.l], s.region_dims[q.r], s.region_dims[q.t], *q.f_bl, *q.f_lt,
            *q.f_br, *q.f_rt, "crossing " + std::to_string(c));
        for (auto& f : cr.failures) r.add(f.where, f.what);
    }

    if (s.stwz_mode && s.region_dims[s.regions.bottom] != 0)
        r.add("region " + std::to_string(s.regions.bottom), "bottom region must vanish in stwz mode");

    return r;
}

// Microstalk of a strand segment: cokernel of its edge map.
inline quotient_space microstalk(const front_sheaf& s, std::size_t sector, std::size_t strand) {
    if (sector >= s.front.sectors() || strand >= s.front.strands)
        fail(errc::unknown_segment, "no segment " + detail::segment_name(sector, strand));
    return cokernel(s.edge_maps[sector][strand]);
}

// Transport of the given west-side strand's microstalk across crossing c,
// west to east.  For the strand entering from below this is the map
// L/B -> T/R induced by f_lt; for the strand entering from above it is the
// inverse of the induced map R/B -> T/L.  Invertible on every valid sheaf.
inline exact_matrix transport(const front_sheaf& s, std::size_t crossing, std::size_t strand) {
    if (crossing >= s.front.crossings.size()) fail(errc::index_out_of_range, "crossing index out of range");
    const front_crossing& fc = s.front.crossings[crossing];
    detail::crossing_square q = detail::square_at(s, fc);
    exact_matrix m;
    if (strand == fc.lower_west) {
        m = induced_quotient_map(*q.f_lt, cokernel(*q.f_bl), cokernel(*q.f_rt));
    } else if (strand == fc.upper_west) {
        exact_matrix east_to_west = induced_quotient_map(*q.f_rt, cokernel(*q.f_br), cokernel(*q.f_lt));
        if (!is_invertible(east_to_west))
            fail(errc::transport_not_iso, "microstalk transport is singular; sheaf is not exact at the crossing");
        m = inverse(east_to_west);
    } else {
        fail(errc::invalid_argument, "strand does not participate in this crossing");
    }
    if (!is_invertible(m))
        fail(errc::transport_not_iso, "microstalk transport is singular; sheaf is not exact at the crossing");
    return m;
}

// Monodromy of the microstalk around a closed front component, starting at
// an arbitrary base segment and composing transports eastward until the
// walk returns.
inline exact_matrix monodromy_from(const front_sheaf& s, std::size_t base_sector, std::size_t base_strand) {
    std::size_t n_cross = s.front.crossings.size();
    std::size_t dim0 = microstalk(s, base_sector, base_strand).quotient_dim();
    exact_matrix m = exact_matrix::identity(dim0);
    std::size_t sector = base_sector, strand = base_strand;
    do {
        if (sector < n_cross) {
            const front_crossing& fc = s.front.crossings[sector];
            bool involved = strand == fc.lower_west || strand == fc.upper_west;
            if (involved) m = transport(s, sector, strand) * m;
            if (fc.east_sector == 0) strand = s.front.deck_next[strand];
            sector = fc.east_sector;
        } else {
            strand = s.front.deck_next[strand];
            sector = 0;
        }
    } while (!(sector == base_sector && strand == base_strand));
    return m;
}

// Monodromy at the deterministic base point: the segment of the lowest
// strand id of the component in sector 0.
inline exact_matrix monodromy(const front_sheaf& s, std::size_t component) {
    if (component >= s.front.components.size())
        fail(errc::index_out_of_range, "component index out of range");
    std::size_t base = s.front.components[component].front();
    return monodromy_from(s, 0, base);
}

} // namespace legsheaf
