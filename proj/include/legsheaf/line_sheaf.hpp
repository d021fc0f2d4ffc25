#pragma once

#include "legsheaf/matrix.hpp"
#include "legsheaf/report.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace legsheaf {

enum class coorientation : int { negative = -1, positive = +1 };

// Finite set of co-oriented Legendrian points on the line.  Point i+1/2
// separates intervals J_i and J_{i+1}.
struct line_points {
    std::vector<coorientation> coorientations;
    std::size_t count() const { return coorientations.size(); }
};

// Linear-algebra model of a pure sheaf on R with n marked points: spaces
// V_0..V_n over the intervals and one map per point, directed V_i -> V_{i+1}
// for a negative co-orientation and V_{i+1} -> V_i for a positive one.
// Purity is equivalent to every map being injective.
struct line_sheaf {
    std::vector<std::size_t> dims;     // n+1 entries
    std::vector<exact_matrix> maps;    // n entries

    std::size_t points() const { return maps.size(); }
};

inline void check_line_shapes(const line_points& pts, const line_sheaf& s) {
    if (s.dims.size() != pts.count() + 1 || s.maps.size() != pts.count())
        fail(errc::shape_mismatch, "line sheaf has wrong number of spaces or maps");
    for (std::size_t i = 0; i < pts.count(); ++i) {
        std::size_t src = pts.coorientations[i] == coorientation::negative ? i : i + 1;
        std::size_t dst = pts.coorientations[i] == coorientation::negative ? i + 1 : i;
        if (s.maps[i].cols() != s.dims[src] || s.maps[i].rows() != s.dims[dst])
            fail(errc::shape_mismatch, "map at point " + std::to_string(i) + "+1/2 has wrong shape");
    }
}

inline validation_report validate_line(const line_points& pts, const line_sheaf& s) {
    check_line_shapes(pts, s);
    validation_report r;
    for (std::size_t i = 0; i < s.maps.size(); ++i)
        if (!is_injective(s.maps[i]))
            r.add("map " + std::to_string(i) + "+1/2", "not injective (purity fails)");
    return r;
}

// Microstalk over the point i+1/2: cokernel of its map.
inline quotient_space microstalk_line(const line_sheaf& s, std::size_t i) {
    if (i >= s.maps.size()) fail(errc::index_out_of_range, "no point at index " + std::to_string(i));
    return cokernel(s.maps[i]);
}

// Disk gluing data: spaces (V, W) with f: V -> W and g: W -> V such that
// both id minus the round trips are invertible.  W plays the nearby-cycles
// role; the monodromy on W is id_W minus the round trip through V.
struct disk_beilinson {
    std::size_t dim_v = 0;
    std::size_t dim_w = 0;
    exact_matrix f; // dim_w x dim_v
    exact_matrix g; // dim_v x dim_w
};

inline void check_beilinson_shapes(const disk_beilinson& b) {
    if (b.f.rows() != b.dim_w || b.f.cols() != b.dim_v || b.g.rows() != b.dim_v || b.g.cols() != b.dim_w)
        fail(errc::shape_mismatch, "disk data maps have wrong shapes");
}

inline validation_report validate_beilinson(const disk_beilinson& b) {
    check_beilinson_shapes(b);
    validation_report r;
    exact_matrix on_v = exact_matrix::identity(b.dim_v) - b.g * b.f;
    exact_matrix on_w = exact_matrix::identity(b.dim_w) - b.f * b.g;
    if (!is_invertible(on_v)) r.add("V", "id_V minus round trip through W is not invertible");
    if (!is_invertible(on_w)) r.add("W", "id_W minus round trip through V is not invertible");
    return r;
}

inline exact_matrix monodromy_beilinson(const disk_beilinson& b) {
    check_beilinson_shapes(b);
    return exact_matrix::identity(b.dim_w) - b.f * b.g;
}

// Builds a line sheaf from blocks of an ambient space.  Block i is switched
// on while walking right at a negative point and switched off at a positive
// one, so every map is an inclusion of spans:
//   active(0)   = {0} + {i : point i positive}
//   active(i)   = active(i-1) + {i}   at a negative point
//   active(i)   = active(i-1) - {i}   at a positive point
// For all-negative co-orientations this is the flag of partial sums.
// Blocks must be jointly independent; otherwise the flag is degenerate.
inline line_sheaf decategorify_line(const std::vector<std::vector<vec>>& blocks, std::size_t ambient_dim,
                                    const line_points& pts) {
    if (blocks.size() != pts.count() + 1)
        fail(errc::shape_mismatch, "need one block per interval (points + 1)");
    std::size_t total = 0;
    std::vector<vec> all;
    for (const auto& b : blocks) {
        total += b.size();
        for (const auto& v : b) {
            if (v.size() != ambient_dim) fail(errc::shape_mismatch, "block vector has wrong dimension");
            all.push_back(v);
        }
    }
    if (canonical_span_basis(all, ambient_dim).size() != total)
        fail(errc::not_a_flag, "blocks are not jointly independent");

    std::size_t n = pts.count();
    std::vector<bool> active(n + 1, false);
    active[0] = true;
    for (std::size_t i = 1; i <= n; ++i)
        if (pts.coorientations[i - 1] == coorientation::positive) active[i] = true;

    // Canonical bases of the interval spaces.
    std::vector<std::vector<vec>> bases;
    auto span_of_active = [&]() {
        std::vector<vec> vs;
        for (std::size_t j = 0; j <= n; ++j)
            if (active[j])
                for (const auto& v : blocks[j]) vs.push_back(v);
        return canonical_span_basis(vs, ambient_dim);
    };
    bases.push_back(span_of_active());
    for (std::size_t i = 1; i <= n; ++i) {
        active[i] = pts.coorientations[i - 1] == coorientation::negative;
        bases.push_back(span_of_active());
    }

    line_sheaf s;
    for (const auto& b : bases) s.dims.push_back(b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (pts.coorientations[i] == coorientation::negative)
            s.maps.push_back(inclusion_matrix(bases[i], bases[i + 1], ambient_dim));
        else
            s.maps.push_back(inclusion_matrix(bases[i + 1], bases[i], ambient_dim));
    }
    return s;
}

} // namespace legsheaf
