#pragma once

#include "legsheaf/angle.hpp"
#include "legsheaf/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace legsheaf {

// Numeric tie tolerance for height comparisons at sector midpoints and for
// crossing-angle separation.  Ties below this are reported as degenerate
// rather than resolved silently.
inline constexpr double front_tie_tolerance = 1e-9;

namespace detail {

// Leading coefficient of a difference class: argument split into an exact
// turns part plus a residue in radians.  When two residual-phase summands
// share the leading exponent the argument is transcendental and fully
// numeric.
struct leading_term {
    rational exponent;
    rational arg_turns;
    double arg_residue_rad = 0.0;
};

inline leading_term leading_of_difference(const puiseux_class& d) {
    const auto& terms = d.terms();
    rational e = terms.front().exponent;
    std::size_t n = 0;
    while (n < terms.size() && terms[n].exponent == e) ++n;
    leading_term lt;
    lt.exponent = e;
    if (n == 1) {
        terms[0].coeff.arg(lt.arg_turns, lt.arg_residue_rad);
        return lt;
    }
    std::complex<double> sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = terms[i].coeff;
        sum += std::polar(c.abs(), c.arg_radians());
    }
    lt.arg_turns = 0;
    lt.arg_residue_rad = std::arg(sum);
    return lt;
}

} // namespace detail

// Stokes directions of a pair of distinct classes, on the common cover
// [0, 2 pi l): the zeros of cos(arg c + e theta) for the leading term
// c z^e of f - g, with e = -k/l in lowest terms.  Exactly 2k angles.
inline std::vector<exact_angle> stokes_directions(const puiseux_class& f, const puiseux_class& g) {
    puiseux_class d = difference(f, g);
    if (d.is_zero()) fail(errc::equal_classes, "classes are equal; no Stokes directions");
    detail::leading_term lt = detail::leading_of_difference(d);
    rational abs_e = -lt.exponent;
    rational cover = make_rational(denominator(lt.exponent), 1);
    double abs_e_d = to_double(abs_e);
    double offset = lt.arg_residue_rad / abs_e_d;

    std::vector<exact_angle> out;
    // theta(m) = (arg_turns - 1/4 + m/2)/|e| + offset; enumerate m covering
    // [0, cover) turns with slack for the offset.
    rational quarter = make_rational(1, 4), half = make_rational(1, 2);
    rational lo_bound = (-abs_e * (cover + 1)) - lt.arg_turns + quarter;
    rational hi_bound = (abs_e * (cover + 1)) - lt.arg_turns + quarter;
    long m_lo = static_cast<long>(std::floor(to_double(lo_bound * 2))) - 2;
    long m_hi = static_cast<long>(std::ceil(to_double(hi_bound * 2))) + 2;
    for (long m = m_lo; m <= m_hi; ++m) {
        rational t = (lt.arg_turns - quarter + half * m) / abs_e;
        if (offset == 0.0) {
            if (t < 0 || t >= cover) continue;
            out.push_back({t, 0.0});
        } else {
            double v = to_double(t) + offset / (2.0 * std::numbers::pi);
            if (v < 0.0 || v >= to_double(cover)) continue;
            out.push_back({t, offset});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const exact_angle& a, const exact_angle& b) { return a.radians() < b.radians(); });
    return out;
}

struct front_crossing {
    exact_angle angle;          // in (0, 1] turns; exactly 1 means the seam
    std::size_t slot = 0;       // lower of the two swapped height positions
    std::size_t west_sector = 0;
    std::size_t east_sector = 0;
    std::size_t lower_west = 0; // strand at position slot on the west side
    std::size_t upper_west = 0; // strand at position slot+1 on the west side
};

// Combinatorial Legendrian front on the cylinder S^1 x R.  Strands are the
// sheets of the deck orbits of a formal type, co-oriented downward.  The
// circle is cut at theta = 0; sector k spans the arc between consecutive
// crossing angles, with sector 0 starting at the cut.  Crossing the cut
// eastward relabels strand (orbit, sheet) to (orbit, sheet+1).
struct front_diagram {
    std::size_t strands = 0;
    std::vector<front_crossing> crossings;                       // sorted by angle
    std::vector<std::vector<std::size_t>> sector_orders;         // ascending height
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::pair<std::size_t, std::size_t>> strand_class; // (orbit, sheet)
    std::vector<std::size_t> deck_next;                          // seam continuation per strand
    int zero_orbit = -1;
    bool seam_crossing = false;                                  // last crossing sits at the cut
    std::vector<puiseux_class> sheet_classes;                    // per strand; empty if loaded from JSON

    std::size_t sectors() const { return sector_orders.size(); }

    std::size_t component_of(std::size_t strand) const {
        for (std::size_t k = 0; k < components.size(); ++k)
            for (std::size_t s : components[k])
                if (s == strand) return k;
        fail(errc::index_out_of_range, "strand id out of range");
    }

    // Height position of a strand in a sector order.
    std::size_t position_in(std::size_t sector, std::size_t strand) const {
        const auto& order = sector_orders[sector];
        for (std::size_t p = 0; p < order.size(); ++p)
            if (order[p] == strand) return p;
        fail(errc::index_out_of_range, "strand not present in sector order");
    }
};

namespace detail {

inline std::vector<std::size_t> apply_swap(std::vector<std::size_t> order, std::size_t slot) {
    std::swap(order[slot], order[slot + 1]);
    return order;
}

inline std::vector<std::size_t> apply_relabel(const std::vector<std::size_t>& order,
                                              const std::vector<std::size_t>& next) {
    std::vector<std::size_t> out(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) out[p] = next[order[p]];
    return out;
}

} // namespace detail

// Builds the front of a formal type at radius eps.  Crossing angles come
// from the leading terms of pairwise differences (exact); strand ordering
// within sectors is sampled numerically at midpoints and cross-checked by
// replaying the crossing swaps, so an unsuitable eps fails loudly.
inline front_diagram build_front(const formal_type& type, const rational& eps) {
    if (eps <= 0) fail(errc::invalid_argument, "epsilon must be positive");
    if (type.orbits().empty()) fail(errc::invalid_argument, "empty formal type");

    front_diagram d;
    for (std::size_t o = 0; o < type.orbits().size(); ++o) {
        const auto& orbit = type.orbits()[o];
        for (std::size_t s = 0; s < orbit.size(); ++s) {
            d.strand_class.emplace_back(o, s);
            d.sheet_classes.push_back(orbit[s]);
            d.deck_next.push_back(0); // filled below
        }
    }
    d.strands = d.sheet_classes.size();
    d.zero_orbit = type.zero_orbit();

    // Seam continuation: sheet s joins sheet s+1 of the same orbit.
    {
        std::size_t base = 0;
        for (const auto& orbit : type.orbits()) {
            for (std::size_t s = 0; s < orbit.size(); ++s)
                d.deck_next[base + s] = base + (s + 1) % orbit.size();
            base += orbit.size();
        }
    }

    // Components: cycles of the continuation permutation.
    {
        std::vector<bool> seen(d.strands, false);
        for (std::size_t s = 0; s < d.strands; ++s) {
            if (seen[s]) continue;
            std::vector<std::size_t> comp;
            std::size_t cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                comp.push_back(cur);
                cur = d.deck_next[cur];
            }
            std::sort(comp.begin(), comp.end());
            d.components.push_back(std::move(comp));
        }
    }

    // Crossing angles per strand pair, restricted to the base circle.
    struct raw_crossing {
        exact_angle angle;
        std::size_t a, b;
        double rad;
    };
    std::vector<raw_crossing> raw;
    for (std::size_t i = 0; i < d.strands; ++i) {
        for (std::size_t j = i + 1; j < d.strands; ++j) {
            puiseux_class diff = difference(d.sheet_classes[i], d.sheet_classes[j]);
            if (diff.is_zero()) fail(errc::duplicate_class, "two strands carry the same class");
            detail::leading_term lt = detail::leading_of_difference(diff);
            rational abs_e = -lt.exponent;
            double abs_e_d = to_double(abs_e);
            double offset = lt.arg_residue_rad / abs_e_d;
            rational quarter = make_rational(1, 4), half = make_rational(1, 2);
            long m_lo = static_cast<long>(std::floor(to_double((-abs_e - lt.arg_turns + quarter) * 2))) - 2;
            long m_hi = static_cast<long>(std::ceil(to_double((abs_e * 2 - lt.arg_turns + quarter) * 2))) + 2;
            for (long m = m_lo; m <= m_hi; ++m) {
                rational t = (lt.arg_turns - quarter + half * m) / abs_e;
                if (offset == 0.0) {
                    if (t < 0 || t >= 1) continue;
                    if (t == 0) t = 1; // seam convention: exact 0 is the cut itself
                    raw.push_back({{t, 0.0}, i, j, 0.0});
                } else {
                    double v = to_double(t) + offset / (2.0 * std::numbers::pi);
                    if (v < 0.0 || v >= 1.0) continue;
                    raw.push_back({{t, offset}, i, j, 0.0});
                }
            }
        }
    }
    for (auto& rc : raw) rc.rad = rc.angle.radians();
    std::sort(raw.begin(), raw.end(), [](const raw_crossing& x, const raw_crossing& y) { return x.rad < y.rad; });
    for (std::size_t k = 0; k + 1 < raw.size(); ++k) {
        if (raw[k].angle == raw[k + 1].angle || raw[k + 1].rad - raw[k].rad < front_tie_tolerance)
            fail(errc::degenerate_front,
                 "crossing angles coincide; perturb the coefficients of the formal type");
    }

    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t n_cross = raw.size();
    d.seam_crossing = n_cross > 0 && raw.back().angle.turns == 1 && raw.back().angle.is_exact();
    std::size_t n_sectors = n_cross == 0 ? 1 : (d.seam_crossing ? n_cross : n_cross + 1);

    // Sector boundaries in radians (numeric; midpoints only).
    std::vector<double> bounds{0.0};
    for (const auto& rc : raw) bounds.push_back(rc.rad);
    if (!d.seam_crossing) bounds.push_back(two_pi);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k)
        if (bounds[k + 1] - bounds[k] < front_tie_tolerance)
            fail(errc::degenerate_front, "angular sector is numerically empty; perturb the formal type");

    for (std::size_t k = 0; k < n_sectors; ++k) {
        double mid = 0.5 * (bounds[k] + bounds[k + 1]);
        std::vector<std::pair<double, std::size_t>> heights;
        for (std::size_t s = 0; s < d.strands; ++s)
            heights.emplace_back(d.sheet_classes[s].evaluate_re(eps, mid), s);
        std::sort(heights.begin(), heights.end());
        for (std::size_t p = 0; p + 1 < heights.size(); ++p)
            if (heights[p + 1].first - heights[p].first < front_tie_tolerance)
                fail(errc::degenerate_front, "strand heights tie at a sector midpoint; change epsilon");
        std::vector<std::size_t> order;
        for (auto& [h, s] : heights) order.push_back(s);
        d.sector_orders.push_back(std::move(order));
    }

    // Slots, plus the swap/relabel replay consistency check.
    for (std::size_t k = 0; k < n_cross; ++k) {
        front_crossing fc;
        fc.angle = raw[k].angle;
        fc.west_sector = k;
        fc.east_sector = (k + 1) % n_sectors;
        const auto& west = d.sector_orders[fc.west_sector];
        std::size_t pa = 0, pb = 0;
        for (std::size_t p = 0; p < west.size(); ++p) {
            if (west[p] == raw[k].a) pa = p;
            if (west[p] == raw[k].b) pb = p;
        }
        if (pa > pb) std::swap(pa, pb);
        if (pb != pa + 1)
            fail(errc::degenerate_front, "crossing strands are not height-adjacent; choose a smaller epsilon");
        fc.slot = pa;
        fc.lower_west = west[pa];
        fc.upper_west = west[pb];
        std::vector<std::size_t> expected = detail::apply_swap(west, fc.slot);
        bool through_seam = fc.east_sector == 0;
        if (through_seam) expected = detail::apply_relabel(expected, d.deck_next);
        if (expected != d.sector_orders[fc.east_sector])
            fail(errc::degenerate_front, "sector orders disagree with crossing data; choose a smaller epsilon");
        d.crossings.push_back(fc);
    }
    if (!d.seam_crossing) {
        std::vector<std::size_t> expected = detail::apply_relabel(d.sector_orders[n_sectors - 1], d.deck_next);
        if (expected != d.sector_orders[0])
            fail(errc::degenerate_front, "orders do not close up around the circle; choose a smaller epsilon");
    }
    return d;
}

inline std::size_t crossing_count(const formal_type& type, const rational& eps) {
    return build_front(type, eps).crossings.size();
}

// Faces of the front on the cylinder.  Cells are (sector, gap) with gap g
// the interval between height positions g-1 and g; cells merge across
// sector boundaries except at the pinched middle gap of each crossing.
// Region ids are assigned in lexicographic (sector, gap) discovery order,
// so the unbounded bottom region is always id 0.
struct front_regions {
    std::size_t count = 0;
    std::vector<std::vector<std::size_t>> cell_region; // [sector][gap]
    std::size_t bottom = 0;
    std::size_t top = 0;
};

inline front_regions compute_regions(const front_diagram& d) {
    std::size_t n_sec = d.sectors();
    std::size_t gaps = d.strands + 1;
    std::vector<std::size_t> parent(n_sec * gaps);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto join = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    auto cell = [&](std::size_t sector, std::size_t gap) { return sector * gaps + gap; };

    for (const auto& fc : d.crossings)
        for (std::size_t g = 0; g < gaps; ++g)
            if (g != fc.slot + 1) join(cell(fc.west_sector, g), cell(fc.east_sector, g));
    if (!d.seam_crossing && n_sec > 1)
        for (std::size_t g = 0; g < gaps; ++g) join(cell(n_sec - 1, g), cell(0, g));

    front_regions r;
    r.cell_region.assign(n_sec, std::vector<std::size_t>(gaps));
    std::vector<std::size_t> id_of(parent.size(), static_cast<std::size_t>(-1));
    for (std::size_t s = 0; s < n_sec; ++s)
        for (std::size_t g = 0; g < gaps; ++g) {
            std::size_t root = find(cell(s, g));
            if (id_of[root] == static_cast<std::size_t>(-1)) id_of[root] = r.count++;
            r.cell_region[s][g] = id_of[root];
        }
    r.bottom = r.cell_region[0][0];
    r.top = r.cell_region[0][d.strands];
    return r;
}

} // namespace legsheaf
