#pragma once

#include "legsheaf/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace legsheaf {

using ivec = std::vector<bigint>;

// Integral lattice with Euler pairing chi given by a Gram matrix in the
// reference basis: chi(x, y) = x^T G y.
struct euler_lattice {
    std::size_t rank = 0;
    std::vector<ivec> gram; // rank x rank

    bigint chi(const ivec& x, const ivec& y) const {
        if (x.size() != rank || y.size() != rank) fail(errc::shape_mismatch, "vector rank mismatch");
        bigint acc = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            if (x[i] == 0) continue;
            bigint row = 0;
            for (std::size_t j = 0; j < rank; ++j)
                if (y[j] != 0) row += gram[i][j] * y[j];
            acc += x[i] * row;
        }
        return acc;
    }
};

inline euler_lattice make_lattice(std::vector<ivec> gram) {
    euler_lattice l;
    l.rank = gram.size();
    for (const auto& row : gram)
        if (row.size() != l.rank) fail(errc::shape_mismatch, "gram matrix is not square");
    l.gram = std::move(gram);
    return l;
}

// Hermite normal form of the row span: canonical representative of a
// sublattice (positive pivots, entries above a pivot reduced).  Used for
// exact sublattice equality, insensitive to sign and basis choice.
inline std::vector<ivec> hermite_normal_form(std::vector<ivec> rows) {
    if (rows.empty()) return rows;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // Euclidean elimination in column c below row r.
        for (;;) {
            std::size_t p = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
            if (p == rows.size()) break;
            std::swap(rows[r], rows[p]);
            bool clear = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                bigint f = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
                if (rows[i][c] != 0) clear = false;
            }
            if (clear) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            bigint f = rows[i][c] / rows[r][c];
            if (rows[i][c] < 0 && f * rows[r][c] != rows[i][c]) --f; // floor division
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Ordered exceptional sequence: chi(e_i, e_i) = 1 and chi(e_j, e_i) = 0 for
// j > i.  Construction re-verifies the invariants.
struct exceptional_sequence {
    euler_lattice lattice;
    std::vector<ivec> vectors;
};

inline void verify_exceptional(const exceptional_sequence& s) {
    for (std::size_t i = 0; i < s.vectors.size(); ++i) {
        if (s.lattice.chi(s.vectors[i], s.vectors[i]) != 1)
            fail(errc::invalid_argument, "chi(e_" + std::to_string(i + 1) + ", e_" + std::to_string(i + 1) +
                                             ") != 1; sequence is not exceptional");
        for (std::size_t j = i + 1; j < s.vectors.size(); ++j)
            if (s.lattice.chi(s.vectors[j], s.vectors[i]) != 0)
                fail(errc::invalid_argument, "chi(e_" + std::to_string(j + 1) + ", e_" + std::to_string(i + 1) +
                                                 ") != 0; sequence is not exceptional");
    }
}

inline exceptional_sequence make_exceptional_sequence(euler_lattice lattice, std::vector<ivec> vectors) {
    exceptional_sequence s{std::move(lattice), std::move(vectors)};
    verify_exceptional(s);
    return s;
}

// Left mutation at position i (1-based): (e_i, e_{i+1}) becomes
// (e_{i+1} - chi(e_i, e_{i+1}) e_i, e_i).
inline exceptional_sequence pair_left_mutation(const exceptional_sequence& s, std::size_t i) {
    if (i < 1 || i >= s.vectors.size())
        fail(errc::position_out_of_range, "mutation position " + std::to_string(i) + " out of range");
    exceptional_sequence out = s;
    const ivec& a = s.vectors[i - 1];
    const ivec& b = s.vectors[i];
    bigint c = s.lattice.chi(a, b);
    ivec mutated(b);
    for (std::size_t k = 0; k < mutated.size(); ++k) mutated[k] -= c * a[k];
    out.vectors[i - 1] = std::move(mutated);
    out.vectors[i] = a;
    verify_exceptional(out);
    return out;
}

// Two-sided inverse of the left mutation: (e_i, e_{i+1}) becomes
// (e_{i+1}, e_i - chi(e_i, e_{i+1}) e_{i+1}).
inline exceptional_sequence pair_right_mutation(const exceptional_sequence& s, std::size_t i) {
    if (i < 1 || i >= s.vectors.size())
        fail(errc::position_out_of_range, "mutation position " + std::to_string(i) + " out of range");
    exceptional_sequence out = s;
    const ivec& a = s.vectors[i - 1];
    const ivec& b = s.vectors[i];
    bigint c = s.lattice.chi(a, b);
    ivec mutated(a);
    for (std::size_t k = 0; k < mutated.size(); ++k) mutated[k] -= c * b[k];
    out.vectors[i - 1] = b;
    out.vectors[i] = std::move(mutated);
    verify_exceptional(out);
    return out;
}

// Braid word over s1..s{n-1} (capital letter = inverse generator), applied
// left to right.
inline exceptional_sequence apply_braid_word(exceptional_sequence s, const std::string& word) {
    std::size_t pos = 0;
    while (pos < word.size()) {
        if (word[pos] == ' ' || word[pos] == '\t') {
            ++pos;
            continue;
        }
        char c = word[pos];
        if (c != 's' && c != 'S') fail(errc::parse_error, "bad braid word generator at position " + std::to_string(pos));
        bool inv = c == 'S';
        ++pos;
        if (pos >= word.size() || !std::isdigit(static_cast<unsigned char>(word[pos])))
            fail(errc::parse_error, "braid generator needs an index at position " + std::to_string(pos));
        std::size_t idx = 0;
        while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) {
            idx = idx * 10 + static_cast<std::size_t>(word[pos] - '0');
            ++pos;
        }
        s = inv ? pair_right_mutation(s, idx) : pair_left_mutation(s, idx);
    }
    return s;
}

// Two-block semi-orthogonal decomposition shadow: sublattice bases A and B
// whose union is a basis of the lattice, each with unimodular restricted
// Gram so mutations stay integral.
struct sod_pair {
    euler_lattice lattice;
    std::vector<ivec> block_a;
    std::vector<ivec> block_b;
};

namespace detail {

// Integer determinant by fraction-free (Bareiss) elimination.
inline bigint int_determinant(std::vector<ivec> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    bigint sign = 1, prev = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    return sign * m[n - 1][n - 1];
}

inline std::vector<ivec> block_gram(const euler_lattice& l, const std::vector<ivec>& block) {
    std::vector<ivec> g(block.size(), ivec(block.size()));
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j) g[i][j] = l.chi(block[i], block[j]);
    return g;
}

// Solve G c = b over the integers (Cramer with exact integer
// determinants).  Fails if the solution is not integral.
inline ivec solve_integral(const std::vector<ivec>& g, const ivec& b, const bigint& det_g) {
    std::size_t n = g.size();
    ivec c(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<ivec> gk = g;
        for (std::size_t i = 0; i < n; ++i) gk[i][k] = b[i];
        bigint num = int_determinant(gk);
        if (num % det_g != 0)
            fail(errc::singular_block_gram, "mutation is not integrally solvable on this block");
        c[k] = num / det_g;
    }
    return c;
}

} // namespace detail

inline sod_pair make_sod_pair(euler_lattice lattice, std::vector<ivec> block_a, std::vector<ivec> block_b) {
    sod_pair p{std::move(lattice), std::move(block_a), std::move(block_b)};
    if (p.block_a.size() + p.block_b.size() != p.lattice.rank)
        fail(errc::invalid_argument, "blocks do not span: rank mismatch");
    std::vector<ivec> all = p.block_a;
    all.insert(all.end(), p.block_b.begin(), p.block_b.end());
    if (hermite_normal_form(all).size() != p.lattice.rank)
        fail(errc::invalid_argument, "block vectors are linearly dependent");
    for (const auto* blk : {&p.block_a, &p.block_b}) {
        bigint det = detail::int_determinant(detail::block_gram(p.lattice, *blk));
        if (det != 1 && det != -1)
            fail(errc::singular_block_gram, "restricted Euler form has determinant " + det.str() +
                                                "; mutation is not integrally solvable");
    }
    return p;
}

// Left mutation of the pair: (A, B) becomes (L_A B, A) where L_A x is the
// projection of x away from A with respect to chi(a, .), i.e. the unique
// x - p with p in A and chi(a, x - p) = 0 for all a in A.
inline sod_pair block_left_mutation(const sod_pair& p) {
    std::vector<ivec> gram_a = detail::block_gram(p.lattice, p.block_a);
    bigint det = detail::int_determinant(gram_a);
    if (det == 0) fail(errc::singular_block_gram, "restricted Euler form on the first block is singular");
    std::vector<ivec> mutated;
    for (const ivec& x : p.block_b) {
        ivec b(p.block_a.size());
        for (std::size_t j = 0; j < p.block_a.size(); ++j) b[j] = p.lattice.chi(p.block_a[j], x);
        ivec coeff = detail::solve_integral(gram_a, b, det);
        ivec y = x;
        for (std::size_t j = 0; j < p.block_a.size(); ++j)
            for (std::size_t k = 0; k < y.size(); ++k) y[k] -= coeff[j] * p.block_a[j][k];
        mutated.push_back(std::move(y));
    }
    sod_pair out;
    out.lattice = p.lattice;
    out.block_a = std::move(mutated);
    out.block_b = p.block_a;
    return out;
}

// Least k <= max_iter with the k-fold left mutation returning the same
// ordered pair of sublattices (Hermite forms compared; sublattice spans are
// sign-insensitive since shift acts by -1 on classes).
inline std::optional<std::size_t> mutation_period(const sod_pair& p, std::size_t max_iter) {
    if (max_iter < 1) fail(errc::invalid_argument, "max_iter must be at least 1");
    std::vector<ivec> a0 = hermite_normal_form(p.block_a);
    std::vector<ivec> b0 = hermite_normal_form(p.block_b);
    sod_pair cur = p;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        cur = block_left_mutation(cur);
        if (hermite_normal_form(cur.block_a) == a0 && hermite_normal_form(cur.block_b) == b0)
            return k;
    }
    return std::nullopt;
}

} // namespace legsheaf
