#pragma once

#include "legsheaf/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace legsheaf {

// Coefficient of the form c * e^{2 pi i t}: a Gaussian rational with an
// extra exact phase in turns.  Deck transformations of ramified classes
// produce phases that are rational turns but leave Q(i); quarter turns are
// folded back into c, so t is canonical in [0, 1/4).
struct phased_coeff {
    scalar base;
    rational turns;

    phased_coeff() = default;
    phased_coeff(scalar c) : base(std::move(c)) {}   // NOLINT(google-explicit-constructor)
    phased_coeff(scalar c, rational t) : base(std::move(c)), turns(std::move(t)) { normalize(); }

    void normalize() {
        if (base.is_zero()) {
            turns = 0;
            return;
        }
        // floor(4 t) quarter turns fold into the Gaussian part as powers of i.
        rational q4 = turns * 4;
        bigint whole = numerator(q4) / denominator(q4);
        if (numerator(q4) < 0 && whole * denominator(q4) != numerator(q4)) --whole;
        turns -= make_rational(whole, 4);
        int k = static_cast<int>(whole % 4);
        if (k < 0) k += 4;
        for (int j = 0; j < k; ++j) base = base * scalar_i();
    }

    bool is_zero() const { return base.is_zero(); }
    bool is_plain() const { return turns == 0; }

    phased_coeff negated() const { return {-base, turns}; }

    // Multiply by e^{2 pi i t}.
    phased_coeff rotated(const rational& t) const { return {base, turns + t}; }

    friend bool operator==(const phased_coeff& a, const phased_coeff& b) {
        return a.base == b.base && a.turns == b.turns;
    }
    friend bool operator!=(const phased_coeff& a, const phased_coeff& b) { return !(a == b); }

    double abs() const {
        double re = to_double(base.re), im = to_double(base.im);
        return std::hypot(re, im);
    }

    // Argument split into an exact rational-turn part and a residue in
    // radians.  The residue is zero exactly when the Gaussian part lies on
    // one of the eight half-axes of Q(i).
    void arg(rational& out_turns, double& out_residue_rad) const {
        out_turns = turns;
        out_residue_rad = 0.0;
        const rational& re = base.re;
        const rational& im = base.im;
        if (im == 0) {
            if (re < 0) out_turns += make_rational(1, 2);
            return;
        }
        if (re == 0) {
            out_turns += im > 0 ? make_rational(1, 4) : make_rational(3, 4);
            return;
        }
        if (re == im) {
            out_turns += re > 0 ? make_rational(1, 8) : make_rational(5, 8);
            return;
        }
        if (re == -im) {
            out_turns += re > 0 ? make_rational(7, 8) : make_rational(3, 8);
            return;
        }
        out_residue_rad = std::atan2(to_double(im), to_double(re));
    }

    double arg_radians() const {
        rational t;
        double res;
        arg(t, res);
        return 2.0 * std::numbers::pi * to_double(t) + res;
    }
};

inline int compare(const phased_coeff& a, const phased_coeff& b) {
    if (int c = compare(a.base, b.base)) return c;
    return compare(a.turns, b.turns);
}

struct puiseux_term {
    rational exponent;
    phased_coeff coeff;
};

// Exponential-factor class: a finite sum of terms c_e z^e modulo
// z^{-1} C[[z^{1/l}]].  Normal form keeps only exponents < -1, sorted
// increasing, with like terms combined and zero coefficients dropped.
// The empty term list is the zero class.
class puiseux_class {
  public:
    puiseux_class() = default;
    explicit puiseux_class(std::vector<puiseux_term> terms) : terms_(std::move(terms)) { normalize(); }

    const std::vector<puiseux_term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // All coefficients lie in Q(i) (no residual phase), so the class is
    // expressible in the plain text/JSON syntax.
    bool is_plain() const {
        for (const auto& t : terms_)
            if (!t.coeff.is_plain()) return false;
        return true;
    }

    // Least l >= 1 with every exponent in (1/l) Z.
    bigint ramification() const {
        bigint l = 1;
        for (const auto& t : terms_) l = boost::multiprecision::lcm(l, denominator(t.exponent));
        return l;
    }

    // Image under the deck transformation z^{1/l} -> zeta_l z^{1/l}:
    // the coefficient at exponent e picks up e^{2 pi i e}.
    puiseux_class deck() const {
        std::vector<puiseux_term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.exponent, t.coeff.rotated(t.exponent)});
        return puiseux_class(std::move(out));
    }

    // Full deck orbit starting from this class.  Its size equals the
    // ramification index.
    std::vector<puiseux_class> deck_orbit() const {
        std::vector<puiseux_class> orbit{*this};
        puiseux_class cur = deck();
        while (!(cur == *this)) {
            orbit.push_back(cur);
            cur = cur.deck();
        }
        return orbit;
    }

    // Re f(eps e^{i theta}) on the cover.  Floating point; for plotting and
    // height ordering only.
    double evaluate_re(const rational& eps, double theta) const {
        double x = 0.0;
        double le = std::log(to_double(eps));
        for (const auto& t : terms_) {
            double e = to_double(t.exponent);
            x += t.coeff.abs() * std::exp(e * le) * std::cos(t.coeff.arg_radians() + e * theta);
        }
        return x;
    }

    friend bool operator==(const puiseux_class& a, const puiseux_class& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const puiseux_class& a, const puiseux_class& b) { return !(a == b); }

  private:
    void normalize() {
        std::stable_sort(terms_.begin(), terms_.end(), [](const puiseux_term& a, const puiseux_term& b) {
            if (a.exponent != b.exponent) return a.exponent < b.exponent;
            return a.coeff.turns < b.coeff.turns;
        });
        std::vector<puiseux_term> out;
        for (auto& t : terms_) {
            if (t.exponent >= -1 || t.coeff.is_zero()) continue;
            if (!out.empty() && out.back().exponent == t.exponent) {
                if (out.back().coeff.turns == t.coeff.turns) {
                    out.back().coeff = phased_coeff(out.back().coeff.base + t.coeff.base, t.coeff.turns);
                    if (out.back().coeff.is_zero()) out.pop_back();
                    continue;
                }
                // Distinct residual phases cannot cancel (the only roots of
                // unity in Q(i) are the quarter turns, already folded), so
                // keep both summands.
                out.push_back(t);
                continue;
            }
            out.push_back(t);
        }
        terms_ = std::move(out);
    }

    std::vector<puiseux_term> terms_;
};

// Deterministic total order on classes, used for canonical orbit and
// formal-type ordering.  Zero sorts first.
inline int compare(const puiseux_class& a, const puiseux_class& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (int c = compare(ta[i].exponent, tb[i].exponent)) return c;
        if (int c = compare(ta[i].coeff, tb[i].coeff)) return c;
    }
    return 0;
}

// f - g as a term list.  Terms at equal exponents with distinct residual
// phases stay separate; the class normal form keeps them both.
inline puiseux_class difference(const puiseux_class& f, const puiseux_class& g) {
    std::vector<puiseux_term> terms = f.terms();
    for (const auto& t : g.terms()) terms.push_back({t.exponent, t.coeff.negated()});
    return puiseux_class(std::move(terms));
}

// Expression grammar:
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := coeff '*' zpow | zpow | coeff
//   coeff := '(' gaussian ')' | gaussian-atom        (atoms: 2/3, i, -2i, 7)
//   zpow  := 'z' '^' ( '(' signed-rational ')' | signed-integer )
// Terms with exponent >= -1 are quotiented away by normalization.
inline puiseux_class parse_class(const std::string& text) {
    detail::scalar_lexer lex(text);
    std::vector<puiseux_term> terms;
    bool first = true;
    for (;;) {
        lex.skip_ws();
        if (lex.eof()) {
            if (first) lex.error("empty expression");
            break;
        }
        int sign = 1;
        if (lex.peek() == '+' || lex.peek() == '-') {
            sign = lex.peek() == '-' ? -1 : 1;
            ++lex.pos;
        } else if (!first) {
            lex.error("expected '+' or '-'");
        }
        lex.skip_ws();
        scalar coeff(1);
        bool have_coeff = false;
        if (lex.peek() == '(') {
            ++lex.pos;
            coeff = lex.parse_gaussian();
            lex.skip_ws();
            if (lex.peek() != ')') lex.error("expected ')'");
            ++lex.pos;
            have_coeff = true;
        } else if (lex.peek() != 'z') {
            coeff = lex.parse_gaussian_atom();
            have_coeff = true;
        }
        lex.skip_ws();
        if (have_coeff && lex.peek() == '*') {
            ++lex.pos;
            lex.skip_ws();
        }
        rational exponent = 0;
        if (lex.peek() == 'z') {
            ++lex.pos;
            lex.skip_ws();
            if (lex.peek() != '^') lex.error("expected '^'");
            ++lex.pos;
            lex.skip_ws();
            if (lex.peek() == '(') {
                ++lex.pos;
                exponent = lex.parse_signed_rational();
                lex.skip_ws();
                if (lex.peek() != ')') lex.error("expected ')'");
                ++lex.pos;
            } else {
                exponent = lex.parse_signed_rational();
            }
        } else if (!have_coeff) {
            lex.error("expected coefficient or z power");
        }
        if (sign < 0) coeff = -coeff;
        terms.push_back({exponent, phased_coeff(coeff)});
        first = false;
    }
    return puiseux_class(std::move(terms));
}

namespace detail {

inline std::string render_exponent(const rational& e) {
    std::string s = numerator(e).str();
    if (denominator(e) != 1) s += "/" + denominator(e).str();
    return s;
}

} // namespace detail

// Pretty-printer; parse_class(render_class(c)) == c for plain classes.
inline std::string render_class(const puiseux_class& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c.terms().size(); ++i) {
        const auto& t = c.terms()[i];
        scalar coeff = t.coeff.base;
        bool negative_real = coeff.im == 0 && coeff.re < 0;
        if (i > 0) out += negative_real ? " - " : " + ";
        else if (negative_real) out += "-";
        if (negative_real) coeff = -coeff;
        std::string cs = render(coeff);
        if (cs == "1")
            out += "z^(" + detail::render_exponent(t.exponent) + ")";
        else {
            bool atom = coeff.im == 0 || coeff.re == 0;
            out += (atom ? cs : "(" + cs + ")") + "*z^(" + detail::render_exponent(t.exponent) + ")";
        }
        if (!t.coeff.is_plain()) out += "{e^2pi i " + detail::render_exponent(t.coeff.turns) + "}";
    }
    return out;
}

// Formal type: a set of distinct classes closed under deck transformation,
// grouped into orbits.  Orbits are sorted canonically; sheet s of an orbit
// is deck^s of its minimal class.
class formal_type {
  public:
    formal_type() = default;

    // Builds the orbit closure of the given classes; duplicates collapse.
    static formal_type from_classes(const std::vector<puiseux_class>& classes) {
        formal_type t;
        for (const auto& c : classes) {
            std::vector<puiseux_class> orbit = c.deck_orbit();
            puiseux_class rep = orbit.front();
            for (const auto& o : orbit)
                if (compare(o, rep) < 0) rep = o;
            bool seen = false;
            for (const auto& existing : t.orbits_)
                if (existing.front() == rep) {
                    seen = true;
                    break;
                }
            if (!seen) t.orbits_.push_back(rep.deck_orbit());
        }
        std::sort(t.orbits_.begin(), t.orbits_.end(),
                  [](const std::vector<puiseux_class>& a, const std::vector<puiseux_class>& b) {
                      return compare(a.front(), b.front()) < 0;
                  });
        return t;
    }

    const std::vector<std::vector<puiseux_class>>& orbits() const { return orbits_; }

    std::size_t class_count() const {
        std::size_t n = 0;
        for (const auto& o : orbits_) n += o.size();
        return n;
    }

    // Orbit index of the zero class, or -1 if absent.
    int zero_orbit() const {
        for (std::size_t i = 0; i < orbits_.size(); ++i)
            if (orbits_[i].front().is_zero()) return static_cast<int>(i);
        return -1;
    }

  private:
    std::vector<std::vector<puiseux_class>> orbits_;
};

} // namespace legsheaf
