#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace legsheaf {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// Errors carry a stable code so callers (CLI, tests) can distinguish
// malformed input from data that merely fails validation.
enum class errc {
    parse_error,
    shape_mismatch,
    subspace_not_preserved,
    index_out_of_range,
    unknown_segment,
    transport_not_iso,
    not_a_flag,
    equal_classes,
    duplicate_class,
    degenerate_front,
    position_out_of_range,
    singular_block_gram,
    flag_mismatch,
    no_zero_strand,
    invalid_argument,
};

class calc_error : public std::runtime_error {
  public:
    calc_error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::parse_error: return "ParseError";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::subspace_not_preserved: return "SubspaceNotPreserved";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::unknown_segment: return "UnknownSegment";
    case errc::transport_not_iso: return "TransportNotIso";
    case errc::not_a_flag: return "NotAFlag";
    case errc::equal_classes: return "EqualClasses";
    case errc::duplicate_class: return "DuplicateClass";
    case errc::degenerate_front: return "DegenerateFront";
    case errc::position_out_of_range: return "PositionOutOfRange";
    case errc::singular_block_gram: return "SingularBlockGram";
    case errc::flag_mismatch: return "FlagMismatch";
    case errc::no_zero_strand: return "NoZeroStrand";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw calc_error(code, std::string(errc_name(code)) + ": " + what);
}

// cpp_rational's two-argument constructor rejects negative denominators,
// so normalize through division.
inline rational make_rational(const bigint& num, const bigint& den) {
    if (den == 0) fail(errc::invalid_argument, "zero denominator");
    return rational(num) / rational(den);
}

inline double to_double(const rational& r) { return r.convert_to<double>(); }

// Element of Q(i).  Purely real values have im == 0; arithmetic is exact.
struct scalar {
    rational re;
    rational im;

    scalar() = default;
    scalar(int v) : re(v) {}                   // NOLINT(google-explicit-constructor)
    scalar(rational v) : re(std::move(v)) {}   // NOLINT(google-explicit-constructor)
    scalar(rational r, rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend scalar operator+(const scalar& a, const scalar& b) { return {a.re + b.re, a.im + b.im}; }
    friend scalar operator-(const scalar& a, const scalar& b) { return {a.re - b.re, a.im - b.im}; }
    friend scalar operator-(const scalar& a) { return {-a.re, -a.im}; }
    friend scalar operator*(const scalar& a, const scalar& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend scalar operator/(const scalar& a, const scalar& b) {
        rational n = b.re * b.re + b.im * b.im;
        if (n == 0) fail(errc::invalid_argument, "division by zero scalar");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    scalar& operator+=(const scalar& o) { return *this = *this + o; }
    scalar& operator-=(const scalar& o) { return *this = *this - o; }
    scalar& operator*=(const scalar& o) { return *this = *this * o; }
    scalar& operator/=(const scalar& o) { return *this = *this / o; }
    friend bool operator==(const scalar& a, const scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const scalar& a, const scalar& b) { return !(a == b); }
};

inline scalar scalar_i() { return scalar(rational(0), rational(1)); }

// Total order used for deterministic canonical sorts (not a field order).
inline int compare(const rational& a, const rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

inline int compare(const scalar& a, const scalar& b) {
    if (int c = compare(a.re, b.re)) return c;
    return compare(a.im, b.im);
}

namespace detail {

inline std::string render_rational(const rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace detail

// Canonical string form: "0", "-3/2", "i", "-2/3i", "1/2+1/2i", "2-i".
inline std::string render(const scalar& s) {
    if (s.im == 0) return detail::render_rational(s.re);
    std::string im_part;
    rational mag = s.im < 0 ? -s.im : s.im;
    if (mag == 1)
        im_part = "i";
    else
        im_part = detail::render_rational(mag) + "i";
    if (s.re == 0) return (s.im < 0 ? "-" : "") + im_part;
    return detail::render_rational(s.re) + (s.im < 0 ? "-" : "+") + im_part;
}

namespace detail {

// Recursive-descent scanner over scalar literals, shared by the matrix JSON
// reader and the Puiseux expression parser.
struct scalar_lexer {
    const std::string& text;
    std::size_t pos = 0;

    explicit scalar_lexer(const std::string& t) : text(t) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }
    void skip_ws() {
        while (!eof() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    [[noreturn]] void error(const std::string& msg) const {
        fail(errc::parse_error, msg + " at position " + std::to_string(pos) + " in \"" + text + "\"");
    }

    bigint parse_uint() {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) error("expected digit");
        bigint v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return v;
    }

    // [sign] p [ "/" q ]
    rational parse_signed_rational() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++pos;
            skip_ws();
        }
        bigint num = parse_uint();
        bigint den = 1;
        skip_ws();
        if (peek() == '/') {
            ++pos;
            den = parse_uint();
            if (den == 0) error("zero denominator");
        }
        rational r = make_rational(num, den);
        return neg ? -r : r;
    }

    // One summand of a Gaussian literal: "2/3", "i", "-i", "2i", "-1/2i".
    // Returns the value; out_imag reports whether the 'i' suffix was present.
    scalar parse_gaussian_atom() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++pos;
            skip_ws();
        }
        rational mag;
        if (peek() == 'i') {
            ++pos;
            mag = 1;
            scalar v(rational(0), mag);
            return neg ? -v : v;
        }
        bigint num = parse_uint();
        bigint den = 1;
        skip_ws();
        if (peek() == '/') {
            ++pos;
            den = parse_uint();
            if (den == 0) error("zero denominator");
        }
        mag = make_rational(num, den);
        if (peek() == 'i') {
            ++pos;
            scalar v(rational(0), mag);
            return neg ? -v : v;
        }
        scalar v(mag, rational(0));
        return neg ? -v : v;
    }

    // Full Gaussian literal: one or two atoms ("1/2+1/2i", "2-i", "-3/2", "i").
    scalar parse_gaussian() {
        scalar v = parse_gaussian_atom();
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            scalar w = parse_gaussian_atom();
            if (v.im != 0 || w.im == 0) error("malformed gaussian literal");
            v = v + w;
        }
        return v;
    }
};

} // namespace detail

// Parses the canonical scalar string format.  The whole string must be
// consumed; trailing garbage is a ParseError.
inline scalar parse_scalar(const std::string& text) {
    detail::scalar_lexer lex(text);
    scalar v = lex.parse_gaussian();
    lex.skip_ws();
    if (!lex.eof()) lex.error("trailing characters");
    return v;
}

inline rational parse_rational(const std::string& text) {
    detail::scalar_lexer lex(text);
    rational v = lex.parse_signed_rational();
    lex.skip_ws();
    if (!lex.eof()) lex.error("trailing characters");
    return v;
}

} // namespace legsheaf
