#pragma once

/**
 * @file expr.hpp
 * @brief Text syntax for loop and cohomology classes.
 *
 *   expr     := ['+'|'-'] term (('+'|'-') term)*
 *   term     := (rational '*')? atom | rational
 *   atom     := gen ('x' gen)?
 *   gen      := ('A'|'B'|'s'|'m') '[' nat ',' nat ']'
 *   rational := int ('/' nat)?
 *
 * Whitespace is ignored between tokens. 's' and 'm' stand for sigma and mu.
 */

#include "loopalg/string_topology.hpp"

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loopalg::cli {

/// Syntax or semantic error in a class expression. `position` is a byte offset into the input.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos)
    {
    }
};

struct GenAtom {
    char letter = 'A';
    int k = 1;
    int i = 0;
    std::size_t position = 0;
};

struct ExprTerm {
    Scalar coeff = 1;
    std::vector<GenAtom> factors;  ///< empty for a bare rational
};

struct ClassExpr {
    std::vector<ExprTerm> terms;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ClassExpr parse()
    {
        ClassExpr out;
        skip_ws();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = get() == '-';
            skip_ws();
        }
        out.terms.push_back(term(negative));
        for (;;) {
            skip_ws();
            if (at_end())
                break;
            char c = peek();
            if (c != '+' && c != '-')
                throw ParseError(std::string("expected '+' or '-', found '") + c + "'", pos_);
            get();
            skip_ws();
            out.terms.push_back(term(c == '-'));
        }
        return out;
    }

private:
    ExprTerm term(bool negative)
    {
        ExprTerm t;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.coeff = rational();
            skip_ws();
            if (peek() == '*') {
                get();
                skip_ws();
                t.factors = atom();
            }
        } else {
            t.factors = atom();
        }
        if (negative)
            t.coeff = -t.coeff;
        return t;
    }

    std::vector<GenAtom> atom()
    {
        std::vector<GenAtom> out{gen()};
        skip_ws();
        if (peek() == 'x') {
            get();
            skip_ws();
            out.push_back(gen());
        }
        return out;
    }

    GenAtom gen()
    {
        GenAtom g;
        g.position = pos_;
        char c = peek();
        if (c != 'A' && c != 'B' && c != 's' && c != 'm')
            throw ParseError(at_end() ? std::string("unexpected end of input, expected a generator")
                                      : std::string("expected generator A, B, s or m, found '") + c + "'",
                             pos_);
        g.letter = get();
        skip_ws();
        expect('[');
        skip_ws();
        std::size_t kpos = pos_;
        g.k = nat();
        skip_ws();
        expect(',');
        skip_ws();
        g.i = nat();
        skip_ws();
        expect(']');
        if (g.k < 1)
            throw ParseError("k must be >= 1", kpos);
        return g;
    }

    Scalar rational()
    {
        std::size_t start = pos_;
        std::string num = digits();
        std::string den = "1";
        std::size_t before = pos_;
        skip_ws();
        if (peek() == '/') {
            get();
            skip_ws();
            den = digits();
        } else {
            pos_ = before;
        }
        if (BigInt(den) == 0)
            throw ParseError("zero denominator", start);
        return Scalar(BigInt(num), BigInt(den));
    }

    int nat()
    {
        std::size_t start = pos_;
        std::string d = digits();
        if (d.size() > 9)
            throw ParseError("index too large", start);
        return std::stoi(d);
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected a number", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c)
    {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        get();
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class Key>
Key make_key(const GenAtom& g);

template <>
inline LoopKey make_key<LoopKey>(const GenAtom& g)
{
    if (g.letter != 'A' && g.letter != 'B')
        throw ParseError(std::string("expected a homology generator A or B, found '") + g.letter + "'", g.position);
    return {g.letter == 'A' ? LoopKind::A : LoopKind::B, g.k, g.i};
}

template <>
inline CohKey make_key<CohKey>(const GenAtom& g)
{
    if (g.letter != 's' && g.letter != 'm')
        throw ParseError(std::string("expected a cohomology generator s or m, found '") + g.letter + "'", g.position);
    return {g.letter == 's' ? CohKind::sigma : CohKind::mu, g.k, g.i};
}

} // namespace detail

inline ClassExpr parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Converts an expression into a combination of the requested key type and arity, checking index ranges.
template <class Key, std::size_t Arity>
Combination<Key, Arity> to_combination(const ClassExpr& e, const SpaceParams& p)
{
    Combination<Key, Arity> out(p);
    for (const auto& t : e.terms) {
        if (t.factors.empty()) {
            if (t.coeff != 0)
                throw ParseError("a bare nonzero constant is not a class", 0);
            continue;
        }
        if (t.factors.size() != Arity)
            throw ParseError(Arity == 1 ? "expected a single generator, found a tensor pair"
                                        : "expected a tensor pair 'gen x gen'",
                             t.factors.front().position);
        std::array<Key, Arity> idx;
        for (std::size_t f = 0; f < Arity; ++f) {
            const GenAtom& g = t.factors[f];
            if (g.i < 0 || g.i > p.n - 1)
                throw ParseError("index out of range for n=" + std::to_string(p.n), g.position);
            idx[f] = detail::make_key<Key>(g);
        }
        out.add(idx, t.coeff);
    }
    return out;
}

template <class Key, std::size_t Arity>
Combination<Key, Arity> parse_as(std::string_view text, const SpaceParams& p)
{
    return to_combination<Key, Arity>(parse(text), p);
}

/// Canonical text, e.g. "A[2,0] - 3/2*B[1,1]"; parse(format(x)) == x.
template <class Key, std::size_t Arity>
std::string format(const Combination<Key, Arity>& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [idx, c] : x.terms()) {
        if (!out.empty())
            out += c < 0 ? " - " : " + ";
        else if (c < 0)
            out += "-";
        const Scalar a = abs(c);
        if (a != 1)
            out += to_short_string(a) + "*";
        for (std::size_t f = 0; f < Arity; ++f)
            out += (f ? " x " : "") + to_string(idx[f]);
    }
    return out;
}

inline std::string latex_key(const LoopKey& key)
{
    return std::string(1, static_cast<char>(key.kind)) + "_{" + std::to_string(key.k) + "}^{" + std::to_string(key.i) +
           "}";
}

inline std::string latex_key(const CohKey& key)
{
    return std::string(key.kind == CohKind::sigma ? "\\sigma" : "\\mu") + "_{" + std::to_string(key.k) + "}^{" +
           std::to_string(key.i) + "}";
}

inline std::string latex_scalar(const Scalar& a)
{
    if (denominator(a) == 1)
        return numerator(a).str();
    return "\\frac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
}

template <class Key, std::size_t Arity>
std::string latex(const Combination<Key, Arity>& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [idx, c] : x.terms()) {
        if (!out.empty())
            out += c < 0 ? " - " : " + ";
        else if (c < 0)
            out += "-";
        const Scalar a = abs(c);
        if (a != 1)
            out += latex_scalar(a) + " ";
        for (std::size_t f = 0; f < Arity; ++f)
            out += (f ? " \\times " : "") + latex_key(idx[f]);
    }
    return out;
}

} // namespace loopalg::cli
