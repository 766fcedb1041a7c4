#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational coefficients.
 *
 * Every coefficient in the library is an arbitrary precision rational in
 * canonical reduced form with a positive denominator.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace loopalg {

using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Sign as a scalar: +1 for even parity, -1 for odd.
inline Scalar sign_of(bool odd) { return odd ? Scalar(-1) : Scalar(1); }

/// Always "p/q", also for integers ("2/1"). Used by the JSON emitter.
inline std::string to_fraction_string(const Scalar& s)
{
    return numerator(s).str() + "/" + denominator(s).str();
}

/// Short form: "p" for integers, "p/q" otherwise.
inline std::string to_short_string(const Scalar& s)
{
    if (denominator(s) == 1)
        return numerator(s).str();
    return to_fraction_string(s);
}

/// Parses "[-]digits[/digits]". Throws std::invalid_argument on bad input or zero denominator.
inline Scalar parse_scalar(std::string_view text)
{
    auto digits_ok = [](std::string_view t) {
        if (t.empty())
            return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0)
        throw std::invalid_argument("zero denominator");
    Scalar value(BigInt{std::string(num)}, d);
    return negative ? Scalar(-value) : value;
}

} // namespace loopalg
