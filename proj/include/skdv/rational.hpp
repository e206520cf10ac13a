#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace skdv {

/// Exact rational coefficient type used by the symbolic layers.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Renders as "p" or "p/q" with q > 0.
inline std::string rat_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "p/q", or a plain integer-valued decimal like "-3".
inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    return Rational(num, den);
}

}  // namespace skdv
