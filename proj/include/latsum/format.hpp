#pragma once

#include <charconv>
#include <complex>
#include <cstdio>
#include <string>

#include "latsum/errors.hpp"

namespace latsum {

// Shortest round-trip representation of a double.
inline std::string format_double(double x) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc())
        return std::to_string(x);
    return std::string(buf, p);
}

// "2", "2.5", "2+1i", "0.3-0.2i"
inline std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string s = format_double(z.real());
    if (z.imag() >= 0.0) s += "+";
    s += format_double(z.imag()) + "i";
    return s;
}

// Accepts "2", "2.5", "-1", "2+1i", "2-0.5i", "1i", "-i", "i".
inline std::complex<double> parse_complex(const std::string& in) {
    std::string s;
    for (char c : in)
        if (c != ' ') s += c;
    if (s.empty()) throw input_error("parse_complex: empty");
    auto parse_num = [](const std::string& t, double& out) {
        if (t.empty()) return false;
        char* end = nullptr;
        out = std::strtod(t.c_str(), &end);
        return end == t.c_str() + t.size();
    };
    if (s.back() == 'i' || s.back() == 'I') {
        std::string body = s.substr(0, s.size() - 1);
        // split at the last +/- that is not an exponent sign or leading
        size_t split = std::string::npos;
        for (size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        double re = 0.0, im = 0.0;
        if (split == std::string::npos) {
            std::string imtxt = body;
            if (imtxt.empty() || imtxt == "+") imtxt = "1";
            else if (imtxt == "-") imtxt = "-1";
            if (!parse_num(imtxt, im))
                throw input_error("parse_complex: bad value " + in);
            return {0.0, im};
        }
        std::string retxt = body.substr(0, split);
        std::string imtxt = body.substr(split);
        if (imtxt == "+") imtxt = "1";
        else if (imtxt == "-") imtxt = "-1";
        if (!parse_num(retxt, re) || !parse_num(imtxt, im))
            throw input_error("parse_complex: bad value " + in);
        return {re, im};
    }
    double re = 0.0;
    if (!parse_num(s, re)) throw input_error("parse_complex: bad value " + in);
    return {re, 0.0};
}

} // namespace latsum
