#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <regex>
#include <stdexcept>
#include <string>

namespace genus2 {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline const cplx I{0.0, 1.0};
inline const cplx two_pi_i{0.0, 2.0 * pi};

class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "a+bi", "a-bi", "bi", "a", "i", "-i" (whitespace ignored).
inline cplx parse_complex(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    static const std::string num = R"(([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?))";
    static const std::regex full("^([+-]?" + num.substr(1, num.size() - 2) + ")([+-])" +
                                 num + "[ij]$");
    static const std::regex imag_only("^([+-]?)" + num + "[ij]$");
    static const std::regex real_only("^[+-]?" + num.substr(1, num.size() - 2) + "$");

    auto number = [&](const std::string& sign, const std::string& mag) {
        double v = mag.empty() ? 1.0 : std::stod(mag);
        return sign == "-" ? -v : v;
    };

    std::smatch m;
    if (std::regex_match(s, m, full) && !m[1].str().empty())
        return {std::stod(m[1].str()), number(m[2].str(), m[3].str())};
    if (std::regex_match(s, m, imag_only)) return {0.0, number(m[1].str(), m[2].str())};
    if (std::regex_match(s, real_only)) return {std::stod(s), 0.0};
    throw std::invalid_argument("malformed complex literal: " + text);
}

inline std::string format_complex(cplx z, int digits = 17)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g%c%.*gi", digits, z.real(), z.imag() < 0 ? '-' : '+',
                  digits, std::abs(z.imag()));
    return buf;
}

// Relative error with an absolute floor so that zero targets are handled.
inline double rel_err(cplx got, cplx want, double floor = 1e-300)
{
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

} // namespace genus2
