#include "holodyn/mapspec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "holodyn/errors.hpp"
#include "holodyn/lattice.hpp"
#include "holodyn/newton.hpp"

namespace holodyn {

namespace {

double parse_real_part(const std::string& s, const std::string& token) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw parse_error("bad number '" + token + "'");
    }
    if (used != s.size()) throw parse_error("bad number '" + token + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Polynomial poly_from_tokens(const std::vector<std::string>& toks, const std::string& ctx) {
    if (toks.empty()) throw parse_error(ctx + ": expected at least one coefficient");
    std::vector<Complex> highest;
    highest.reserve(toks.size());
    for (const std::string& t : toks) highest.push_back(parse_complex(t));
    std::vector<Complex> lowest(highest.rbegin(), highest.rend());
    Polynomial p(std::move(lowest));
    if (p.is_zero()) throw parse_error(ctx + ": polynomial is identically zero");
    return p;
}

} // namespace

Complex parse_complex(const std::string& token) {
    if (token.empty()) throw parse_error("empty complex literal");
    const bool imaginary = (token.back() == 'i' || token.back() == 'I');
    if (!imaginary) {
        return Complex(parse_real_part(token, token), 0.0);
    }
    const std::string body = token.substr(0, token.size() - 1);
    // Split at the last top-level +/- (not an exponent sign, not leading).
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return Complex(0.0, parse_real_part(body, token));
    }
    const double re = parse_real_part(body.substr(0, split), token);
    const double im = parse_real_part(body.substr(split), token);
    return Complex(re, im);
}

ParsedMap parse_map_spec(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw parse_error("map spec '" + text + "': missing ':' after the kind (position 0)");
    std::string kind = text.substr(0, colon);
    kind.erase(std::remove_if(kind.begin(), kind.end(), ::isspace), kind.end());
    const std::string rest = text.substr(colon + 1);

    ParsedMap out{text, kind, RationalMap(Polynomial::identity()), std::nullopt, std::nullopt};

    try {
        if (kind == "poly") {
            out.map = RationalMap(poly_from_tokens(split_ws(rest), "poly"));
        } else if (kind == "rat") {
            const size_t slash = rest.find('/');
            if (slash == std::string::npos)
                throw parse_error("rat: expected '<poly> / <poly>' (position " +
                                  std::to_string(colon + 1) + ")");
            const Polynomial num = poly_from_tokens(split_ws(rest.substr(0, slash)), "rat numerator");
            const Polynomial den =
                poly_from_tokens(split_ws(rest.substr(slash + 1)), "rat denominator");
            out.map = RationalMap(num, den);
        } else if (kind == "moebius") {
            const auto toks = split_ws(rest);
            if (toks.size() != 4)
                throw parse_error("moebius: expected exactly 4 coefficients A B C D, got " +
                                  std::to_string(toks.size()));
            const MoebiusMap m(parse_complex(toks[0]), parse_complex(toks[1]),
                               parse_complex(toks[2]), parse_complex(toks[3]));
            out.moebius = m;
            out.map = RationalMap::from_moebius(m);
        } else if (kind == "lattes-w") {
            const auto toks = split_ws(rest);
            if (toks.size() != 2) throw parse_error("lattes-w: expected g2 g3");
            out.map = lattes_weierstrass(parse_complex(toks[0]), parse_complex(toks[1]));
        } else if (kind == "lattes-sn") {
            const auto toks = split_ws(rest);
            if (toks.size() != 1) throw parse_error("lattes-sn: expected one modulus k");
            const Complex k = parse_complex(toks[0]);
            if (std::abs(k.imag()) > 0.0) throw parse_error("lattes-sn: modulus must be real");
            out.map = lattes_sn(k.real());
        } else if (kind == "newton") {
            const Polynomial p = poly_from_tokens(split_ws(rest), "newton");
            out.newton_poly = p;
            out.map = newton_map(p);
        } else {
            throw parse_error("unknown map kind '" + kind + "' (position 0); expected poly, rat, "
                              "moebius, lattes-w, lattes-sn or newton");
        }
    } catch (const numeric_error& e) {
        // Degenerate coefficients (zero determinant, bad modulus, ...) are
        // input errors at this boundary.
        throw parse_error("map spec '" + text + "': " + e.what());
    }
    return out;
}

} // namespace holodyn
