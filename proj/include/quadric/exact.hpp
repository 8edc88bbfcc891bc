#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "quadric/errors.hpp"
#include "quadric/fp.hpp"

namespace quadric {

// Exact scalars. Coordinates live in Q; the prime-field oracle path maps
// them through residues on demand.
using Int = mpz_class;
using Rat = mpq_class;

// Accepts "3", "-5", "3/4" and decimal literals like "1.25".
inline Rat parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw ParseError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0) throw ParseError("bad rational literal: " + text);
        std::string den = "1" + std::string(frac_len, '0');
        s = digits + "/" + den;
    }
    try {
        Rat r(s, 10);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + text);
    }
}

inline std::string to_string(const Rat& r) {
    return r.get_str();
}

// Residue of a rational coordinate mod p.
inline std::uint64_t residue(const Rat& r, std::uint64_t p) {
    Int pz(static_cast<unsigned long>(p));
    Int n = r.get_num() % pz;
    if (n < 0) n += pz;
    Int d = r.get_den() % pz;
    std::uint64_t nu = mpz_get_ui(n.get_mpz_t());
    std::uint64_t du = mpz_get_ui(d.get_mpz_t());
    if (du == 0) throw Error("coordinate denominator vanishes mod p");
    return fp::mul(nu, fp::inv(du, p), p);
}

} // namespace quadric
