#pragma once

// Shared helpers for the unit tests: seeded random inputs and report dumps.

#include <random>
#include <string>

#include "ck/cliffpoly.hpp"

namespace cktest {

inline ck::Rational q(long long n, long long d = 1) { return ck::Rational(n, d); }

inline ck::GR random_gr(std::mt19937& rng, bool complex = true) {
    std::uniform_int_distribution<int> c(-4, 4), d(1, 3);
    ck::Rational re(c(rng), d(rng));
    ck::Rational im = complex ? ck::Rational(c(rng), d(rng)) : ck::Rational(0);
    return {re, im};
}

// Homogeneous polynomial of degree `deg` with `terms` random terms.
inline ck::CliffPoly random_poly(std::mt19937& rng, ck::Roster r, int deg, int terms, bool clifford = true,
                                 bool complex = true) {
    auto monos = ck::monomials_of_degree(r.nvars(), deg);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> blade(0, (1 << r.m) - 1);
    std::vector<ck::PTerm> t;
    for (int k = 0; k < terms; ++k)
        t.push_back({monos[pick(rng)], clifford ? ck::Blade(blade(rng)) : 0u, random_gr(rng, complex)});
    return ck::CliffPoly::from_terms(r, std::move(t));
}

inline ck::Multivector random_mv(std::mt19937& rng, int m, int terms) {
    std::uniform_int_distribution<int> blade(0, (1 << m) - 1);
    std::vector<ck::Multivector::Term> t;
    for (int k = 0; k < terms; ++k) t.emplace_back(ck::Blade(blade(rng)), random_gr(rng));
    return ck::Multivector::from_terms(m, std::move(t));
}

inline std::string failures(const ck::Report& r, std::size_t limit = 10) {
    std::string s;
    std::size_t shown = 0;
    for (const auto& c : r.checks)
        if (!c.pass && shown++ < limit) s += c.id + " [" + c.params + "]: " + c.residual + "\n";
    return s;
}

}  // namespace cktest
