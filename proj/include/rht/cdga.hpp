#pragma once

#include "rht/intlinalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

struct CdgaGenerator {
    std::string name;
    unsigned degree = 0;  // >= 2
};

// Generator indices in canonical order, sorted ascending; an odd-degree
// generator appears at most once. The empty monomial is the unit.
using Monomial = std::vector<std::uint32_t>;

// Rational linear combination of canonical monomials; zero coefficients are
// never stored.
using Polynomial = std::map<Monomial, Rat>;

// Free graded-commutative algebra on generators of degree >= 2 with a
// decomposable differential: a minimal Sullivan algebra in the simply
// connected range.
class MinimalModel {
public:
    explicit MinimalModel(std::vector<CdgaGenerator> generators);

    std::size_t generatorCount() const { return gens_.size(); }
    const CdgaGenerator& generator(std::size_t i) const { return gens_[i]; }
    std::uint32_t indexOf(const std::string& name) const;
    const Polynomial& differentialOf(std::size_t i) const { return diff_[i]; }
    void setDifferential(const std::string& name, Polynomial p);

    unsigned monomialDegree(const Monomial& m) const;
    static std::size_t wordLength(const Monomial& m) { return m.size(); }

    // Normalized product of two basis monomials: (sign, sorted monomial);
    // sign 0 when an odd generator squares to zero.
    std::pair<int, Monomial> mulMonomials(const Monomial& a, const Monomial& b) const;
    Polynomial mul(const Polynomial& a, const Polynomial& b) const;
    Polynomial add(Polynomial a, const Polynomial& b) const;
    Polynomial scale(const Rat& c, Polynomial p) const;
    Polynomial differential(const Polynomial& p) const;
    Polynomial differentialOfMonomial(const Monomial& m) const;

    // Empty when the model satisfies the minimality contract: all degrees >= 2,
    // differentials raise degree by one, are decomposable, and square to zero.
    std::vector<std::string> validate() const;

    // Least generator degree carrying a nonzero differential.
    std::optional<unsigned> firstNontrivialDegree() const;
    bool isRationalHspaceThrough(unsigned degree) const;

    // All basis monomials of the given total degree, ascending.
    std::vector<Monomial> monomialBasis(unsigned degree) const;

    struct Cohomology {
        unsigned degree = 0;
        std::size_t dimension = 0;
        std::vector<Polynomial> representatives;
    };
    // Requires degree <= maxDegree (the inspection window is a guard rail; each
    // graded piece is finite on its own).
    Cohomology cohomology(unsigned degree, unsigned maxDegree) const;

    // Algebra endomorphism g -> r*g: multiplication by r^wordLength per monomial.
    Polynomial chiPullback(const Int& r, const Polynomial& cocycle) const;
    // d(chi(g)) - chi(d(g)) for every generator of degree <= maxDegree; only
    // nonzero defects are listed.
    std::vector<std::pair<std::string, Polynomial>> chiCommutationDefects(const Int& r,
                                                                          unsigned maxDegree) const;

private:
    std::vector<CdgaGenerator> gens_;  // sorted by (degree, name)
    std::vector<Polynomial> diff_;
    std::map<std::string, std::uint32_t> byName_;
};

struct BilinearFormExtraction {
    unsigned targetDegree = 0;  // degree of the eta generators
    unsigned degreeAlpha = 0, degreeBeta = 0;
    Monomial mu;
    std::vector<unsigned> muDegrees;  // degrees of the mu factors, in order
    std::vector<std::string> muNames;
    Rat distinguishedCoefficient;
    Monomial distinguishedMonomial;
    std::vector<std::string> etaNames;             // all generators in targetDegree
    std::vector<std::string> alphaBasis, betaBasis;  // occurring generators only
    std::vector<IntMatrix> forms;                  // one per eta, denominators cleared
    Int denominatorLcm;
};

// Minimum word length across the terms of a nonzero polynomial. Throws
// std::invalid_argument on the zero polynomial.
std::size_t p_degree(const Polynomial& p);

// Reads the bilinear forms off the first nontrivial differential. Throws
// std::domain_error("rational H-space; no forms to extract") when every
// differential vanishes.
BilinearFormExtraction extract_bilinear_forms(const MinimalModel& m);

}  // namespace rht
