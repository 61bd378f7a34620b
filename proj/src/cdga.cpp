#include "rht/cdga.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rht {

MinimalModel::MinimalModel(std::vector<CdgaGenerator> generators) : gens_(std::move(generators)) {
    std::sort(gens_.begin(), gens_.end(), [](const CdgaGenerator& a, const CdgaGenerator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
    });
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree < 2) throw std::invalid_argument("generator degree must be >= 2");
        if (byName_.count(gens_[i].name)) throw std::invalid_argument("duplicate generator name");
        byName_[gens_[i].name] = static_cast<std::uint32_t>(i);
    }
    diff_.resize(gens_.size());
}

std::uint32_t MinimalModel::indexOf(const std::string& name) const {
    auto it = byName_.find(name);
    if (it == byName_.end()) throw std::invalid_argument("unknown generator: " + name);
    return it->second;
}

void MinimalModel::setDifferential(const std::string& name, Polynomial p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second == 0)
            it = p.erase(it);
        else
            ++it;
    }
    diff_[indexOf(name)] = std::move(p);
}

unsigned MinimalModel::monomialDegree(const Monomial& m) const {
    unsigned d = 0;
    for (std::uint32_t i : m) d += gens_[i].degree;
    return d;
}

std::pair<int, Monomial> MinimalModel::mulMonomials(const Monomial& a, const Monomial& b) const {
    // Merge keeps both inputs sorted; each transposition of odd generators
    // flips the sign, and an odd square kills the term.
    int sign = 1;
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    // oddSuffix[k]: odd generators of a at positions >= k.
    std::vector<std::size_t> oddSuffix(a.size() + 1);
    for (std::size_t k = a.size(); k > 0; --k)
        oddSuffix[k - 1] = oddSuffix[k] + (gens_[a[k - 1]].degree % 2);
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            out.push_back(a[i++]);
        } else {
            if (gens_[b[j]].degree % 2 && (oddSuffix[i] % 2)) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
        if (out[k] == out[k + 1] && gens_[out[k]].degree % 2) return {0, {}};
    return {sign, out};
}

Polynomial MinimalModel::mul(const Polynomial& a, const Polynomial& b) const {
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto [sign, m] = mulMonomials(ma, mb);
            if (sign == 0) continue;
            Rat c = ca * cb * sign;
            Rat& slot = out[m];
            slot += c;
            if (slot == 0) out.erase(m);
        }
    return out;
}

Polynomial MinimalModel::add(Polynomial a, const Polynomial& b) const {
    for (const auto& [m, c] : b) {
        Rat& slot = a[m];
        slot += c;
        if (slot == 0) a.erase(m);
    }
    return a;
}

Polynomial MinimalModel::scale(const Rat& c, Polynomial p) const {
    if (c == 0) return {};
    for (auto& [m, v] : p) v *= c;
    return p;
}

Polynomial MinimalModel::differentialOfMonomial(const Monomial& m) const {
    // Leibniz: d(g_1...g_k) = sum_i (-1)^(deg g_1 + ... + deg g_(i-1))
    //          g_1...g_(i-1) dg_i g_(i+1)...g_k.
    Polynomial out;
    int sign = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Polynomial& dg = diff_[m[i]];
        if (!dg.empty()) {
            Monomial left(m.begin(), m.begin() + i);
            Monomial right(m.begin() + i + 1, m.end());
            Polynomial term = mul(Polynomial{{left, Rat(1)}}, dg);
            term = mul(term, Polynomial{{right, Rat(1)}});
            out = add(std::move(out), scale(Rat(sign), std::move(term)));
        }
        if (gens_[m[i]].degree % 2) sign = -sign;
    }
    return out;
}

Polynomial MinimalModel::differential(const Polynomial& p) const {
    Polynomial out;
    for (const auto& [m, c] : p) out = add(std::move(out), scale(c, differentialOfMonomial(m)));
    return out;
}

std::vector<std::string> MinimalModel::validate() const {
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const CdgaGenerator& g = gens_[i];
        for (const auto& [m, c] : diff_[i]) {
            if (monomialDegree(m) != g.degree + 1)
                violations.push_back(g.name + ": differential term of degree " +
                                     std::to_string(monomialDegree(m)) + ", expected " +
                                     std::to_string(g.degree + 1));
            if (m.size() < 2) violations.push_back(g.name + ": differential has an indecomposable term");
        }
        if (!differential(diff_[i]).empty())
            violations.push_back(g.name + ": differential does not square to zero");
    }
    return violations;
}

std::optional<unsigned> MinimalModel::firstNontrivialDegree() const {
    std::optional<unsigned> best;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!diff_[i].empty() && (!best || gens_[i].degree < *best)) best = gens_[i].degree;
    return best;
}

bool MinimalModel::isRationalHspaceThrough(unsigned degree) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree <= degree && !diff_[i].empty()) return false;
    return true;
}

std::vector<Monomial> MinimalModel::monomialBasis(unsigned degree) const {
    std::vector<Monomial> out;
    Monomial current;
    // Generators are degree-sorted, so a cheap lower bound prunes the search.
    auto rec = [&](auto&& self, std::uint32_t from, unsigned remaining) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (std::uint32_t i = from; i < gens_.size(); ++i) {
            if (gens_[i].degree > remaining) break;
            current.push_back(i);
            self(self, gens_[i].degree % 2 ? i + 1 : i, remaining - gens_[i].degree);
            current.pop_back();
        }
    };
    rec(rec, 0, degree);
    return out;
}

namespace {

// Exact row echelon bookkeeping for quotients of rational spaces.
class RatEchelon {
public:
    // Reduces v against the stored rows in place.
    void reduce(std::vector<Rat>& v) const {
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot] == 0) continue;
            Rat f = v[pivot] / row[pivot];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
        }
    }
    // Returns false when v reduces to zero; otherwise stores it.
    bool insert(std::vector<Rat> v) {
        reduce(v);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                rows_.emplace_back(j, std::move(v));
                return true;
            }
        return false;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::pair<std::size_t, std::vector<Rat>>> rows_;  // (pivot, row)
};

}  // namespace

MinimalModel::Cohomology MinimalModel::cohomology(unsigned degree, unsigned maxDegree) const {
    if (degree > maxDegree) throw std::invalid_argument("degree exceeds the inspection window");
    std::vector<Monomial> basisN = monomialBasis(degree);
    std::vector<Monomial> basisUp = monomialBasis(degree + 1);
    std::map<Monomial, std::size_t> upIndex;
    for (std::size_t i = 0; i < basisUp.size(); ++i) upIndex[basisUp[i]] = i;

    auto expressUp = [&](const Polynomial& p) {
        std::vector<Rat> v(basisUp.size());
        for (const auto& [m, c] : p) v[upIndex.at(m)] = c;
        return v;
    };

    // Kernel of d on degree n via echelon over the columns.
    RatEchelon imageOfD;
    std::vector<std::vector<Rat>> kernel;  // coordinates in basisN
    {
        // Column reduction: process basis vectors one at a time, tracking the
        // combination that witnesses each dependency.
        std::vector<std::vector<Rat>> dCols, combos;
        RatEchelon ech;
        for (std::size_t j = 0; j < basisN.size(); ++j) {
            std::vector<Rat> col = expressUp(differentialOfMonomial(basisN[j]));
            // Reduce col against prior columns while updating the combination.
            std::vector<Rat> combo(basisN.size());
            combo[j] = 1;
            for (std::size_t k = 0; k < dCols.size(); ++k) {
                std::size_t pivot = 0;
                while (pivot < dCols[k].size() && dCols[k][pivot] == 0) ++pivot;
                if (pivot == dCols[k].size() || col[pivot] == 0) continue;
                Rat f = col[pivot] / dCols[k][pivot];
                for (std::size_t t = 0; t < col.size(); ++t) col[t] -= f * dCols[k][t];
                for (std::size_t t = 0; t < combo.size(); ++t) combo[t] -= f * combos[k][t];
            }
            bool zero = true;
            for (const Rat& x : col)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (zero) {
                kernel.push_back(std::move(combo));
            } else {
                dCols.push_back(std::move(col));
                combos.push_back(std::move(combo));
            }
        }
    }

    // Image of d from one degree below, inside basisN coordinates.
    std::map<Monomial, std::size_t> nIndex;
    for (std::size_t i = 0; i < basisN.size(); ++i) nIndex[basisN[i]] = i;
    RatEchelon image;
    if (degree > 0) {
        for (const Monomial& m : monomialBasis(degree - 1)) {
            Polynomial dm = differentialOfMonomial(m);
            std::vector<Rat> v(basisN.size());
            for (const auto& [mm, c] : dm) v[nIndex.at(mm)] = c;
            image.insert(std::move(v));
        }
    }

    Cohomology h;
    h.degree = degree;
    for (std::vector<Rat>& k : kernel) {
        std::vector<Rat> copy = k;
        if (!image.insert(std::move(copy))) continue;  // cohomologous to zero
        Polynomial rep;
        for (std::size_t j = 0; j < basisN.size(); ++j)
            if (k[j] != 0) rep[basisN[j]] = k[j];
        h.representatives.push_back(std::move(rep));
    }
    h.dimension = h.representatives.size();
    return h;
}

Polynomial MinimalModel::chiPullback(const Int& r, const Polynomial& cocycle) const {
    Polynomial out;
    for (const auto& [m, c] : cocycle) {
        Int factor = 1;
        for (std::size_t k = 0; k < m.size(); ++k) factor *= r;
        Rat scaled = c * Rat(factor);
        if (scaled != 0) out[m] = scaled;
    }
    return out;
}

std::vector<std::pair<std::string, Polynomial>> MinimalModel::chiCommutationDefects(
    const Int& r, unsigned maxDegree) const {
    std::vector<std::pair<std::string, Polynomial>> defects;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree > maxDegree) continue;
        // d(chi(g)) = r * dg; chi(dg) rescales each monomial by r^wordLength.
        Polynomial lhs = scale(Rat(r), diff_[i]);
        Polynomial rhs = chiPullback(r, diff_[i]);
        Polynomial defect = add(std::move(lhs), scale(Rat(-1), std::move(rhs)));
        if (!defect.empty()) defects.emplace_back(gens_[i].name, std::move(defect));
    }
    return defects;
}

namespace {

// Multiset difference a \ b, or nullopt when b is not contained in a.
std::optional<Monomial> multisetSubtract(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            return std::nullopt;
        }
    }
    if (j < b.size()) return std::nullopt;
    out.insert(out.end(), a.begin() + i, a.end());
    return out;
}

}  // namespace

std::size_t p_degree(const Polynomial& p) {
    if (p.empty()) throw std::invalid_argument("zero polynomial has no P-degree");
    std::size_t least = SIZE_MAX;
    for (const auto& [mono, coeff] : p) least = std::min(least, mono.size());
    return least;
}

BilinearFormExtraction extract_bilinear_forms(const MinimalModel& m) {
    std::optional<unsigned> d = m.firstNontrivialDegree();
    if (!d) throw std::domain_error("rational H-space; no forms to extract");

    BilinearFormExtraction ex;
    ex.targetDegree = *d;
    std::vector<std::uint32_t> etas;
    for (std::uint32_t i = 0; i < m.generatorCount(); ++i)
        if (m.generator(i).degree == *d) {
            etas.push_back(i);
            ex.etaNames.push_back(m.generator(i).name);
        }

    // Distinguished term: smallest word length, then lexicographically least
    // monomial in canonical generator order.
    bool found = false;
    for (std::uint32_t e : etas)
        for (const auto& [mono, coeff] : m.differentialOf(e)) {
            if (!found || mono.size() < ex.distinguishedMonomial.size() ||
                (mono.size() == ex.distinguishedMonomial.size() && mono < ex.distinguishedMonomial)) {
                found = true;
                ex.distinguishedMonomial = mono;
            }
        }
    if (!found) throw std::domain_error("rational H-space; no forms to extract");
    for (std::uint32_t e : etas) {
        auto it = m.differentialOf(e).find(ex.distinguishedMonomial);
        if (it != m.differentialOf(e).end()) {
            ex.distinguishedCoefficient = it->second;
            break;
        }
    }

    const std::uint32_t alphaGen = ex.distinguishedMonomial[0];
    const std::uint32_t betaGen = ex.distinguishedMonomial[1];
    ex.degreeAlpha = m.generator(alphaGen).degree;
    ex.degreeBeta = m.generator(betaGen).degree;
    ex.mu.assign(ex.distinguishedMonomial.begin() + 2, ex.distinguishedMonomial.end());
    for (std::uint32_t g : ex.mu) {
        ex.muDegrees.push_back(m.generator(g).degree);
        ex.muNames.push_back(m.generator(g).name);
    }

    // Occurring bases: generators showing up in terms of the exact shape
    // alpha*beta*mu across every eta differential.
    std::set<std::uint32_t> alphaOcc, betaOcc;
    for (std::uint32_t e : etas)
        for (const auto& [mono, coeff] : m.differentialOf(e)) {
            if (mono.size() != ex.mu.size() + 2) continue;
            std::optional<Monomial> residual = multisetSubtract(mono, ex.mu);
            if (!residual || residual->size() != 2) continue;
            unsigned da = m.generator((*residual)[0]).degree;
            unsigned db = m.generator((*residual)[1]).degree;
            if (da != ex.degreeAlpha || db != ex.degreeBeta) continue;
            alphaOcc.insert((*residual)[0]);
            betaOcc.insert((*residual)[1]);
            if (ex.degreeAlpha == ex.degreeBeta) {
                alphaOcc.insert((*residual)[1]);
                betaOcc.insert((*residual)[0]);
            }
        }
    std::vector<std::uint32_t> alphaIdx(alphaOcc.begin(), alphaOcc.end());
    std::vector<std::uint32_t> betaIdx(betaOcc.begin(), betaOcc.end());
    for (std::uint32_t i : alphaIdx) ex.alphaBasis.push_back(m.generator(i).name);
    for (std::uint32_t i : betaIdx) ex.betaBasis.push_back(m.generator(i).name);

    auto coefficientOf = [&](std::uint32_t e, std::uint32_t a, std::uint32_t b) -> Rat {
        Monomial mono = ex.mu;
        mono.push_back(a);
        mono.push_back(b);
        std::sort(mono.begin(), mono.end());
        for (std::size_t k = 0; k + 1 < mono.size(); ++k)
            if (mono[k] == mono[k + 1] && m.generator(mono[k]).degree % 2) return Rat(0);
        auto it = m.differentialOf(e).find(mono);
        return it == m.differentialOf(e).end() ? Rat(0) : it->second;
    };

    // Entries are read off the canonical monomial for each basis pair; for
    // equal odd degrees the strict upper triangle is copied antisymmetrically,
    // for equal even degrees the lookup is symmetric on its own.
    std::vector<std::vector<std::vector<Rat>>> ratForms;
    Int denomLcm = 1;
    const bool equalOdd = ex.degreeAlpha == ex.degreeBeta && ex.degreeAlpha % 2 == 1;
    for (std::uint32_t e : etas) {
        std::vector<std::vector<Rat>> mat(alphaIdx.size(), std::vector<Rat>(betaIdx.size()));
        for (std::size_t i = 0; i < alphaIdx.size(); ++i)
            for (std::size_t j = 0; j < betaIdx.size(); ++j) {
                if (equalOdd) {
                    if (i == j)
                        mat[i][j] = 0;
                    else if (alphaIdx[i] < betaIdx[j])
                        mat[i][j] = coefficientOf(e, alphaIdx[i], betaIdx[j]);
                    else
                        mat[i][j] = -coefficientOf(e, betaIdx[j], alphaIdx[i]);
                } else {
                    mat[i][j] = coefficientOf(e, alphaIdx[i], betaIdx[j]);
                }
                denomLcm = lcm(denomLcm, Int(mat[i][j].get_den()));
            }
        ratForms.push_back(std::move(mat));
    }
    ex.denominatorLcm = denomLcm;
    for (const auto& mat : ratForms) {
        IntMatrix b(alphaIdx.size(), betaIdx.size());
        for (std::size_t i = 0; i < alphaIdx.size(); ++i)
            for (std::size_t j = 0; j < betaIdx.size(); ++j) {
                Rat scaled = mat[i][j] * Rat(denomLcm);
                b.at(i, j) = scaled.get_num();
            }
        ex.forms.push_back(std::move(b));
    }
    return ex;
}

}  // namespace rht
