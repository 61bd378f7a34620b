#include "rht/abgroup.hpp"

#include <stdexcept>

namespace rht {

FgAbelianGroup::FgAbelianGroup(std::size_t freeRank, std::vector<Int> torsionFactors)
    : freeRank_(freeRank), torsion_(std::move(torsionFactors)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw std::invalid_argument("torsion factors must be >= 2");
        if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0)
            throw std::invalid_argument("torsion factors must form a divisibility chain");
    }
}

Int FgAbelianGroup::order() const {
    if (!isFinite()) throw std::invalid_argument("order of an infinite group");
    Int n = 1;
    for (const Int& t : torsion_) n *= t;
    return n;
}

GroupElement FgAbelianGroup::zero() const {
    return GroupElement{std::vector<Int>(freeRank_), std::vector<Int>(torsion_.size())};
}

bool FgAbelianGroup::isValidElement(const GroupElement& e) const {
    return e.freePart.size() == freeRank_ && e.torsionPart.size() == torsion_.size();
}

GroupElement FgAbelianGroup::reduce(GroupElement e) const {
    if (!isValidElement(e)) throw std::invalid_argument("element shape mismatch");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        Int m;
        mpz_fdiv_r(m.get_mpz_t(), e.torsionPart[i].get_mpz_t(), torsion_[i].get_mpz_t());
        e.torsionPart[i] = m;
    }
    return e;
}

GroupElement FgAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    if (!isValidElement(a) || !isValidElement(b)) throw std::invalid_argument("element shape mismatch");
    GroupElement c = a;
    for (std::size_t i = 0; i < freeRank_; ++i) c.freePart[i] += b.freePart[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) c.torsionPart[i] += b.torsionPart[i];
    return reduce(std::move(c));
}

GroupElement FgAbelianGroup::negate(const GroupElement& a) const {
    GroupElement c = a;
    for (Int& v : c.freePart) v = -v;
    for (Int& v : c.torsionPart) v = -v;
    return reduce(std::move(c));
}

GroupElement FgAbelianGroup::scale(const Int& k, const GroupElement& a) const {
    GroupElement c = a;
    for (Int& v : c.freePart) v *= k;
    for (Int& v : c.torsionPart) v *= k;
    return reduce(std::move(c));
}

bool FgAbelianGroup::isZero(const GroupElement& a) const {
    GroupElement r = reduce(a);
    for (const Int& v : r.freePart)
        if (v != 0) return false;
    for (const Int& v : r.torsionPart)
        if (v != 0) return false;
    return true;
}

GroupElement FgAbelianGroup::toCanonical(const std::vector<Int>& ambient) const {
    if (!basis_) throw std::invalid_argument("group carries no presentation bookkeeping");
    const PresentationBasis& pb = *basis_;
    std::vector<Int> y = pb.V.vecMul(ambient);
    GroupElement e;
    e.freePart.reserve(pb.freeIdx.size());
    for (std::size_t idx : pb.freeIdx) e.freePart.push_back(y[idx]);
    e.torsionPart.reserve(pb.torsionIdx.size());
    for (std::size_t idx : pb.torsionIdx) e.torsionPart.push_back(y[idx]);
    return reduce(std::move(e));
}

std::vector<Int> FgAbelianGroup::fromCanonical(const GroupElement& e) const {
    if (!basis_) throw std::invalid_argument("group carries no presentation bookkeeping");
    if (!isValidElement(e)) throw std::invalid_argument("element shape mismatch");
    const PresentationBasis& pb = *basis_;
    std::vector<Int> y(pb.diagonal.size());
    for (std::size_t i = 0; i < pb.freeIdx.size(); ++i) y[pb.freeIdx[i]] = e.freePart[i];
    for (std::size_t i = 0; i < pb.torsionIdx.size(); ++i) y[pb.torsionIdx[i]] = e.torsionPart[i];
    return pb.Vinv.vecMul(y);
}

FgAbelianGroup from_presentation(const IntMatrix& relations) {
    const std::size_t n = relations.cols();
    SmithDecomposition s = smith_normal_form(relations);
    const std::size_t rank = s.rank();

    PresentationBasis pb;
    pb.relations = relations;
    pb.V = s.V;
    pb.Vinv = invert_unimodular(s.V);
    pb.diagonal.assign(n, Int(0));
    for (std::size_t i = 0; i < rank; ++i) pb.diagonal[i] = s.D.at(i, i);

    std::vector<Int> torsion;
    for (std::size_t i = 0; i < n; ++i) {
        if (pb.diagonal[i] == 0)
            pb.freeIdx.push_back(i);
        else if (pb.diagonal[i] >= 2) {
            pb.torsionIdx.push_back(i);
            torsion.push_back(pb.diagonal[i]);
        }
    }
    FgAbelianGroup g(pb.freeIdx.size(), std::move(torsion));
    g.setBasis(std::move(pb));
    return g;
}

namespace {

// Odometer over mixed radices, lexicographic. Invokes fn on every tuple.
template <typename Fn>
void enumerateMixedRadix(const std::vector<Int>& radices, Fn&& fn) {
    std::vector<Int> digits(radices.size());
    for (const Int& r : radices)
        if (r <= 0) return;  // empty product
    for (;;) {
        fn(digits);
        std::size_t pos = radices.size();
        while (pos > 0) {
            --pos;
            digits[pos] += 1;
            if (digits[pos] < radices[pos]) break;
            digits[pos] = 0;
            if (pos == 0) return;
        }
        if (radices.empty()) return;
    }
}

}  // namespace

std::vector<GroupElement> cosets_mod_r(const FgAbelianGroup& g, const Int& r) {
    if (r < 1) throw std::invalid_argument("modulus must be >= 1");
    std::vector<Int> radices;
    radices.reserve(g.freeRank() + g.torsionRank());
    for (std::size_t i = 0; i < g.freeRank(); ++i) radices.push_back(r);
    for (const Int& t : g.torsionFactors()) radices.push_back(gcd(r, t));
    std::vector<GroupElement> out;
    enumerateMixedRadix(radices, [&](const std::vector<Int>& digits) {
        GroupElement e;
        e.freePart.assign(digits.begin(), digits.begin() + g.freeRank());
        e.torsionPart.assign(digits.begin() + g.freeRank(), digits.end());
        out.push_back(std::move(e));
    });
    return out;
}

std::vector<GroupElement> order_dividing_subgroup(const FgAbelianGroup& g, const Int& r) {
    if (r < 1) throw std::invalid_argument("modulus must be >= 1");
    // Solutions of r*x = 0 in Z/t are the multiples of t/gcd(r,t).
    std::vector<Int> radices, steps;
    for (const Int& t : g.torsionFactors()) {
        Int d = gcd(r, t);
        radices.push_back(d);
        steps.push_back(t / d);
    }
    std::vector<GroupElement> out;
    enumerateMixedRadix(radices, [&](const std::vector<Int>& digits) {
        GroupElement e;
        e.freePart.assign(g.freeRank(), Int(0));
        e.torsionPart.resize(digits.size());
        for (std::size_t i = 0; i < digits.size(); ++i) e.torsionPart[i] = digits[i] * steps[i];
        out.push_back(std::move(e));
    });
    return out;
}

std::optional<Int> element_order(const FgAbelianGroup& g, const GroupElement& e) {
    GroupElement x = g.reduce(e);
    for (const Int& v : x.freePart)
        if (v != 0) return std::nullopt;
    Int order = 1;
    const std::vector<Int>& t = g.torsionFactors();
    for (std::size_t i = 0; i < t.size(); ++i) {
        Int k = t[i] / gcd(t[i], x.torsionPart[i]);
        order = lcm(order, k);
    }
    return order;
}

DirectSum direct_sum(std::vector<FgAbelianGroup> components) {
    DirectSum sum;
    sum.components = std::move(components);
    std::size_t ambient = 0;
    for (const FgAbelianGroup& c : sum.components) ambient += c.freeRank() + c.torsionRank();
    sum.ambientRank = ambient;

    std::vector<std::vector<Int>> relationRows;
    std::size_t pos = 0;
    for (const FgAbelianGroup& c : sum.components) {
        std::vector<std::size_t> fp, tp;
        for (std::size_t i = 0; i < c.freeRank(); ++i) fp.push_back(pos++);
        for (const Int& t : c.torsionFactors()) {
            std::vector<Int> row(ambient);
            row[pos] = t;
            relationRows.push_back(std::move(row));
            tp.push_back(pos++);
        }
        sum.freePos.push_back(std::move(fp));
        sum.torsionPos.push_back(std::move(tp));
    }
    IntMatrix relations(relationRows.size(), ambient);
    for (std::size_t i = 0; i < relationRows.size(); ++i)
        for (std::size_t j = 0; j < ambient; ++j) relations.at(i, j) = relationRows[i][j];
    sum.total = from_presentation(relations);
    return sum;
}

GroupElement DirectSum::inject(std::size_t component, const GroupElement& e) const {
    if (component >= components.size()) throw std::invalid_argument("component out of range");
    if (!components[component].isValidElement(e)) throw std::invalid_argument("element shape mismatch");
    std::vector<Int> ambient(ambientRank);
    for (std::size_t i = 0; i < e.freePart.size(); ++i) ambient[freePos[component][i]] = e.freePart[i];
    for (std::size_t i = 0; i < e.torsionPart.size(); ++i) ambient[torsionPos[component][i]] = e.torsionPart[i];
    return total.toCanonical(ambient);
}

}  // namespace rht
