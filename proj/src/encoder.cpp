#include "rht/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace rht {

AttachingExpr AttachingExpr::zero() { return AttachingExpr{}; }

AttachingExpr AttachingExpr::cellRef(std::string id) {
    AttachingExpr e;
    e.kind = Kind::Cell;
    e.cell = std::move(id);
    return e;
}

AttachingExpr AttachingExpr::whitehead(std::vector<AttachingExpr> args) {
    if (args.size() < 2) throw std::invalid_argument("whitehead products need at least two factors");
    AttachingExpr e;
    e.kind = Kind::Whitehead;
    e.children = std::move(args);
    return e;
}

AttachingExpr AttachingExpr::deg(Int k, AttachingExpr inner) {
    AttachingExpr e;
    e.kind = Kind::Deg;
    e.multiplier = std::move(k);
    e.children.push_back(std::move(inner));
    return e;
}

AttachingExpr AttachingExpr::sum(std::vector<Int> coeffs, std::vector<AttachingExpr> terms) {
    if (coeffs.size() != terms.size() || terms.empty())
        throw std::invalid_argument("sum needs matching, nonempty coefficient and term lists");
    AttachingExpr e;
    e.kind = Kind::Sum;
    e.coefficients = std::move(coeffs);
    e.children = std::move(terms);
    return e;
}

std::string AttachingExpr::print() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Cell: return cell;
        case Kind::Whitehead: {
            std::string out = "whitehead(";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += ", ";
                out += children[i].print();
            }
            return out + ")";
        }
        case Kind::Deg:
            return "deg(" + multiplier.get_str() + ", " + children[0].print() + ")";
        case Kind::Sum: {
            std::string out = "sum(";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += ", ";
                if (coefficients[i] != 1) out += coefficients[i].get_str() + "*";
                out += children[i].print();
            }
            return out + ")";
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

struct Token {
    enum class Type { LParen, RParen, Comma, Star, Number, Ident, End };
    Type type;
    std::string text;
    Int value;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::Type::End, "", 0};
        char c = s_[pos_];
        if (c == '(') return ++pos_, Token{Token::Type::LParen, "(", 0};
        if (c == ')') return ++pos_, Token{Token::Type::RParen, ")", 0};
        if (c == ',') return ++pos_, Token{Token::Type::Comma, ",", 0};
        if (c == '*') return ++pos_, Token{Token::Type::Star, "*", 0};
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            if (c == '-') ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw std::invalid_argument("malformed attaching data: stray '-'");
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string text = s_.substr(start, pos_ - start);
            return {Token::Type::Number, text, Int(text)};
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::string("(),*").find(s_[pos_]) == std::string::npos &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return {Token::Type::Ident, s_.substr(start, pos_ - start), 0};
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    AttachingExpr parseAll() {
        AttachingExpr e = expr();
        expect(Token::Type::End);
        return e;
    }

private:
    Lexer lex_;
    Token cur_;

    void advance() { cur_ = lex_.next(); }
    void expect(Token::Type t) {
        if (cur_.type != t) throw std::invalid_argument("malformed attaching data near '" + cur_.text + "'");
        if (t != Token::Type::End) advance();
    }

    AttachingExpr expr() {
        if (cur_.type == Token::Type::Number) {
            if (cur_.value != 0)
                throw std::invalid_argument("malformed attaching data: bare number " + cur_.text);
            advance();
            return AttachingExpr::zero();
        }
        if (cur_.type != Token::Type::Ident)
            throw std::invalid_argument("malformed attaching data near '" + cur_.text + "'");
        std::string name = cur_.text;
        advance();
        if (cur_.type != Token::Type::LParen) return AttachingExpr::cellRef(name);
        advance();
        if (name == "whitehead") {
            std::vector<AttachingExpr> args;
            args.push_back(expr());
            while (cur_.type == Token::Type::Comma) {
                advance();
                args.push_back(expr());
            }
            expect(Token::Type::RParen);
            return AttachingExpr::whitehead(std::move(args));
        }
        if (name == "deg") {
            if (cur_.type != Token::Type::Number)
                throw std::invalid_argument("deg expects an integer multiplier");
            Int k = cur_.value;
            advance();
            expect(Token::Type::Comma);
            AttachingExpr inner = expr();
            expect(Token::Type::RParen);
            return AttachingExpr::deg(std::move(k), std::move(inner));
        }
        if (name == "sum") {
            std::vector<Int> coeffs;
            std::vector<AttachingExpr> terms;
            auto term = [&]() {
                if (cur_.type == Token::Type::Number) {
                    // Either a coefficient (number '*' expr) or the literal 0.
                    Int v = cur_.value;
                    advance();
                    if (cur_.type == Token::Type::Star) {
                        advance();
                        coeffs.push_back(std::move(v));
                        terms.push_back(expr());
                        return;
                    }
                    if (v != 0) throw std::invalid_argument("malformed sum term");
                    coeffs.push_back(1);
                    terms.push_back(AttachingExpr::zero());
                    return;
                }
                coeffs.push_back(1);
                terms.push_back(expr());
            };
            term();
            while (cur_.type == Token::Type::Comma) {
                advance();
                term();
            }
            expect(Token::Type::RParen);
            return AttachingExpr::sum(std::move(coeffs), std::move(terms));
        }
        throw std::invalid_argument("unknown expression head: " + name);
    }
};

}  // namespace

AttachingExpr AttachingExpr::parse(const std::string& text) { return Parser(text).parseAll(); }

std::map<std::string, Int> AttachingExpr::hurewicz() const {
    std::map<std::string, Int> out;
    switch (kind) {
        case Kind::Zero:
        case Kind::Whitehead: break;
        case Kind::Cell: out[cell] = 1; break;
        case Kind::Deg:
            for (auto& [id, c] : children[0].hurewicz()) {
                Int v = multiplier * c;
                if (v != 0) out[id] = v;
            }
            break;
        case Kind::Sum:
            for (std::size_t i = 0; i < children.size(); ++i)
                for (auto& [id, c] : children[i].hurewicz()) {
                    Int& slot = out[id];
                    slot += coefficients[i] * c;
                    if (slot == 0) out.erase(id);
                }
            break;
    }
    return out;
}

std::string to_string(CellRole r) {
    switch (r) {
        case CellRole::InA: return "in-A";
        case CellRole::FatWedge: return "fat-wedge";
        case CellRole::Cylinder: return "cylinder";
        case CellRole::RelationCell: return "relation-cell";
    }
    throw std::logic_error("unreachable");
}

CellRole cell_role_from_string(const std::string& s) {
    if (s == "in-A") return CellRole::InA;
    if (s == "fat-wedge") return CellRole::FatWedge;
    if (s == "cylinder") return CellRole::Cylinder;
    if (s == "relation-cell") return CellRole::RelationCell;
    throw std::invalid_argument("unknown cell role: " + s);
}

const FormalCell* CellPairDescription::find(const std::string& id) const {
    for (const FormalCell& c : cells)
        if (c.id == id) return &c;
    return nullptr;
}

namespace {

// Formal degree of an expression; nullopt for the wildcard zero class.
std::optional<unsigned> exprDegree(const AttachingExpr& e,
                                   const std::map<std::string, unsigned>& dims) {
    switch (e.kind) {
        case AttachingExpr::Kind::Zero: return std::nullopt;
        case AttachingExpr::Kind::Cell: {
            auto it = dims.find(e.cell);
            if (it == dims.end())
                throw std::invalid_argument("attaching data references unknown cell " + e.cell);
            return it->second;
        }
        case AttachingExpr::Kind::Whitehead: {
            unsigned total = 0;
            for (const AttachingExpr& a : e.children) {
                std::optional<unsigned> d = exprDegree(a, dims);
                if (!d) throw std::invalid_argument("whitehead factor without a degree");
                total += *d;
            }
            return total - 1;
        }
        case AttachingExpr::Kind::Deg: return exprDegree(e.children[0], dims);
        case AttachingExpr::Kind::Sum: {
            std::optional<unsigned> common;
            for (const AttachingExpr& t : e.children) {
                std::optional<unsigned> d = exprDegree(t, dims);
                if (!d) continue;
                if (common && *common != *d)
                    throw std::invalid_argument("sum mixes degrees " + std::to_string(*common) +
                                                " and " + std::to_string(*d));
                common = d;
            }
            return common;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

void CellPairDescription::validate() const {
    std::map<std::string, unsigned> dims;
    for (const FormalCell& c : cells) {
        if (dims.count(c.id)) throw std::invalid_argument("duplicate cell id " + c.id);
        dims[c.id] = c.dimension;
    }
    for (const FormalCell& c : cells) {
        std::optional<unsigned> deg = exprDegree(c.attaching, dims);
        if (c.dimension == 0) {
            if (deg) throw std::invalid_argument("0-cell " + c.id + " has nontrivial attaching data");
            continue;
        }
        if (deg && *deg != c.dimension - 1)
            throw std::invalid_argument("cell " + c.id + " of dimension " +
                                        std::to_string(c.dimension) +
                                        " attaches along degree " + std::to_string(*deg));
        // Hurewicz references must resolve one dimension down.
        for (const auto& [id, coeff] : c.attaching.hurewicz())
            if (dims.at(id) + 1 != c.dimension)
                throw std::invalid_argument("boundary of " + c.id + " hits " + id +
                                            " in the wrong dimension");
    }
}

std::vector<std::pair<std::vector<std::size_t>, unsigned>> fat_wedge_cells(
    const std::vector<unsigned>& sphereDims) {
    if (sphereDims.empty()) throw std::invalid_argument("fat wedge needs at least one sphere");
    for (unsigned d : sphereDims)
        if (d < 1) throw std::invalid_argument("sphere dimensions must be positive");
    const std::size_t t = sphereDims.size();
    std::vector<std::pair<std::vector<std::size_t>, unsigned>> out;
    for (std::size_t size = 0; size < t; ++size) {
        // Combinations of {1..t} of the given size in lexicographic order.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<std::size_t> subset;
            unsigned dim = 0;
            for (std::size_t i : pick) {
                subset.push_back(i + 1);
                dim += sphereDims[i];
            }
            out.emplace_back(std::move(subset), dim);
            if (size == 0) break;
            std::size_t j = size;
            while (j > 0 && pick[j - 1] == t - size + j - 1) --j;
            if (j == 0) break;
            ++pick[j - 1];
            for (std::size_t k = j; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    return out;
}

namespace {

std::string indexed(const std::string& stem, std::size_t i) {
    return stem + "[" + std::to_string(i) + "]";
}

struct TensorGroup {
    std::size_t tensor;
    IntMatrix coeffs;
    std::vector<Int> rhsPerForm;
    std::vector<bool> seen;
};

std::vector<TensorGroup> groupTensors(const QuadraticSystem& sys) {
    const std::size_t t = sys.forms.size();
    bool anySet = false, anyUnset = false;
    for (const QblinEquation& e : sys.equations)
        (e.tensor == static_cast<std::size_t>(-1) ? anyUnset : anySet) = true;
    if (anySet && anyUnset)
        throw std::invalid_argument("equations mix grouped and ungrouped tensor indices");

    std::map<std::size_t, TensorGroup> groups;
    for (std::size_t idx = 0; idx < sys.equations.size(); ++idx) {
        const QblinEquation& e = sys.equations[idx];
        std::size_t key = anyUnset ? idx : e.tensor;
        auto [it, inserted] = groups.try_emplace(key);
        TensorGroup& g = it->second;
        if (inserted) {
            g.tensor = key;
            g.coeffs = e.coeffs;
            g.rhsPerForm.assign(t, Int(0));
            g.seen.assign(t, false);
        } else if (g.coeffs != e.coeffs) {
            throw std::invalid_argument("equations in one tensor group must share coefficients");
        }
        if (g.seen[e.form])
            throw std::invalid_argument("tensor group lists one form twice");
        g.seen[e.form] = true;
        g.rhsPerForm[e.form] = e.rhs;
    }
    std::vector<TensorGroup> out;
    for (auto& [key, g] : groups) {
        for (std::size_t p = 0; p < t; ++p)
            if (!g.seen[p])
                throw std::invalid_argument("tensor group is missing an equation for form " +
                                            std::to_string(p + 1));
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

EncodeResult encode(const QuadraticSystem& system, const BilinearFormExtraction& target,
                    const EncodeMultipliers& multipliers) {
    if (system.shape != SystemShape::QBLIN)
        throw std::invalid_argument("encode expects a block-bilinear system");
    system.validate();
    if (system.uBlockDim != target.alphaBasis.size())
        throw std::invalid_argument("u-block dimension does not match the alpha basis");
    if (system.vBlockDim != target.betaBasis.size())
        throw std::invalid_argument("v-block dimension does not match the beta basis");
    if (system.forms.size() != target.forms.size())
        throw std::invalid_argument("form count does not match the extraction");

    const unsigned d = target.targetDegree, d1 = target.degreeAlpha, d2 = target.degreeBeta;
    const std::size_t t = target.muNames.size();
    if (target.muDegrees.size() != t)
        throw std::invalid_argument("extraction carries inconsistent mu bookkeeping");
    unsigned muTotal = 0;
    for (unsigned nd : target.muDegrees) muTotal += nd;
    if (d1 + d2 + muTotal != d + 1) throw std::invalid_argument("degree bookkeeping mismatch");

    std::vector<Int> p = multipliers.p;
    if (p.empty()) p.assign(t, Int(1));
    if (p.size() != t) throw std::invalid_argument("one multiplier per mu factor required");
    for (const Int& v : p)
        if (v < 1) throw std::invalid_argument("multipliers must be positive");
    if (multipliers.rho < 1 || multipliers.rho1 < 1 || multipliers.rho2 < 1)
        throw std::invalid_argument("multipliers must be positive");

    std::vector<TensorGroup> groups = groupTensors(system);
    const std::size_t s = groups.size();
    const std::size_t rU = system.uBlockNames.size(), rV = system.vBlockNames.size();

    EncodeResult res;
    res.d = d;
    res.d1 = d1;
    res.d2 = d2;
    res.sphereCountA = s + t;
    res.tensorCount = s;
    CellPairDescription& pair = res.pair;

    pair.cells.push_back({"pt", 0, CellRole::InA, AttachingExpr::zero()});
    for (std::size_t q = 1; q <= s; ++q)
        pair.cells.push_back({indexed("A.Sd", q), d, CellRole::InA, AttachingExpr::zero()});
    for (std::size_t i = 1; i <= t; ++i)
        pair.cells.push_back(
            {indexed("A.Sn", i), target.muDegrees[i - 1], CellRole::InA, AttachingExpr::zero()});
    for (std::size_t i = 1; i <= rU; ++i)
        pair.cells.push_back({indexed("X.Sa", i), d1, CellRole::FatWedge, AttachingExpr::zero()});
    for (std::size_t j = 1; j <= rV; ++j)
        pair.cells.push_back({indexed("X.Sb", j), d2, CellRole::FatWedge, AttachingExpr::zero()});
    for (std::size_t i = 1; i <= rU; ++i) {
        pair.cells.push_back({indexed("X.Sa'", i), d1, CellRole::Cylinder, AttachingExpr::zero()});
        pair.cells.push_back(
            {indexed("X.cylA", i), d1 + 1, CellRole::Cylinder,
             AttachingExpr::sum({Int(1), -multipliers.rho1},
                                {AttachingExpr::cellRef(indexed("X.Sa", i)),
                                 AttachingExpr::cellRef(indexed("X.Sa'", i))})});
    }
    for (std::size_t j = 1; j <= rV; ++j) {
        pair.cells.push_back({indexed("X.Sb'", j), d2, CellRole::Cylinder, AttachingExpr::zero()});
        pair.cells.push_back(
            {indexed("X.cylB", j), d2 + 1, CellRole::Cylinder,
             AttachingExpr::sum({Int(1), -multipliers.rho2},
                                {AttachingExpr::cellRef(indexed("X.Sb", j)),
                                 AttachingExpr::cellRef(indexed("X.Sb'", j))})});
    }

    // Per-(i, j) fat wedge on the t + 2 factors S^{d1}_i, S^{d2}_j, S^{n_1..t}:
    // fresh cells for proper subsets with at least two members; singletons and
    // the basepoint are the shared spheres above.
    struct Member {
        std::string token;
        unsigned dim;
    };
    std::vector<Member> members;
    members.push_back({"a", d1});
    members.push_back({"b", d2});
    for (std::size_t k = 1; k <= t; ++k)
        members.push_back({"n" + std::to_string(k), target.muDegrees[k - 1]});
    std::vector<std::vector<std::size_t>> multiSubsets;  // indices into members
    for (std::size_t size = 2; size <= t + 1; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            multiSubsets.push_back(pick);
            std::size_t j = size;
            while (j > 0 && pick[j - 1] == members.size() - size + j - 1) --j;
            if (j == 0) break;
            ++pick[j - 1];
            for (std::size_t k = j; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    auto memberCellId = [&](std::size_t memberIdx, std::size_t i, std::size_t j) {
        if (memberIdx == 0) return indexed("X.Sa", i);
        if (memberIdx == 1) return indexed("X.Sb", j);
        return indexed("A.Sn", memberIdx - 1);
    };
    for (std::size_t i = 1; i <= rU; ++i)
        for (std::size_t j = 1; j <= rV; ++j)
            for (const std::vector<std::size_t>& subset : multiSubsets) {
                std::string suffix;
                unsigned dim = 0;
                std::vector<AttachingExpr> args;
                for (std::size_t m : subset) {
                    if (!suffix.empty()) suffix += "+";
                    suffix += members[m].token;
                    dim += members[m].dim;
                    args.push_back(AttachingExpr::cellRef(memberCellId(m, i, j)));
                }
                std::string id =
                    "X.fw[" + std::to_string(i) + "][" + std::to_string(j) + "]." + suffix;
                pair.cells.push_back(
                    {id, dim, CellRole::FatWedge, AttachingExpr::whitehead(std::move(args))});
            }

    for (std::size_t q = 1; q <= s; ++q) {
        const TensorGroup& g = groups[q - 1];
        std::vector<Int> coeffs{Int(1)};
        std::vector<AttachingExpr> terms{AttachingExpr::cellRef(indexed("A.Sd", q))};
        for (std::size_t i = 0; i < rU; ++i)
            for (std::size_t j = 0; j < rV; ++j) {
                const Int& a = g.coeffs.at(i, j);
                if (a == 0) continue;
                std::vector<AttachingExpr> args;
                args.push_back(AttachingExpr::cellRef(indexed("X.Sa", i + 1)));
                args.push_back(AttachingExpr::cellRef(indexed("X.Sb", j + 1)));
                for (std::size_t k = 1; k <= t; ++k)
                    args.push_back(AttachingExpr::cellRef(indexed("A.Sn", k)));
                coeffs.push_back(-a);
                terms.push_back(AttachingExpr::whitehead(std::move(args)));
            }
        AttachingExpr inner = terms.size() == 1
                                  ? std::move(terms[0])
                                  : AttachingExpr::sum(std::move(coeffs), std::move(terms));
        AttachingExpr attach = multipliers.rho == 1
                                   ? std::move(inner)
                                   : AttachingExpr::deg(multipliers.rho, std::move(inner));
        pair.cells.push_back({indexed("X.rel", q), d + 1, CellRole::RelationCell, std::move(attach)});
    }

    pair.assumptions.push_back("whitehead product sets assumed nonempty for all referenced products");
    {
        std::string line = "multipliers: p=[";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) line += ",";
            line += p[i].get_str();
        }
        line += "], rho1=" + multipliers.rho1.get_str() + ", rho2=" + multipliers.rho2.get_str() +
                ", rho=" + multipliers.rho.get_str();
        pair.assumptions.push_back(line);
    }
    pair.validate();

    for (std::size_t i = 1; i <= t; ++i)
        res.map.assignments.push_back(
            {indexed("A.Sn", i), target.muNames[i - 1], p[i - 1], {}});
    for (std::size_t q = 1; q <= s; ++q)
        res.map.assignments.push_back(
            {indexed("A.Sd", q), "eta-pairing", Int(1), groups[q - 1].rhsPerForm});
    return res;
}

ChainComplex cellular_complex(const CellPairDescription& desc, bool relativeQuotient) {
    std::vector<const FormalCell*> retained;
    unsigned top = 0;
    for (const FormalCell& c : desc.cells) {
        if (relativeQuotient && c.role == CellRole::InA) continue;
        retained.push_back(&c);
        top = std::max(top, c.dimension);
    }
    ChainComplex cx;
    if (retained.empty()) return cx;
    cx.dims.assign(top + 1, 0);
    std::map<std::string, std::size_t> index;  // cell id -> index within its dimension
    for (const FormalCell* c : retained) index[c->id] = cx.dims[c->dimension]++;
    cx.boundary.resize(top + 1);
    for (unsigned n = 0; n <= top; ++n)
        cx.boundary[n] = IntMatrix(n == 0 ? 0 : cx.dims[n - 1], cx.dims[n]);
    for (const FormalCell* c : retained) {
        if (c->dimension == 0) continue;
        for (const auto& [id, coeff] : c->attaching.hurewicz()) {
            auto it = index.find(id);
            if (it == index.end()) continue;  // boundary component living in A
            cx.boundary[c->dimension].at(it->second, index.at(c->id)) = coeff;
        }
    }
    return cx;
}

RelativeHomologyReport verify_relative_homology(const CellPairDescription& desc, unsigned d) {
    desc.validate();
    RelativeHomologyReport rep;
    rep.d = d;
    for (const FormalCell& c : desc.cells) rep.topDimension = std::max(rep.topDimension, c.dimension);

    ChainComplex total = cellular_complex(desc, false);
    ChainComplex quotient = cellular_complex(desc, true);
    if (!total.composesToZero() || !quotient.composesToZero())
        throw std::logic_error("cellular boundary does not square to zero");
    for (unsigned n = d + 1; n <= rep.topDimension; ++n) {
        FgAbelianGroup ht = total.homology(n);
        FgAbelianGroup hq = quotient.homology(n);
        if (!ht.isTrivial()) rep.totalAllZero = false;
        if (!hq.isTrivial()) rep.relativeAllZero = false;
        rep.totalComplexAboveD.emplace_back(n, std::move(ht));
        rep.relativeQuotientAboveD.emplace_back(n, std::move(hq));
    }
    rep.pairCohomologicalDimension = cohomological_dimension(quotient);
    return rep;
}

SkewExample encode_skew_example(const QuadraticSystem& skewSystem) {
    if (skewSystem.shape != SystemShape::QSKEW)
        throw std::invalid_argument("expected a skew system");
    skewSystem.validate();
    SkewExample ex;
    ex.complex.cells.push_back({"pt", 0, CellRole::InA, AttachingExpr::zero()});
    for (std::size_t i = 1; i <= skewSystem.r; ++i)
        ex.complex.cells.push_back(
            {indexed("X'.S3", i), 3, CellRole::FatWedge, AttachingExpr::zero()});
    for (std::size_t k = 0; k < skewSystem.rhs.size(); ++k) {
        std::vector<Int> coeffs;
        std::vector<AttachingExpr> terms;
        for (std::size_t i = 0; i < skewSystem.r; ++i)
            for (std::size_t j = i + 1; j < skewSystem.r; ++j) {
                const Int& a = skewSystem.coefficients[k].at(i, j);
                if (a == 0) continue;
                coeffs.push_back(a);
                terms.push_back(AttachingExpr::whitehead({AttachingExpr::cellRef(indexed("X'.S3", i + 1)),
                                                          AttachingExpr::cellRef(indexed("X'.S3", j + 1))}));
            }
        AttachingExpr attach = AttachingExpr::zero();
        if (terms.size() == 1 && coeffs[0] == 1)
            attach = std::move(terms[0]);
        else if (!terms.empty())
            attach = AttachingExpr::sum(std::move(coeffs), std::move(terms));
        ex.complex.cells.push_back(
            {indexed("X'.e6", k + 1), 6, CellRole::RelationCell, std::move(attach)});
        ex.sixCellDegrees.push_back(-skewSystem.rhs[k]);
    }
    ex.complex.validate();
    return ex;
}

}  // namespace rht
