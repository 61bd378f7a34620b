#include "rht/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rht {

Json int_to_json(const Int& v) { return v.get_str(); }

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or decimal string)");
}

Json rat_to_json(const Rat& v) { return v.get_str(); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    }
    throw std::invalid_argument("expected a rational (number or p/q string)");
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(int_to_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
    std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = int_from_json(j[i][k]);
    }
    return m;
}

Json int_vector_to_json(const std::vector<Int>& v) {
    Json out = Json::array();
    for (const Int& x : v) out.push_back(int_to_json(x));
    return out;
}

std::vector<Int> int_vector_from_json(const Json& j) {
    std::vector<Int> out;
    for (const Json& x : j) out.push_back(int_from_json(x));
    return out;
}

Json group_to_json(const FgAbelianGroup& g) {
    return Json{{"freeRank", g.freeRank()}, {"torsionFactors", int_vector_to_json(g.torsionFactors())}};
}

FgAbelianGroup group_from_json(const Json& j) {
    return FgAbelianGroup(j.at("freeRank").get<std::size_t>(),
                          int_vector_from_json(j.at("torsionFactors")));
}

Json element_to_json(const GroupElement& e) {
    return Json{{"freePart", int_vector_to_json(e.freePart)},
                {"torsionPart", int_vector_to_json(e.torsionPart)}};
}

GroupElement element_from_json(const Json& j) {
    return GroupElement{int_vector_from_json(j.at("freePart")),
                        int_vector_from_json(j.at("torsionPart"))};
}

Json complex_to_json(const SimplicialComplex& c) {
    Json out = Json::array();
    if (c.empty()) return out;
    // A simplex is maximal iff it is not a facet of any simplex one dimension up.
    for (int d = 0; d <= c.topDimension(); ++d) {
        std::set<Simplex> facets;
        if (d + 1 <= c.topDimension())
            for (const Simplex& s : c.simplices(static_cast<std::size_t>(d) + 1))
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    Simplex f;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != drop) f.push_back(s[i]);
                    facets.insert(std::move(f));
                }
        for (const Simplex& s : c.simplices(static_cast<std::size_t>(d)))
            if (!facets.count(s)) out.push_back(s);
    }
    return out;
}

SimplicialComplex complex_from_json(const Json& j) {
    std::vector<Simplex> simplices;
    for (const Json& s : j) simplices.push_back(s.get<Simplex>());
    return SimplicialComplex::fromSimplices(simplices);
}

Json pair_to_json(const SimplicialPair& p) {
    return Json{{"total", complex_to_json(p.total)}, {"sub", complex_to_json(p.sub)}};
}

SimplicialPair pair_from_json(const Json& j) {
    return SimplicialPair::make(complex_from_json(j.at("total")), complex_from_json(j.at("sub")));
}

Json model_to_json(const MinimalModel& m) {
    Json gens = Json::array();
    for (std::size_t i = 0; i < m.generatorCount(); ++i)
        gens.push_back(Json{{"name", m.generator(i).name}, {"degree", m.generator(i).degree}});
    Json diff = Json::object();
    for (std::size_t i = 0; i < m.generatorCount(); ++i) {
        const Polynomial& p = m.differentialOf(i);
        if (p.empty()) continue;
        Json terms = Json::array();
        for (const auto& [mono, coeff] : p) {
            Json names = Json::array();
            for (std::uint32_t g : mono) names.push_back(m.generator(g).name);
            terms.push_back(Json{{"coeff", rat_to_json(coeff)}, {"monomial", std::move(names)}});
        }
        diff[m.generator(i).name] = std::move(terms);
    }
    return Json{{"generators", std::move(gens)}, {"differential", std::move(diff)}};
}

MinimalModel model_from_json(const Json& j) {
    std::vector<CdgaGenerator> gens;
    for (const Json& g : j.at("generators"))
        gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<unsigned>()});
    MinimalModel m(std::move(gens));
    if (j.contains("differential"))
        for (const auto& [name, terms] : j.at("differential").items()) {
            Polynomial p;
            for (const Json& term : terms) {
                Monomial mono;
                for (const Json& n : term.at("monomial"))
                    mono.push_back(m.indexOf(n.get<std::string>()));
                std::sort(mono.begin(), mono.end());
                Rat c = rat_from_json(term.at("coeff"));
                auto [it, inserted] = p.try_emplace(std::move(mono), c);
                if (!inserted) {
                    it->second += c;
                    if (it->second == 0) p.erase(it);
                }
            }
            m.setDifferential(name, std::move(p));
        }
    return m;
}

Json extraction_to_json(const BilinearFormExtraction& e) {
    Json forms = Json::array();
    for (const IntMatrix& f : e.forms) forms.push_back(matrix_to_json(f));
    return Json{{"targetDegree", e.targetDegree},
                {"degreeAlpha", e.degreeAlpha},
                {"degreeBeta", e.degreeBeta},
                {"muNames", e.muNames},
                {"muDegrees", e.muDegrees},
                {"distinguishedCoefficient", rat_to_json(e.distinguishedCoefficient)},
                {"etaNames", e.etaNames},
                {"alphaBasis", e.alphaBasis},
                {"betaBasis", e.betaBasis},
                {"forms", std::move(forms)},
                {"denominatorLcm", int_to_json(e.denominatorLcm)}};
}

BilinearFormExtraction extraction_from_json(const Json& j) {
    BilinearFormExtraction e;
    e.targetDegree = j.at("targetDegree").get<unsigned>();
    e.degreeAlpha = j.at("degreeAlpha").get<unsigned>();
    e.degreeBeta = j.at("degreeBeta").get<unsigned>();
    e.muNames = j.at("muNames").get<std::vector<std::string>>();
    e.muDegrees = j.at("muDegrees").get<std::vector<unsigned>>();
    if (j.contains("distinguishedCoefficient"))
        e.distinguishedCoefficient = rat_from_json(j.at("distinguishedCoefficient"));
    e.etaNames = j.at("etaNames").get<std::vector<std::string>>();
    e.alphaBasis = j.at("alphaBasis").get<std::vector<std::string>>();
    e.betaBasis = j.at("betaBasis").get<std::vector<std::string>>();
    for (const Json& f : j.at("forms")) e.forms.push_back(matrix_from_json(f));
    e.denominatorLcm = j.contains("denominatorLcm") ? int_from_json(j.at("denominatorLcm")) : Int(1);
    return e;
}

namespace {

std::string simplexLabel(const Simplex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out;
}

Simplex simplexFromLabel(const std::string& label) {
    Simplex s;
    std::istringstream in(label);
    std::string piece;
    while (std::getline(in, piece, ',')) s.push_back(std::stoll(piece));
    return s;
}

}  // namespace

Json cochain_to_json(const SimplicialComplex& ambient, const CochainSpec& spec) {
    Json values = Json::object();
    const std::vector<Simplex>& simplices = ambient.simplices(spec.degree);
    for (std::size_t i = 0; i < simplices.size() && i < spec.values.size(); ++i)
        if (!spec.coefficients.isZero(spec.values[i]))
            values[simplexLabel(simplices[i])] = element_to_json(spec.values[i]);
    return Json{{"degree", spec.degree},
                {"coefficients", group_to_json(spec.coefficients)},
                {"values", std::move(values)}};
}

CochainSpec cochain_from_json(const SimplicialComplex& ambient, const Json& j) {
    CochainSpec spec;
    spec.degree = j.at("degree").get<std::size_t>();
    spec.coefficients = group_from_json(j.at("coefficients"));
    spec.values.assign(ambient.count(spec.degree), spec.coefficients.zero());
    if (j.contains("values"))
        for (const auto& [label, el] : j.at("values").items()) {
            Simplex s = simplexFromLabel(label);
            if (!ambient.contains(s))
                throw std::invalid_argument("cochain value on unknown simplex " + label);
            if (s.size() != spec.degree + 1)
                throw std::invalid_argument("cochain value on wrong-dimension simplex " + label);
            spec.values[ambient.indexOf(s)] = spec.coefficients.reduce(element_from_json(el));
        }
    return spec;
}

Json system_to_json(const QuadraticSystem& s) {
    Json out;
    out["shape"] = to_string(s.shape);
    if (s.shape == SystemShape::QBLIN) {
        out["uBlockDim"] = s.uBlockDim;
        out["vBlockDim"] = s.vBlockDim;
        out["uBlockNames"] = s.uBlockNames;
        out["vBlockNames"] = s.vBlockNames;
        Json forms = Json::array();
        for (const IntMatrix& f : s.forms) forms.push_back(matrix_to_json(f));
        out["forms"] = std::move(forms);
        Json eqs = Json::array();
        for (const QblinEquation& e : s.equations) {
            Json eq{{"form", e.form},
                    {"coeffs", matrix_to_json(e.coeffs)},
                    {"rhs", int_to_json(e.rhs)},
                    {"family", e.family}};
            if (e.tensor != static_cast<std::size_t>(-1)) eq["tensor"] = e.tensor;
            eqs.push_back(std::move(eq));
        }
        out["equations"] = std::move(eqs);
    } else {
        out["r"] = s.r;
        Json coeffs = Json::array();
        for (const IntMatrix& c : s.coefficients) coeffs.push_back(matrix_to_json(c));
        out["coefficients"] = std::move(coeffs);
        out["rhs"] = int_vector_to_json(s.rhs);
    }
    return out;
}

QuadraticSystem system_from_json(const Json& j) {
    QuadraticSystem s;
    s.shape = shape_from_string(j.at("shape").get<std::string>());
    if (s.shape == SystemShape::QBLIN) {
        s.uBlockDim = j.at("uBlockDim").get<std::size_t>();
        s.vBlockDim = j.at("vBlockDim").get<std::size_t>();
        s.uBlockNames = j.at("uBlockNames").get<std::vector<std::string>>();
        s.vBlockNames = j.at("vBlockNames").get<std::vector<std::string>>();
        for (const Json& f : j.at("forms")) s.forms.push_back(matrix_from_json(f));
        for (const Json& eq : j.at("equations")) {
            QblinEquation e;
            e.form = eq.at("form").get<std::size_t>();
            e.coeffs = matrix_from_json(eq.at("coeffs"));
            e.rhs = int_from_json(eq.at("rhs"));
            if (eq.contains("family")) e.family = eq.at("family").get<std::string>();
            if (eq.contains("tensor")) e.tensor = eq.at("tensor").get<std::size_t>();
            s.equations.push_back(std::move(e));
        }
    } else {
        s.r = j.at("r").get<std::size_t>();
        for (const Json& c : j.at("coefficients")) s.coefficients.push_back(matrix_from_json(c));
        s.rhs = int_vector_from_json(j.at("rhs"));
    }
    s.validate();
    return s;
}

Json assignment_to_json(const Assignment& a) {
    Json out = Json::object();
    for (const auto& [name, value] : a) out[name] = int_to_json(value);
    return out;
}

Assignment assignment_from_json(const Json& j) {
    Assignment a;
    for (const auto& [name, value] : j.items()) a[name] = int_from_json(value);
    return a;
}

Json squareify_to_json(const SquareifyResult& r) {
    return Json{{"reducedRows", matrix_to_json(r.reducedRows)},
                {"square", matrix_to_json(r.square)},
                {"uToReduced", matrix_to_json(r.uToReduced)},
                {"uFromReduced", matrix_to_json(r.uFromReduced)},
                {"vToSquare", matrix_to_json(r.vToSquare)},
                {"vFromSquare", matrix_to_json(r.vFromSquare)}};
}

Json reduction_to_json(const QblinReduction& r) {
    return Json{{"system", system_to_json(r.system)},
                {"qdiffR", r.qdiffR},
                {"qdiffS", r.qdiffS},
                {"formPerm", r.formPerm},
                {"rowPerm", r.rowPerm},
                {"colPerm", r.colPerm},
                {"distinguishedEntry", int_to_json(r.distinguishedEntry)}};
}

QblinReduction reduction_from_json(const Json& j) {
    QblinReduction r;
    r.system = system_from_json(j.at("system"));
    r.qdiffR = j.at("qdiffR").get<std::size_t>();
    r.qdiffS = j.at("qdiffS").get<std::size_t>();
    r.formPerm = j.at("formPerm").get<std::vector<std::size_t>>();
    r.rowPerm = j.at("rowPerm").get<std::vector<std::size_t>>();
    r.colPerm = j.at("colPerm").get<std::vector<std::size_t>>();
    r.distinguishedEntry = int_from_json(j.at("distinguishedEntry"));
    return r;
}

Json forward_witness_to_json(const ForwardWitness& w) {
    return Json{{"assignment", assignment_to_json(w.assignment)},
                {"residual", int_vector_to_json(w.residual)},
                {"residualZero", w.residualZero}};
}

Json corrected_witness_to_json(const CorrectedWitness& w) {
    return Json{{"assignment", assignment_to_json(w.assignment)},
                {"c", int_vector_to_json(w.c)},
                {"d", int_vector_to_json(w.d)},
                {"scaledRhsFactor", int_to_json(w.scaledRhsFactor)},
                {"residual", int_vector_to_json(w.residual)},
                {"residualZero", w.residualZero}};
}

Json backward_transport_to_json(const BackwardTransport& t) {
    return Json{{"normalized", assignment_to_json(t.normalized)},
                {"x", int_vector_to_json(t.x)},
                {"y", int_vector_to_json(t.y)},
                {"scaleFactor", int_to_json(t.scaleFactor)},
                {"verified", t.verified}};
}

Json instance_report_to_json(const InstanceReport& r) {
    Json out;
    out["qdiff"] = system_to_json(r.qdiff);
    out["qdiffSolvable"] = r.qdiffSolvable;
    if (r.qdiffSolution) out["qdiffSolution"] = assignment_to_json(*r.qdiffSolution);
    out["instSolvable"] = r.instSolvable;
    if (r.instSolution) out["instSolution"] = assignment_to_json(*r.instSolution);
    if (r.forward) out["forward"] = forward_witness_to_json(*r.forward);
    if (r.correctedForward) out["correctedForward"] = corrected_witness_to_json(*r.correctedForward);
    if (r.backward) out["backward"] = backward_transport_to_json(*r.backward);
    out["verdict"] = r.verdict;
    return out;
}

Json harness_report_to_json(const HarnessReport& r) {
    Json instances = Json::array();
    for (const InstanceReport& i : r.instances) instances.push_back(instance_report_to_json(i));
    return Json{{"summary",
                 Json{{"instances", r.instances.size()},
                      {"consistent", r.consistentCount},
                      {"inconsistentWithPaper", r.inconsistentCount},
                      {"qdiffSolvable", r.qdiffSolvableCount},
                      {"instSolvable", r.instSolvableCount},
                      {"forwardResidualZero", r.forwardResidualZeroCount},
                      {"forwardResidualNonzero", r.forwardResidualNonzeroCount},
                      {"backwardVerified", r.backwardVerifiedCount}}},
                {"instances", std::move(instances)}};
}

Json cell_pair_to_json(const CellPairDescription& d) {
    Json cells = Json::array();
    for (const FormalCell& c : d.cells)
        cells.push_back(Json{{"id", c.id},
                             {"dimension", c.dimension},
                             {"role", to_string(c.role)},
                             {"attaching", c.attaching.print()}});
    return Json{{"cells", std::move(cells)}, {"assumptions", d.assumptions}};
}

CellPairDescription cell_pair_from_json(const Json& j) {
    CellPairDescription d;
    for (const Json& c : j.at("cells"))
        d.cells.push_back({c.at("id").get<std::string>(), c.at("dimension").get<unsigned>(),
                           cell_role_from_string(c.at("role").get<std::string>()),
                           AttachingExpr::parse(c.at("attaching").get<std::string>())});
    if (j.contains("assumptions")) d.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    d.validate();
    return d;
}

Json map_description_to_json(const MapDescription& m) {
    Json assignments = Json::array();
    for (const SphereAssignment& a : m.assignments)
        assignments.push_back(Json{{"sphere", a.sphere},
                                   {"targetClass", a.targetClass},
                                   {"multiplier", int_to_json(a.multiplier)},
                                   {"pairings", int_vector_to_json(a.pairings)}});
    return Json{{"assignments", std::move(assignments)}};
}

MapDescription map_description_from_json(const Json& j) {
    MapDescription m;
    for (const Json& a : j.at("assignments"))
        m.assignments.push_back({a.at("sphere").get<std::string>(),
                                 a.at("targetClass").get<std::string>(),
                                 int_from_json(a.at("multiplier")),
                                 int_vector_from_json(a.at("pairings"))});
    return m;
}

Json encode_result_to_json(const EncodeResult& r) {
    return Json{{"pair", cell_pair_to_json(r.pair)},
                {"map", map_description_to_json(r.map)},
                {"d", r.d},
                {"d1", r.d1},
                {"d2", r.d2},
                {"sphereCountA", r.sphereCountA},
                {"tensorCount", r.tensorCount}};
}

namespace {

Json gradedGroups(const std::vector<std::pair<unsigned, FgAbelianGroup>>& groups) {
    Json out = Json::array();
    for (const auto& [n, g] : groups)
        out.push_back(Json{{"degree", n}, {"group", group_to_json(g)}});
    return out;
}

}  // namespace

Json homology_report_to_json(const RelativeHomologyReport& r) {
    return Json{{"topDimension", r.topDimension},
                {"d", r.d},
                {"totalComplexAboveD", gradedGroups(r.totalComplexAboveD)},
                {"relativeQuotientAboveD", gradedGroups(r.relativeQuotientAboveD)},
                {"totalAllZero", r.totalAllZero},
                {"relativeAllZero", r.relativeAllZero},
                {"pairCohomologicalDimension", r.pairCohomologicalDimension}};
}

Json skew_example_to_json(const SkewExample& e) {
    return Json{{"complex", cell_pair_to_json(e.complex)},
                {"sixCellDegrees", int_vector_to_json(e.sixCellDegrees)}};
}

Json mapping_group_to_json(const MappingGroup& g) {
    Json components = Json::array();
    for (const auto& [n, h] : g.degreeComponents)
        components.push_back(Json{{"degree", n}, {"group", group_to_json(h)}});
    return Json{{"degreeComponents", std::move(components)}, {"total", group_to_json(g.total)}};
}

Json vff_to_json(const VffStructure& v) {
    Json stabilizers = Json::array();
    for (const std::vector<GroupElement>& stab : v.stabilizers) {
        Json list = Json::array();
        for (const GroupElement& e : stab) list.push_back(element_to_json(e));
        stabilizers.push_back(std::move(list));
    }
    return Json{{"group", mapping_group_to_json(v.actingGroup)},
                {"representatives", v.orbitRepresentatives},
                {"stabilizers", std::move(stabilizers)}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << dump_json(j);
}

}  // namespace rht
