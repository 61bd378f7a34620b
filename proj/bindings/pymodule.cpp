// Python bindings: small-footprint wrappers over the C++ core. Scalars cross
// the boundary as Python ints (arbitrary precision preserved via decimal
// strings); structured data crosses as JSON strings in the documented file
// formats.
#include "rht/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

rht::Int intFromPy(const py::int_& v) {
    py::object s = py::reinterpret_steal<py::object>(PyObject_Str(v.ptr()));
    return rht::Int(s.cast<std::string>());
}

py::int_ pyFromInt(const rht::Int& v) {
    py::str s(v.get_str());
    return py::reinterpret_steal<py::int_>(PyNumber_Long(s.ptr()));
}

rht::IntMatrix matrixFromPy(const std::vector<std::vector<py::int_>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    rht::IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = intFromPy(rows[i][k]);
    }
    return m;
}

py::list pyFromMatrix(const rht::IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t k = 0; k < m.cols(); ++k) row.append(pyFromInt(m.at(i, k)));
        rows.append(row);
    }
    return rows;
}

py::list pyFromIntVector(const std::vector<rht::Int>& v) {
    py::list out;
    for (const rht::Int& x : v) out.append(pyFromInt(x));
    return out;
}

std::vector<rht::Int> intVectorFromPy(const std::vector<py::int_>& v) {
    std::vector<rht::Int> out;
    for (const py::int_& x : v) out.push_back(intFromPy(x));
    return out;
}

rht::SimplicialPair pairFromPy(const std::vector<std::vector<rht::VertexId>>& total,
                               const std::vector<std::vector<rht::VertexId>>& sub) {
    return rht::SimplicialPair::make(rht::SimplicialComplex::fromSimplices(total),
                                     rht::SimplicialComplex::fromSimplices(sub));
}

py::tuple pyFromGroup(const rht::FgAbelianGroup& g) {
    return py::make_tuple(g.freeRank(), pyFromIntVector(g.torsionFactors()));
}

py::list pyFromElements(const std::vector<rht::GroupElement>& elements) {
    py::list out;
    for (const rht::GroupElement& e : elements)
        out.append(py::make_tuple(pyFromIntVector(e.freePart), pyFromIntVector(e.torsionPart)));
    return out;
}

rht::MinimalModel modelFromText(const std::string& text) {
    return rht::model_from_json(rht::Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact integer/rational engine: matrices, homology, minimal models, "
              "quadratic systems, cell-pair encoding";

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<py::int_>>& a) {
            rht::SmithDecomposition s = rht::smith_normal_form(matrixFromPy(a));
            return py::make_tuple(pyFromMatrix(s.U), pyFromMatrix(s.D), pyFromMatrix(s.V));
        },
        py::arg("matrix"), "Certified diagonalization (U, D, V) with U*A*V = D.");

    m.def(
        "solve_integer_system",
        [](const std::vector<std::vector<py::int_>>& a,
           const std::vector<py::int_>& b) -> py::object {
            rht::IntLinearSolution s =
                rht::solve_integer_system(matrixFromPy(a), intVectorFromPy(b));
            if (!s.solution) return py::none();
            return pyFromIntVector(*s.solution);
        },
        py::arg("matrix"), py::arg("rhs"),
        "A particular integer solution of A x = b, or None.");

    m.def(
        "kernel_basis",
        [](const std::vector<std::vector<py::int_>>& a) {
            py::list out;
            for (const std::vector<rht::Int>& v :
                 rht::kernel_lattice_basis(matrixFromPy(a)).basisVectors)
                out.append(pyFromIntVector(v));
            return out;
        },
        py::arg("matrix"), "Basis of the integer kernel lattice.");

    m.def(
        "relative_homology",
        [](const std::vector<std::vector<rht::VertexId>>& total,
           const std::vector<std::vector<rht::VertexId>>& sub, std::size_t n) {
            return pyFromGroup(rht::relative_homology(pairFromPy(total, sub), n));
        },
        py::arg("total"), py::arg("sub"), py::arg("n"),
        "H_n(total, sub) as (freeRank, torsionFactors). Complexes are maximal simplex lists.");

    m.def(
        "relative_cohomology",
        [](const std::vector<std::vector<rht::VertexId>>& total,
           const std::vector<std::vector<rht::VertexId>>& sub, std::size_t n,
           std::size_t freeRank, const std::vector<py::int_>& torsionFactors) {
            rht::FgAbelianGroup pi = rht::canonical_group(freeRank, intVectorFromPy(torsionFactors));
            return pyFromGroup(rht::relative_cohomology(pairFromPy(total, sub), n, pi));
        },
        py::arg("total"), py::arg("sub"), py::arg("n"), py::arg("free_rank") = 1,
        py::arg("torsion_factors") = std::vector<py::int_>{},
        "H^n(total, sub; pi) for pi given in invariant-factor form.");

    m.def(
        "cohomological_dimension",
        [](const std::vector<std::vector<rht::VertexId>>& total,
           const std::vector<std::vector<rht::VertexId>>& sub) {
            return rht::cohomological_dimension(pairFromPy(total, sub));
        },
        py::arg("total"), py::arg("sub"));

    m.def(
        "cosets_mod_r",
        [](std::size_t freeRank, const std::vector<py::int_>& torsionFactors, const py::int_& r) {
            rht::FgAbelianGroup g = rht::canonical_group(freeRank, intVectorFromPy(torsionFactors));
            return pyFromElements(rht::cosets_mod_r(g, intFromPy(r)));
        },
        py::arg("free_rank"), py::arg("torsion_factors"), py::arg("r"));

    m.def(
        "order_dividing_subgroup",
        [](std::size_t freeRank, const std::vector<py::int_>& torsionFactors, const py::int_& r) {
            rht::FgAbelianGroup g = rht::canonical_group(freeRank, intVectorFromPy(torsionFactors));
            return pyFromElements(rht::order_dividing_subgroup(g, intFromPy(r)));
        },
        py::arg("free_rank"), py::arg("torsion_factors"), py::arg("r"));

    m.def(
        "model_validate",
        [](const std::string& modelJson) { return modelFromText(modelJson).validate(); },
        py::arg("model_json"), "Empty list when the model is well formed.");

    m.def(
        "is_rational_hspace_through",
        [](const std::string& modelJson, unsigned degree) {
            return modelFromText(modelJson).isRationalHspaceThrough(degree);
        },
        py::arg("model_json"), py::arg("degree"));

    m.def(
        "model_cohomology_dimension",
        [](const std::string& modelJson, unsigned degree, unsigned maxDegree) {
            return modelFromText(modelJson).cohomology(degree, maxDegree).dimension;
        },
        py::arg("model_json"), py::arg("degree"), py::arg("max_degree"));

    m.def(
        "extract_forms",
        [](const std::string& modelJson) {
            return rht::dump_json(
                rht::extraction_to_json(rht::extract_bilinear_forms(modelFromText(modelJson))));
        },
        py::arg("model_json"),
        "Extraction report JSON; raises ValueError on a rational H-space.");

    m.def(
        "brute_force_solve",
        [](const std::string& systemJson, const py::int_& bound,
           const py::int_& budget) -> py::object {
            std::optional<rht::Assignment> s =
                rht::brute_force_solve(rht::system_from_json(rht::Json::parse(systemJson)),
                                       intFromPy(bound), intFromPy(budget));
            if (!s) return py::none();
            return py::str(rht::dump_json(rht::assignment_to_json(*s)));
        },
        py::arg("system_json"), py::arg("bound"), py::arg("budget") = py::int_(20000000),
        "Lexicographically least solution in the box as JSON, or None.");

    m.def(
        "reduce_to_blocks",
        [](const std::string& qdiffJson, const std::vector<std::vector<std::vector<py::int_>>>& forms) {
            std::vector<rht::IntMatrix> formMatrices;
            for (const auto& f : forms) formMatrices.push_back(matrixFromPy(f));
            return rht::dump_json(rht::reduction_to_json(rht::reduce_qdiff_to_qblin(
                rht::system_from_json(rht::Json::parse(qdiffJson)), formMatrices)));
        },
        py::arg("qdiff_json"), py::arg("forms"));

    m.def(
        "squareify",
        [](const std::vector<std::vector<py::int_>>& b) {
            return rht::dump_json(rht::squareify_to_json(rht::squareify(matrixFromPy(b))));
        },
        py::arg("matrix"));

    m.def(
        "encode",
        [](const std::string& systemJson, const std::string& extractionJson) {
            return rht::dump_json(rht::encode_result_to_json(
                rht::encode(rht::system_from_json(rht::Json::parse(systemJson)),
                            rht::extraction_from_json(rht::Json::parse(extractionJson)))));
        },
        py::arg("system_json"), py::arg("extraction_json"));

    m.def(
        "verify_homology",
        [](const std::string& cellPairJson, unsigned d) {
            return rht::dump_json(rht::homology_report_to_json(rht::verify_relative_homology(
                rht::cell_pair_from_json(rht::Json::parse(cellPairJson)), d)));
        },
        py::arg("cell_pair_json"), py::arg("d"));

    m.def(
        "run_instance",
        [](const std::string& qdiffJson, const std::vector<std::vector<std::vector<py::int_>>>& forms,
           const py::int_& bound, const py::int_& budget) {
            std::vector<rht::IntMatrix> formMatrices;
            for (const auto& f : forms) formMatrices.push_back(matrixFromPy(f));
            return rht::dump_json(rht::instance_report_to_json(
                rht::run_instance(rht::system_from_json(rht::Json::parse(qdiffJson)), formMatrices,
                                  intFromPy(bound), intFromPy(budget))));
        },
        py::arg("qdiff_json"), py::arg("forms"), py::arg("bound"),
        py::arg("budget") = py::int_(20000000));
}
