// Batch front end: every command reads JSON files, writes one JSON report to
// stdout (and to --output when given), and exits 0 for an affirmative result,
// 1 for a computed negative, 2 for input errors, 3 for budget exhaustion.
#include "rht/serialize.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using rht::Json;

void emit(const Json& report, const std::string& outputPath) {
    std::string text = rht::dump_json(report);
    std::cout << text;
    if (!outputPath.empty()) rht::save_json_file(outputPath, report);
}

rht::FgAbelianGroup parseCoefficients(const std::string& text) {
    return rht::group_from_json(Json::parse(text));
}

// Forms file: either an extraction report or a bare array of matrices.
std::vector<rht::IntMatrix> loadForms(const std::string& path) {
    Json j = rht::load_json_file(path);
    std::vector<rht::IntMatrix> forms;
    if (j.is_array()) {
        for (const Json& f : j) forms.push_back(rht::matrix_from_json(f));
    } else {
        for (const Json& f : j.at("forms")) forms.push_back(rht::matrix_from_json(f));
    }
    return forms;
}

// System file: a bare QBLIN system or a full reduction with permutations.
rht::QblinReduction loadReduction(const std::string& path) {
    Json j = rht::load_json_file(path);
    if (j.contains("system")) return rht::reduction_from_json(j);
    rht::QblinReduction r;
    r.system = rht::system_from_json(j);
    if (!r.system.forms.empty()) {
        r.distinguishedEntry = r.system.forms[0].rows() && r.system.forms[0].cols()
                                   ? r.system.forms[0].at(0, 0)
                                   : rht::Int(0);
    }
    return r;
}

int runPipeline(const std::string& modelPath, const std::string& qdiffPath, long bound,
                long budget, const std::string& outputPath) {
    std::string stage = "load";
    try {
        stage = "load";
        rht::MinimalModel model = rht::model_from_json(rht::load_json_file(modelPath));
        rht::QuadraticSystem qdiff = rht::system_from_json(rht::load_json_file(qdiffPath));

        Json report;
        stage = "extract";
        rht::BilinearFormExtraction extraction;
        try {
            extraction = rht::extract_bilinear_forms(model);
        } catch (const std::domain_error& e) {
            report["stage"] = stage;
            report["error"] = e.what();
            emit(report, outputPath);
            return 1;
        }
        report["extraction"] = rht::extraction_to_json(extraction);

        stage = "reduce";
        rht::QblinReduction reduction = rht::reduce_qdiff_to_qblin(qdiff, extraction.forms);
        report["reduction"] = rht::reduction_to_json(reduction);

        stage = "encode";
        rht::EncodeResult encoded = rht::encode(reduction.system, extraction);
        report["encode"] = rht::encode_result_to_json(encoded);

        stage = "verify";
        rht::RelativeHomologyReport homology =
            rht::verify_relative_homology(encoded.pair, encoded.d);
        report["homology"] = rht::homology_report_to_json(homology);

        stage = "solve";
        rht::InstanceReport instance =
            rht::run_instance(qdiff, extraction.forms, rht::Int(bound), rht::Int(budget));
        report["instance"] = rht::instance_report_to_json(instance);

        bool affirmative = instance.verdict == "consistent" && homology.totalAllZero;
        report["verdict"] = affirmative ? "consistent" : "inconsistent-with-paper";
        emit(report, outputPath);
        return affirmative ? 0 : 1;
    } catch (const rht::BudgetError& e) {
        std::cerr << "pipeline stage " << stage << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "pipeline stage " << stage << ": " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pipeline from minimal models to quadratic systems and cell pairs"};
    app.require_subcommand(1);

    std::string input, output, model, formsPath, coefficientsText = "{\"freeRank\":1,\"torsionFactors\":[]}";
    long degree = -1, bound = 3;
    long budget = 20000000;
    unsigned long long seed = 0;
    std::size_t count = 100, maxR = 2, maxS = 2;
    long lo = -2, hi = 2;
    long rho = 1, rho1 = 1, rho2 = 1;
    std::vector<long> pMultipliers;

    CLI::App* cohomology = app.add_subcommand("cohomology", "relative cohomology of a pair file");
    cohomology->add_option("--input", input, "pair file {total, sub}")->required();
    cohomology->add_option("--degree", degree, "cohomological degree")->required();
    cohomology->add_option("--coefficients", coefficientsText, "coefficient group JSON");
    cohomology->add_option("--output", output, "report path");

    CLI::App* cd = app.add_subcommand("cd", "cohomological dimension of a pair file");
    cd->add_option("--input", input, "pair file {total, sub}")->required();
    cd->add_option("--output", output, "report path");

    CLI::App* hspace = app.add_subcommand("hspace-check", "zero-differential check through a degree");
    hspace->add_option("--input", input, "minimal model file")->required();
    hspace->add_option("--degree", degree, "inspection ceiling")->required();
    hspace->add_option("--output", output, "report path");

    CLI::App* extract = app.add_subcommand("extract-forms", "bilinear forms of the first nontrivial differential");
    extract->add_option("--input", input, "minimal model file")->required();
    extract->add_option("--output", output, "report path");

    CLI::App* reduce = app.add_subcommand("reduce", "compile a difference system against pairing forms");
    reduce->add_option("--input", input, "difference-shape system file")->required();
    reduce->add_option("--forms", formsPath, "forms file (extraction or matrix array)")->required();
    reduce->add_option("--output", output, "report path");

    CLI::App* solve = app.add_subcommand("solve", "exhaustive box search on a system file");
    solve->add_option("--input", input, "system or reduction file")->required();
    solve->add_option("--bound", bound, "box half-width N");
    solve->add_option("--budget", budget, "enumeration budget");
    solve->add_option("--output", output, "report path");

    CLI::App* harness = app.add_subcommand("harness", "seeded random equivalence audit");
    harness->add_option("--seed", seed, "generator seed")->required();
    harness->add_option("--count", count, "instance count");
    harness->add_option("--forms", formsPath, "forms file")->required();
    harness->add_option("--bound", bound, "box half-width N");
    harness->add_option("--budget", budget, "enumeration budget");
    harness->add_option("--max-r", maxR, "max variables per side");
    harness->add_option("--max-s", maxS, "max equations");
    harness->add_option("--lo", lo, "coefficient range low end");
    harness->add_option("--hi", hi, "coefficient range high end");
    harness->add_option("--output", output, "report path");

    CLI::App* encode = app.add_subcommand("encode", "compile a block system + forms target to a cell pair");
    encode->add_option("--input", input, "block system or reduction file")->required();
    encode->add_option("--forms", formsPath, "extraction file")->required();
    encode->add_option("--rho", rho, "relation-cell degree multiplier");
    encode->add_option("--rho1", rho1, "first cylinder multiplier");
    encode->add_option("--rho2", rho2, "second cylinder multiplier");
    encode->add_option("--p-multipliers", pMultipliers, "one multiplier per extra sphere factor");
    encode->add_option("--output", output, "report path");

    CLI::App* verify = app.add_subcommand("verify", "homology of an encoded cell pair above a degree");
    verify->add_option("--input", input, "cell pair file")->required();
    verify->add_option("--degree", degree, "vanishing threshold d")->required();
    verify->add_option("--output", output, "report path");

    CLI::App* pipeline = app.add_subcommand("pipeline", "extract, reduce, encode, verify, solve");
    pipeline->add_option("--model", model, "minimal model file")->required();
    pipeline->add_option("--input", input, "difference-shape system file")->required();
    pipeline->add_option("--bound", bound, "box half-width N");
    pipeline->add_option("--budget", budget, "enumeration budget");
    pipeline->add_option("--output", output, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cohomology->parsed()) {
            rht::SimplicialPair pair = rht::pair_from_json(rht::load_json_file(input));
            rht::FgAbelianGroup pi = parseCoefficients(coefficientsText);
            if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
            rht::FgAbelianGroup h =
                rht::relative_cohomology(pair, static_cast<std::size_t>(degree), pi);
            emit(Json{{"degree", degree}, {"group", rht::group_to_json(h)}}, output);
            return 0;
        }
        if (cd->parsed()) {
            rht::SimplicialPair pair = rht::pair_from_json(rht::load_json_file(input));
            int dim = rht::cohomological_dimension(pair);
            emit(Json{{"cohomologicalDimension", dim}}, output);
            return 0;
        }
        if (hspace->parsed()) {
            rht::MinimalModel m = rht::model_from_json(rht::load_json_file(input));
            std::vector<std::string> violations = m.validate();
            if (!violations.empty())
                throw std::invalid_argument("invalid model: " + violations.front());
            if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
            bool ok = m.isRationalHspaceThrough(static_cast<unsigned>(degree));
            std::optional<unsigned> first = m.firstNontrivialDegree();
            Json report{{"throughDegree", degree}, {"rationalHspace", ok}};
            report["firstNontrivialDegree"] = first ? Json(*first) : Json(nullptr);
            emit(report, output);
            return ok ? 0 : 1;
        }
        if (extract->parsed()) {
            rht::MinimalModel m = rht::model_from_json(rht::load_json_file(input));
            std::vector<std::string> violations = m.validate();
            if (!violations.empty())
                throw std::invalid_argument("invalid model: " + violations.front());
            try {
                rht::BilinearFormExtraction e = rht::extract_bilinear_forms(m);
                emit(rht::extraction_to_json(e), output);
                return 0;
            } catch (const std::domain_error& e) {
                std::cerr << e.what() << "\n";
                return 1;
            }
        }
        if (reduce->parsed()) {
            rht::QuadraticSystem qdiff = rht::system_from_json(rht::load_json_file(input));
            rht::QblinReduction r = rht::reduce_qdiff_to_qblin(qdiff, loadForms(formsPath));
            emit(rht::reduction_to_json(r), output);
            return 0;
        }
        if (solve->parsed()) {
            Json j = rht::load_json_file(input);
            std::optional<rht::Assignment> solution;
            if (j.contains("system")) {
                solution = rht::solve_reduction_in_box(rht::reduction_from_json(j), rht::Int(bound));
            } else {
                solution = rht::brute_force_solve(rht::system_from_json(j), rht::Int(bound),
                                                  rht::Int(budget));
            }
            Json report{{"bound", bound}, {"solvable", solution.has_value()}};
            if (solution) report["solution"] = rht::assignment_to_json(*solution);
            emit(report, output);
            return solution ? 0 : 1;
        }
        if (harness->parsed()) {
            std::vector<rht::QuadraticSystem> instances =
                rht::random_qdiff_instances(seed, count, maxR, maxS, lo, hi);
            rht::HarnessReport report = rht::equivalence_harness(instances, loadForms(formsPath),
                                                                 rht::Int(bound), rht::Int(budget));
            Json j = rht::harness_report_to_json(report);
            j["seed"] = seed;
            emit(j, output);
            return report.inconsistentCount == 0 ? 0 : 1;
        }
        if (encode->parsed()) {
            rht::QblinReduction reduction = loadReduction(input);
            rht::BilinearFormExtraction target =
                rht::extraction_from_json(rht::load_json_file(formsPath));
            rht::EncodeMultipliers mult;
            mult.rho = rho;
            mult.rho1 = rho1;
            mult.rho2 = rho2;
            for (long p : pMultipliers) mult.p.push_back(rht::Int(p));
            rht::EncodeResult result = rht::encode(reduction.system, target, mult);
            emit(rht::encode_result_to_json(result), output);
            return 0;
        }
        if (verify->parsed()) {
            Json j = rht::load_json_file(input);
            rht::CellPairDescription desc =
                rht::cell_pair_from_json(j.contains("pair") ? j.at("pair") : j);
            if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
            rht::RelativeHomologyReport report =
                rht::verify_relative_homology(desc, static_cast<unsigned>(degree));
            emit(rht::homology_report_to_json(report), output);
            return report.totalAllZero ? 0 : 1;
        }
        if (pipeline->parsed()) return runPipeline(model, input, bound, budget, output);
    } catch (const rht::BudgetError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
