#pragma once

#include "rht/cdga.hpp"
#include "rht/diophantine.hpp"
#include "rht/encoder.hpp"
#include "rht/haction.hpp"
#include "rht/simplicial.hpp"

#include <json.hpp>

#include <string>

namespace rht {

// Wire format conventions: integers are decimal strings (plain JSON integers
// accepted on input), rationals are "p/q" strings, matrices are arrays of row
// arrays, complexes are lists of maximal simplices. Key order is fixed so
// identical inputs dump byte-identical reports.
using Json = nlohmann::ordered_json;

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json rat_to_json(const Rat& v);
Rat rat_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json int_vector_to_json(const std::vector<Int>& v);
std::vector<Int> int_vector_from_json(const Json& j);

Json group_to_json(const FgAbelianGroup& g);
FgAbelianGroup group_from_json(const Json& j);
Json element_to_json(const GroupElement& e);
GroupElement element_from_json(const Json& j);

Json complex_to_json(const SimplicialComplex& c);  // maximal simplices
SimplicialComplex complex_from_json(const Json& j);
Json pair_to_json(const SimplicialPair& p);
SimplicialPair pair_from_json(const Json& j);

Json model_to_json(const MinimalModel& m);
MinimalModel model_from_json(const Json& j);
Json extraction_to_json(const BilinearFormExtraction& e);
BilinearFormExtraction extraction_from_json(const Json& j);

// Cochain values are keyed by comma-joined vertex labels of the simplex.
Json cochain_to_json(const SimplicialComplex& ambient, const CochainSpec& spec);
CochainSpec cochain_from_json(const SimplicialComplex& ambient, const Json& j);

Json system_to_json(const QuadraticSystem& s);
QuadraticSystem system_from_json(const Json& j);
Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);
Json squareify_to_json(const SquareifyResult& r);
Json reduction_to_json(const QblinReduction& r);
QblinReduction reduction_from_json(const Json& j);
Json forward_witness_to_json(const ForwardWitness& w);
Json corrected_witness_to_json(const CorrectedWitness& w);
Json backward_transport_to_json(const BackwardTransport& t);
Json instance_report_to_json(const InstanceReport& r);
Json harness_report_to_json(const HarnessReport& r);

Json cell_pair_to_json(const CellPairDescription& d);
CellPairDescription cell_pair_from_json(const Json& j);
Json map_description_to_json(const MapDescription& m);
MapDescription map_description_from_json(const Json& j);
Json encode_result_to_json(const EncodeResult& r);
Json homology_report_to_json(const RelativeHomologyReport& r);
Json skew_example_to_json(const SkewExample& e);

Json mapping_group_to_json(const MappingGroup& g);
Json vff_to_json(const VffStructure& v);

// Canonical text form: two-space indent, trailing newline.
std::string dump_json(const Json& j);
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace rht
