#include "fixtures.hpp"

namespace ofd::testing {

std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(OFD_TEST_DATA_DIR) / name; }

Relation clinical() { return load_relation(data_path("clinical.csv")); }
Relation clinical_extended() { return load_relation(data_path("clinical_extended.csv")); }
Ontology clinical_ontology() { return Ontology::load_file(data_path("clinical_ontology.json")); }

Relation pairwise_overlap() { return load_relation(data_path("pairwise_overlap.csv")); }
Ontology pairwise_overlap_ontology() { return Ontology::load_file(data_path("pairwise_overlap_ontology.json")); }

Relation non_transitive() { return load_relation(data_path("non_transitive.csv")); }
Ontology non_transitive_ontology() { return Ontology::load_file(data_path("non_transitive_ontology.json")); }

}  // namespace ofd::testing
