#pragma once

#include <filesystem>
#include <string>

#include "ofd/ontology.hpp"
#include "ofd/relation.hpp"

namespace ofd::testing {

std::filesystem::path data_path(const std::string& name);

/// Clinical trials sample: CC, CTRY, SYMP, DIAG, MED over t1..t7.
Relation clinical();
/// clinical plus two hypertension rows prescribing lisinopril, so that neither
/// SYMP nor DIAG alone determines MED.
Relation clinical_extended();
/// Countries plus the drug hierarchy (ibuprofen, naproxen < NSAID <
/// analgesic; tylenol < acetaminophen < analgesic; morphine < opioid <
/// analgesic; lisinopril < ACE inhibitor < antihypertensive).
Ontology clinical_ontology();

/// X = u everywhere; Y-values pairwise share a class but all three do not.
Relation pairwise_overlap();
Ontology pairwise_overlap_ontology();

/// Non-transitivity example over Patient ID, CTRY, CC, SYMP.
Relation non_transitive();
Ontology non_transitive_ontology();

}  // namespace ofd::testing
