#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ofd/ontology.hpp"
#include "ofd/relation.hpp"
#include "ofd/verify.hpp"

namespace ofd {

/// Tuple ids are 0-based data-row positions.
struct RepairSuggestion {
    TupleId tuple = 0;
    std::string value;
    std::string suggestion;
};

struct ViolatingClass {
    TupleId representative = 0;
    std::vector<TupleId> tuples;
    ClassId majority;
    std::vector<TupleId> majority_tuples;
    /// One per minority tuple, ascending by tuple id.
    std::vector<RepairSuggestion> repairs;
};

struct OfdViolations {
    Ofd ofd;
    double support = 0.0;
    std::size_t satisfied = 0;
    /// Satisfying tuples whose class agrees ontologically but not literally.
    std::size_t syntactically_unequal = 0;
    /// syntactically_unequal / satisfied.
    double false_positive_savings = 0.0;
    std::vector<ViolatingClass> classes;
};

struct ViolationReport {
    std::vector<std::string> schema;
    std::vector<OfdViolations> entries;
};

/// Splits each class that fails the exact check into the tuples consistent
/// with its best sense (or ancestor) and the rest. A minority tuple's repair
/// is the value of the smallest-id majority tuple.
ViolationReport report_violations(const Relation& r, const Ontology& o, const std::vector<Ofd>& ofds);

nlohmann::ordered_json to_json(const ViolationReport& report);
std::string to_text(const ViolationReport& report);

struct CellChange {
    TupleId row = 0;
    AttrIndex column = 0;
    std::string old_value;
    std::string new_value;
};

struct InjectionResult {
    Relation relation;
    /// Ascending by (row, column).
    std::vector<CellChange> log;
};

/// Replaces ceil(rate * n) distinct cells of `columns` (all columns when
/// empty) by another row's value of the same column, preferring values whose
/// senses do not meet the old value's. A constant column cannot be perturbed,
/// so such picks are left out of the log. Throws ConfigError unless 0 <= rate < 1.
InjectionResult inject_errors(const Relation& r, const Ontology& o, AttrSet columns, double rate,
                              std::uint64_t seed);

nlohmann::ordered_json to_json(const std::vector<CellChange>& log, const std::vector<std::string>& schema);

}  // namespace ofd
