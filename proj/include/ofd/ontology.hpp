#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ofd {

/// Identifier of an ontology class (one sense of a surface string).
///
/// Values that do not occur in the ontology get an implicit class of their
/// own, named after the (normalized) value. Implicit ids order after every
/// declared id so they can never collide with one.
struct ClassId {
    std::string name;
    bool implicit = false;

    static ClassId declared(std::string name) { return {std::move(name), false}; }
    static ClassId implicit_for(std::string value) { return {std::move(value), true}; }

    /// "E3" for declared classes, "implicit:<value>" otherwise.
    std::string to_string() const { return implicit ? "implicit:" + name : name; }

    friend auto operator<=>(const ClassId& a, const ClassId& b) {
        if (a.implicit != b.implicit) return a.implicit <=> b.implicit;
        return a.name <=> b.name;
    }
    friend bool operator==(const ClassId&, const ClassId&) = default;
};

struct OntologyClass {
    ClassId id;
    std::vector<std::string> synonyms;
    std::vector<ClassId> parents;
};

/// Upward is-a closure of a class with minimal path lengths; the class itself
/// is present at distance 0.
struct AncestorSet {
    std::map<ClassId, std::uint32_t> entries;

    std::optional<std::uint32_t> distance(const ClassId& id) const {
        auto it = entries.find(id);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

struct OntologyOptions {
    /// ASCII case folding for synonym and value matching.
    bool case_insensitive = false;
};

/// Immutable store of classes, synonyms and is-a edges (a DAG).
class Ontology {
public:
    using ClassIndex = std::uint32_t;

    Ontology() = default;

    /// Validates and indexes the classes. Throws OntologyError on duplicate
    /// ids, empty synonym lists, unknown or self parents, and is-a cycles.
    static Ontology from_classes(std::vector<OntologyClass> classes, OntologyOptions options = {});
    static Ontology parse_json(std::string_view document, OntologyOptions options = {});
    static Ontology load_file(const std::filesystem::path& path, OntologyOptions options = {});

    std::size_t class_count() const noexcept { return classes_.size(); }
    bool case_insensitive() const noexcept { return options_.case_insensitive; }

    /// Classes are indexed densely in ascending id order.
    const OntologyClass& at(ClassIndex index) const { return classes_.at(index); }
    std::span<const ClassIndex> parents_of(ClassIndex index) const;
    std::optional<ClassIndex> find(std::string_view id) const;

    std::string normalize(std::string_view value) const;

    /// Declared senses of a value (dense indices, ascending); empty when the
    /// value is out of vocabulary.
    std::span<const ClassIndex> senses(std::string_view value) const;

    std::set<ClassId> names(std::string_view value) const;

    /// Throws OntologyError(unknown_class) for ids that are neither declared
    /// nor implicit.
    AncestorSet ancestor_closure(const ClassId& id) const;

    /// Ancestors of a declared class within `theta` is-a edges, ascending by
    /// index, each with its minimal distance.
    std::vector<std::pair<ClassIndex, std::uint32_t>> ancestors_within(ClassIndex index, std::uint32_t theta) const;

    /// Union over the senses of `value` of their ancestors within `theta`.
    std::set<ClassId> theta_ancestors(std::string_view value, std::uint32_t theta) const;

private:
    OntologyOptions options_;
    std::vector<OntologyClass> classes_;
    std::vector<std::vector<ClassIndex>> parents_;
    std::unordered_map<std::string, ClassIndex> id_index_;
    std::unordered_map<std::string, std::vector<ClassIndex>> value_index_;
};

}  // namespace ofd
