#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ofd/attr_set.hpp"
#include "ofd/verify.hpp"

namespace ofd {

/// lhs -> rhs, where rhs may name several attributes.
struct Dependency {
    AttrSet lhs;
    AttrSet rhs;
    std::optional<double> support;

    friend bool operator==(const Dependency& a, const Dependency& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

/// Dependencies of a single kind over one schema.
struct OfdSet {
    std::vector<std::string> schema;
    OfdKind kind;
    std::vector<Dependency> deps;

    std::size_t arity() const noexcept { return schema.size(); }

    /// Throws InferenceError on an empty rhs or an attribute outside the schema.
    void validate() const;

    static OfdSet from_ofds(std::vector<std::string> schema, OfdKind kind, const std::vector<Ofd>& ofds);
    /// One Ofd per rhs attribute; attributes already in the lhs are skipped.
    std::vector<Ofd> to_ofds() const;
};

struct Closure {
    AttrSet of;
    AttrSet attrs;
    /// Indices into OfdSet::deps, in firing order.
    std::vector<std::size_t> used_deps;
};

/// X+ under `m`. A dependency V -> Z contributes Z when V is contained in the
/// original x; consequents are not chained.
Closure closure(const OfdSet& m, AttrSet x);

bool implies(const OfdSet& m, AttrSet lhs, AttrSet rhs);

/// Single-attribute consequents, no removable antecedent attribute and no
/// removable dependency. Antecedents are reduced first, then redundant
/// dependencies dropped, each in input order.
OfdSet minimal_cover(const OfdSet& m);

}  // namespace ofd
