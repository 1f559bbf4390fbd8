#include "ofd/inference.hpp"

#include <algorithm>

#include "ofd/error.hpp"

namespace ofd {

namespace {

void check_range(const OfdSet& m, AttrSet s, const char* what) {
    if (!s.is_subset_of(AttrSet::first_n(m.arity())))
        throw InferenceError(std::string(what) + " refers to an attribute outside the schema of " +
                             std::to_string(m.arity()) + " attributes");
}

AttrSet closure_without(const OfdSet& m, AttrSet x, std::optional<std::size_t> skip) {
    AttrSet out = x;
    for (std::size_t i = 0; i < m.deps.size(); ++i) {
        if (skip && *skip == i) continue;
        if (m.deps[i].lhs.is_subset_of(x)) out |= m.deps[i].rhs;
    }
    return out;
}

}  // namespace

void OfdSet::validate() const {
    for (std::size_t i = 0; i < deps.size(); ++i) {
        if (deps[i].rhs.empty()) throw InferenceError("dependency " + std::to_string(i) + " has an empty rhs");
        check_range(*this, deps[i].lhs, "dependency lhs");
        check_range(*this, deps[i].rhs, "dependency rhs");
    }
}

OfdSet OfdSet::from_ofds(std::vector<std::string> schema, OfdKind kind, const std::vector<Ofd>& ofds) {
    OfdSet m{std::move(schema), kind, {}};
    for (const auto& d : ofds) {
        if (!(d.kind == kind)) throw InferenceError("OFD set mixes dependency kinds");
        m.deps.push_back({d.lhs, AttrSet::single(d.rhs), d.support});
    }
    m.validate();
    return m;
}

std::vector<Ofd> OfdSet::to_ofds() const {
    std::vector<Ofd> out;
    for (const auto& d : deps)
        for (AttrIndex a : d.rhs - d.lhs) out.push_back({d.lhs, a, kind, d.support});
    return out;
}

Closure closure(const OfdSet& m, AttrSet x) {
    m.validate();
    check_range(m, x, "closure argument");
    // Firing depends only on the fixed x, so one pass in input order reaches
    // the fixpoint.
    Closure c{x, x, {}};
    for (std::size_t i = 0; i < m.deps.size(); ++i) {
        if (m.deps[i].lhs.is_subset_of(x)) {
            c.attrs |= m.deps[i].rhs;
            c.used_deps.push_back(i);
        }
    }
    return c;
}

bool implies(const OfdSet& m, AttrSet lhs, AttrSet rhs) {
    check_range(m, rhs, "candidate rhs");
    return rhs.is_subset_of(closure(m, lhs).attrs);
}

OfdSet minimal_cover(const OfdSet& m) {
    m.validate();
    OfdSet out{m.schema, m.kind, {}};
    for (const auto& d : m.deps)
        for (AttrIndex a : d.rhs - d.lhs) out.deps.push_back({d.lhs, AttrSet::single(a), d.support});

    for (std::size_t i = 0; i < out.deps.size(); ++i) {
        auto& d = out.deps[i];
        for (AttrIndex b : d.lhs) {
            const AttrSet reduced = d.lhs.without(b);
            if (d.rhs.is_subset_of(closure_without(out, reduced, std::nullopt))) d.lhs = reduced;
        }
    }

    for (std::size_t i = 0; i < out.deps.size();) {
        const auto& d = out.deps[i];
        if (d.rhs.is_subset_of(closure_without(out, d.lhs, i)))
            out.deps.erase(out.deps.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return out;
}

}  // namespace ofd
