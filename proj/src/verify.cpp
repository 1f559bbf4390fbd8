#include "ofd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ofd/error.hpp"

namespace ofd {

bool ofd_less(const Ofd& a, const Ofd& b) {
    if (a.lhs != b.lhs) return AttrSet::canonical_less(a.lhs, b.lhs);
    if (a.rhs != b.rhs) return a.rhs < b.rhs;
    if (a.kind.type != b.kind.type) return a.kind.type < b.kind.type;
    return a.kind.theta < b.kind.theta;
}

std::size_t required_support(std::size_t n, double tau) {
    double need = std::ceil(tau * static_cast<double>(n) - 1e-9);
    if (need <= 0) return 0;
    return std::min(n, static_cast<std::size_t>(need));
}

// Senses (radius 0) or ancestors within the radius for every dictionary code
// of one column. Dense ids below `declared` are ontology class indices; the
// rest are implicit classes of out-of-vocabulary values, ranked by name.
struct Verifier::SenseTable {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> ids;
    std::uint32_t declared = 0;
    std::vector<std::string> implicit_names;

    std::size_t id_count() const { return declared + implicit_names.size(); }
    std::span<const std::uint32_t> ids_of(std::uint32_t code) const {
        return {ids.data() + offsets[code], offsets[code + 1] - offsets[code]};
    }
    bool has(std::uint32_t code, std::uint32_t id) const {
        auto s = ids_of(code);
        return std::binary_search(s.begin(), s.end(), id);
    }
};

std::uint32_t Verifier::Scratch::next_generation() {
    if (++generation_ == 0) {
        std::fill(code_stamp.begin(), code_stamp.end(), 0);
        std::fill(id_stamp.begin(), id_stamp.end(), 0);
        generation_ = 1;
    }
    return generation_;
}

void Verifier::Scratch::fit(std::size_t codes, std::size_t ids) {
    if (code_stamp.size() < codes) {
        code_stamp.resize(codes, 0);
        code_mult.resize(codes, 0);
    }
    if (id_stamp.size() < ids) {
        id_stamp.resize(ids, 0);
        id_count.resize(ids, 0);
    }
}

Verifier::Verifier(const Relation& r, const Ontology& o) : relation_(r), ontology_(o) {}
Verifier::~Verifier() = default;

const Verifier::SenseTable& Verifier::table(AttrIndex a, std::uint32_t radius) const {
    std::lock_guard lock(mutex_);
    auto& slot = tables_[{a, radius}];
    if (slot) return *slot;

    auto t = std::make_unique<SenseTable>();
    const auto& col = relation_.column(a);
    t->declared = static_cast<std::uint32_t>(ontology_.class_count());

    std::vector<std::string> oov;
    for (const auto& v : col.dictionary)
        if (ontology_.senses(v).empty()) oov.push_back(ontology_.normalize(v));
    std::sort(oov.begin(), oov.end());
    oov.erase(std::unique(oov.begin(), oov.end()), oov.end());
    t->implicit_names = oov;

    std::unordered_map<Ontology::ClassIndex, std::vector<std::uint32_t>> ancestor_cache;
    std::vector<std::uint32_t> scratch;
    t->offsets.reserve(col.dictionary.size() + 1);
    t->offsets.push_back(0);
    for (const auto& v : col.dictionary) {
        auto senses = ontology_.senses(v);
        scratch.clear();
        if (senses.empty()) {
            auto pos = std::lower_bound(oov.begin(), oov.end(), ontology_.normalize(v));
            scratch.push_back(t->declared + static_cast<std::uint32_t>(pos - oov.begin()));
        } else if (radius == 0) {
            scratch.assign(senses.begin(), senses.end());
        } else {
            for (auto s : senses) {
                auto it = ancestor_cache.find(s);
                if (it == ancestor_cache.end()) {
                    std::vector<std::uint32_t> anc;
                    for (auto [c, d] : ontology_.ancestors_within(s, radius)) anc.push_back(c);
                    it = ancestor_cache.emplace(s, std::move(anc)).first;
                }
                scratch.insert(scratch.end(), it->second.begin(), it->second.end());
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        }
        t->ids.insert(t->ids.end(), scratch.begin(), scratch.end());
        t->offsets.push_back(static_cast<std::uint32_t>(t->ids.size()));
    }
    slot = std::move(t);
    return *slot;
}

void Verifier::prepare(AttrIndex a, std::uint32_t radius) const {
    (void)table(a, radius);
}

ClassId Verifier::class_id(AttrIndex a, std::uint32_t radius, std::uint32_t dense) const {
    const auto& t = table(a, radius);
    if (dense < t.declared) return ontology_.at(dense).id;
    return ClassId::implicit_for(t.implicit_names.at(dense - t.declared));
}

void Verifier::validate(const EquivalenceClasses& x, AttrIndex a) const {
    if (a >= relation_.arity())
        throw RelationError(RelationError::Code::unknown_attribute,
                            "attribute index " + std::to_string(a) + " outside schema");
    relation_.check(x.over());
    if (x.over().contains(a)) throw Error("trivial candidate: consequent is part of the antecedent");
    if (x.relation_size() != relation_.size()) throw Error("partition was built from a different relation");
}

namespace {

bool all_equal(const Relation::Column& col, std::span<const TupleId> cls) {
    const std::uint32_t first = col.codes[cls[0]];
    for (TupleId t : cls.subspan(1))
        if (col.codes[t] != first) return false;
    return true;
}

}  // namespace

Verifier::ClassResult Verifier::exact_class(const SenseTable& t, const Relation::Column& col,
                                            std::span<const TupleId> cls, bool fast_path, Scratch& s) const {
    const std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    if (fast_path && all_equal(col, cls)) return {true, cls.size(), none};

    const std::uint32_t gen = s.next_generation();
    s.distinct.clear();
    for (TupleId tup : cls) {
        std::uint32_t c = col.codes[tup];
        if (s.code_stamp[c] != gen) {
            s.code_stamp[c] = gen;
            s.distinct.push_back(c);
        }
    }
    const auto d = static_cast<std::uint32_t>(s.distinct.size());
    for (std::uint32_t c : s.distinct) {
        for (std::uint32_t id : t.ids_of(c)) {
            if (s.id_stamp[id] != gen) {
                s.id_stamp[id] = gen;
                s.id_count[id] = 0;
            }
            if (++s.id_count[id] == d) return {true, cls.size(), id};
        }
    }
    return {false, 0, none};
}

Verifier::ClassResult Verifier::support_class(const SenseTable& t, const Relation::Column& col,
                                              std::span<const TupleId> cls, bool fast_path, Scratch& s) const {
    if (fast_path && all_equal(col, cls)) return {true, cls.size(), t.ids_of(col.codes[cls[0]]).front()};

    const std::uint32_t gen = s.next_generation();
    s.distinct.clear();
    for (TupleId tup : cls) {
        std::uint32_t c = col.codes[tup];
        if (s.code_stamp[c] != gen) {
            s.code_stamp[c] = gen;
            s.code_mult[c] = 0;
            s.distinct.push_back(c);
        }
        ++s.code_mult[c];
    }
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t best_count = 0;
    for (std::uint32_t c : s.distinct) {
        const std::uint32_t m = s.code_mult[c];
        for (std::uint32_t id : t.ids_of(c)) {
            if (s.id_stamp[id] != gen) {
                s.id_stamp[id] = gen;
                s.id_count[id] = 0;
            }
            std::uint32_t n = (s.id_count[id] += m);
            if (n > best_count || (n == best_count && id < best)) {
                best_count = n;
                best = id;
            }
        }
    }
    return {best_count == cls.size(), best_count, best};
}

ClassWitness Verifier::witness(const SenseTable& t, const Relation::Column& col, AttrIndex a, std::uint32_t radius,
                               std::span<const TupleId> cls, std::uint32_t best) const {
    ClassWitness w;
    w.representative = cls[0];
    w.tuples.assign(cls.begin(), cls.end());
    std::vector<std::uint32_t> seen;
    for (TupleId tup : cls) {
        std::uint32_t c = col.codes[tup];
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
            seen.push_back(c);
            w.distinct_values.push_back(col.dictionary[c]);
        }
        (t.has(c, best) ? w.majority_tuples : w.minority_tuples).push_back(tup);
    }
    w.majority = class_id(a, radius, best);
    return w;
}

VerifyOutcome Verifier::check(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius,
                              const VerifyOptions& options) const {
    validate(x, a);
    const auto& t = table(a, radius);
    const auto& col = relation_.column(a);
    Scratch s;
    s.fit(col.dictionary.size(), t.id_count());

    VerifyOutcome out;
    out.holds = true;
    out.satisfied = relation_.size() - x.covered_count();
    for (std::size_t i = 0; i < x.class_count(); ++i) {
        auto cls = x[i];
        auto r = exact_class(t, col, cls, options.equal_value_fast_path, s);
        if (r.ok) {
            out.satisfied += cls.size();
            continue;
        }
        out.holds = false;
        if (options.collect_witnesses) {
            auto best = support_class(t, col, cls, false, s).best;
            out.witnesses.push_back(witness(t, col, a, radius, cls, best));
        }
    }
    out.support = relation_.size() == 0 ? 1.0 : static_cast<double>(out.satisfied) / relation_.size();
    return out;
}

VerifyOutcome Verifier::support(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius,
                                const VerifyOptions& options) const {
    validate(x, a);
    const auto& t = table(a, radius);
    const auto& col = relation_.column(a);
    Scratch s;
    s.fit(col.dictionary.size(), t.id_count());

    VerifyOutcome out;
    out.satisfied = relation_.size() - x.covered_count();
    for (std::size_t i = 0; i < x.class_count(); ++i) {
        auto cls = x[i];
        auto r = support_class(t, col, cls, options.equal_value_fast_path, s);
        out.satisfied += r.contribution;
        if (!r.ok && options.collect_witnesses) out.witnesses.push_back(witness(t, col, a, radius, cls, r.best));
    }
    out.holds = out.satisfied == relation_.size();
    out.support = relation_.size() == 0 ? 1.0 : static_cast<double>(out.satisfied) / relation_.size();
    return out;
}

bool Verifier::holds(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius, bool fast_path,
                     Scratch& scratch) const {
    const auto& t = table(a, radius);
    const auto& col = relation_.column(a);
    scratch.fit(col.dictionary.size(), t.id_count());
    for (std::size_t i = 0; i < x.class_count(); ++i)
        if (!exact_class(t, col, x[i], fast_path, scratch).ok) return false;
    return true;
}

std::optional<std::size_t> Verifier::satisfied_at_least(const EquivalenceClasses& x, AttrIndex a,
                                                        std::uint32_t radius, bool fast_path, std::size_t required,
                                                        Scratch& scratch) const {
    const auto& t = table(a, radius);
    const auto& col = relation_.column(a);
    scratch.fit(col.dictionary.size(), t.id_count());
    const std::size_t n = relation_.size();
    if (required > n) return std::nullopt;
    const std::size_t budget = n - required;
    std::size_t lost = 0;
    for (std::size_t i = 0; i < x.class_count(); ++i) {
        auto cls = x[i];
        auto r = support_class(t, col, cls, fast_path, scratch);
        lost += cls.size() - r.contribution;
        if (lost > budget) return std::nullopt;
    }
    return n - lost;
}

VerifyOutcome verify_synonym(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a) {
    return Verifier(r, o).check(x, a, 0);
}

VerifyOutcome verify_inheritance(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a,
                                 std::uint32_t theta) {
    return Verifier(r, o).check(x, a, theta);
}

VerifyOutcome support_synonym(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a) {
    return Verifier(r, o).support(x, a, 0);
}

VerifyOutcome support_inheritance(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a,
                                  std::uint32_t theta) {
    return Verifier(r, o).support(x, a, theta);
}

}  // namespace ofd
