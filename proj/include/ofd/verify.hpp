#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofd/attr_set.hpp"
#include "ofd/ontology.hpp"
#include "ofd/partition.hpp"
#include "ofd/relation.hpp"

namespace ofd {

struct OfdKind {
    enum class Type { synonym, inheritance };

    Type type = Type::synonym;
    std::uint32_t theta = 0;

    static constexpr OfdKind synonym() { return {Type::synonym, 0}; }
    static constexpr OfdKind inheritance(std::uint32_t theta) { return {Type::inheritance, theta}; }

    bool is_inheritance() const noexcept { return type == Type::inheritance; }
    /// Ancestor radius used during verification: 0 for synonyms.
    std::uint32_t radius() const noexcept { return is_inheritance() ? theta : 0; }
    const char* name() const noexcept { return is_inheritance() ? "inheritance" : "synonym"; }

    friend bool operator==(const OfdKind&, const OfdKind&) = default;
};

/// X -> A with A not in X.
struct Ofd {
    AttrSet lhs;
    AttrIndex rhs = 0;
    OfdKind kind;
    std::optional<double> support;

    friend bool operator==(const Ofd& a, const Ofd& b) {
        return a.lhs == b.lhs && a.rhs == b.rhs && a.kind == b.kind;
    }
};

/// Output order: |lhs|, lhs lexicographic, rhs, then synonym before inheritance.
bool ofd_less(const Ofd& a, const Ofd& b);

/// Details of one equivalence class that fails the exact check (or, for
/// support counting, that loses tuples).
struct ClassWitness {
    TupleId representative = 0;
    std::vector<TupleId> tuples;
    std::vector<std::string> distinct_values;
    /// Most frequent sense (synonyms) or ancestor (inheritance); ties go to the
    /// smallest class id.
    ClassId majority;
    std::vector<TupleId> majority_tuples;
    std::vector<TupleId> minority_tuples;
};

struct VerifyOutcome {
    bool holds = false;
    double support = 0.0;
    /// Tuples of the largest satisfying sub-instance (exact mode: tuples of
    /// satisfying classes plus tuples outside every class).
    std::size_t satisfied = 0;
    std::vector<ClassWitness> witnesses;
};

struct VerifyOptions {
    /// Classes whose A-values are all string-equal pass without ontology lookups.
    bool equal_value_fast_path = true;
    bool collect_witnesses = true;
};

/// Smallest satisfying-tuple count s with s / n >= tau.
std::size_t required_support(std::size_t n, double tau);

/// Verification against one relation and ontology. Sense tables per
/// (attribute, radius) are built on first use and cached; all member
/// functions are safe to call concurrently.
class Verifier {
public:
    Verifier(const Relation& r, const Ontology& o);
    ~Verifier();
    Verifier(const Verifier&) = delete;
    Verifier& operator=(const Verifier&) = delete;

    const Relation& relation() const noexcept { return relation_; }
    const Ontology& ontology() const noexcept { return ontology_; }

    /// Generation-stamped counters reused across candidates; one per thread.
    class Scratch {
    public:
        std::uint32_t next_generation();
        void fit(std::size_t codes, std::size_t ids);

        std::vector<std::uint32_t> code_stamp, code_mult;
        std::vector<std::uint32_t> id_stamp, id_count;
        std::vector<std::uint32_t> distinct;

    private:
        std::uint32_t generation_ = 0;
    };

    /// Exact check: every class's distinct A-values share a sense (radius 0)
    /// or an ancestor within `radius`.
    VerifyOutcome check(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius,
                        const VerifyOptions& options = {}) const;

    /// Largest satisfying sub-instance: per class, the best single sense or
    /// ancestor by tuple count.
    VerifyOutcome support(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius,
                          const VerifyOptions& options = {}) const;

    /// Exact check without witnesses; stops at the first failing class.
    bool holds(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius, bool fast_path,
               Scratch& scratch) const;

    /// Satisfied-tuple count, or nullopt as soon as `required` is out of reach.
    std::optional<std::size_t> satisfied_at_least(const EquivalenceClasses& x, AttrIndex a, std::uint32_t radius,
                                                  bool fast_path, std::size_t required, Scratch& scratch) const;

    /// Class id behind a dense sense index of attribute `a`.
    ClassId class_id(AttrIndex a, std::uint32_t radius, std::uint32_t dense) const;

    /// Builds the sense table ahead of concurrent use.
    void prepare(AttrIndex a, std::uint32_t radius) const;

private:
    struct SenseTable;
    const SenseTable& table(AttrIndex a, std::uint32_t radius) const;
    void validate(const EquivalenceClasses& x, AttrIndex a) const;

    struct ClassResult {
        bool ok;
        std::size_t contribution;
        std::uint32_t best;
    };
    ClassResult exact_class(const SenseTable& t, const Relation::Column& col, std::span<const TupleId> cls,
                            bool fast_path, Scratch& s) const;
    ClassResult support_class(const SenseTable& t, const Relation::Column& col, std::span<const TupleId> cls,
                              bool fast_path, Scratch& s) const;
    ClassWitness witness(const SenseTable& t, const Relation::Column& col, AttrIndex a, std::uint32_t radius,
                         std::span<const TupleId> cls, std::uint32_t best) const;

    const Relation& relation_;
    const Ontology& ontology_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<AttrIndex, std::uint32_t>, std::unique_ptr<SenseTable>> tables_;
};

VerifyOutcome verify_synonym(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a);
VerifyOutcome verify_inheritance(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a,
                                 std::uint32_t theta);
VerifyOutcome support_synonym(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a);
VerifyOutcome support_inheritance(const Relation& r, const Ontology& o, const EquivalenceClasses& x, AttrIndex a,
                                  std::uint32_t theta);

}  // namespace ofd
