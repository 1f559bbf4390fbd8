#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofd/attr_set.hpp"
#include "ofd/relation.hpp"

namespace ofd {

/// Equivalence classes of tuple ids in compressed (CSR) form. Tuple ids inside
/// a class ascend, and classes are ordered by their representative (smallest
/// id).
class EquivalenceClasses {
public:
    AttrSet over() const noexcept { return over_; }
    std::size_t class_count() const noexcept { return offsets_.size() - 1; }
    std::span<const TupleId> operator[](std::size_t i) const {
        return {tuples_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    /// Tuples contained in some class.
    std::size_t covered_count() const noexcept { return tuples_.size(); }
    /// Number of tuples of the relation the classes were built from.
    std::size_t relation_size() const noexcept { return relation_size_; }
    /// True when no class holds two or more tuples.
    bool all_singletons() const noexcept { return covered_count() == class_count(); }

    std::vector<std::vector<TupleId>> to_vectors() const;

    friend bool operator==(const EquivalenceClasses& a, const EquivalenceClasses& b) {
        return a.over_ == b.over_ && a.relation_size_ == b.relation_size_ && a.tuples_ == b.tuples_ &&
               a.offsets_ == b.offsets_;
    }

protected:
    EquivalenceClasses() = default;
    EquivalenceClasses(AttrSet over, std::size_t relation_size) : over_(over), relation_size_(relation_size) {}

    AttrSet over_;
    std::size_t relation_size_ = 0;
    std::vector<TupleId> tuples_;
    std::vector<std::size_t> offsets_{0};

    friend class PartitionBuilder;
};

/// Every tuple in exactly one class.
class Partition : public EquivalenceClasses {
public:
    Partition() = default;

private:
    using EquivalenceClasses::EquivalenceClasses;
    friend class PartitionBuilder;
};

/// Partition with its size-one classes removed.
class StrippedPartition : public EquivalenceClasses {
public:
    StrippedPartition() = default;
    /// No retained class: the attribute set is a superkey.
    bool empty() const noexcept { return class_count() == 0; }

private:
    using EquivalenceClasses::EquivalenceClasses;
    friend class PartitionBuilder;
};

/// Groups by string equality over `x` (x = {} yields one class of all
/// tuples, for a non-empty relation). Throws RelationError(unknown_attribute).
Partition partition(const Relation& r, AttrSet x);
StrippedPartition strip(const Partition& p);
StrippedPartition stripped_partition(const Relation& r, AttrSet x);

/// Refinement product; linear in the covered tuples of both operands.
StrippedPartition product(const StrippedPartition& a, const StrippedPartition& b);
Partition product(const Partition& a, const Partition& b);

}  // namespace ofd
