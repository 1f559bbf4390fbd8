#include "ofd/partition.hpp"

#include <algorithm>
#include <numeric>

namespace ofd {

std::vector<std::vector<TupleId>> EquivalenceClasses::to_vectors() const {
    std::vector<std::vector<TupleId>> out;
    out.reserve(class_count());
    for (std::size_t i = 0; i < class_count(); ++i) {
        auto c = (*this)[i];
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

class PartitionBuilder {
public:
    // Collects classes in any order; finish() orders them by representative.
    explicit PartitionBuilder(std::size_t reserve) { tuples_.reserve(reserve); }

    void add(std::span<const TupleId> cls) {
        starts_.push_back(tuples_.size());
        tuples_.insert(tuples_.end(), cls.begin(), cls.end());
    }

    template <class P>
    P finish(AttrSet over, std::size_t relation_size) {
        P p(over, relation_size);
        starts_.push_back(tuples_.size());
        bool sorted = true;
        for (std::size_t i = 1; i + 1 < starts_.size(); ++i)
            if (tuples_[starts_[i]] < tuples_[starts_[i - 1]]) sorted = false;
        if (sorted) {
            p.tuples_ = std::move(tuples_);
            p.offsets_.assign(starts_.begin(), starts_.end());
            return p;
        }
        // Classes are disjoint and ascending, so bucketing by first tuple orders
        // them in linear time.
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> head(relation_size, none);
        for (std::size_t k = 0; k + 1 < starts_.size(); ++k) head[tuples_[starts_[k]]] = k;
        p.tuples_.reserve(tuples_.size());
        for (std::size_t k : head) {
            if (k == none) continue;
            p.tuples_.insert(p.tuples_.end(), tuples_.begin() + static_cast<std::ptrdiff_t>(starts_[k]),
                             tuples_.begin() + static_cast<std::ptrdiff_t>(starts_[k + 1]));
            p.offsets_.push_back(p.tuples_.size());
        }
        return p;
    }

    // Copies the classes of `source` whose size is at least `min_size`.
    template <class P>
    static P filtered(const EquivalenceClasses& source, std::size_t min_size) {
        P p(source.over(), source.relation_size());
        for (std::size_t i = 0; i < source.class_count(); ++i) {
            auto c = source[i];
            if (c.size() < min_size) continue;
            p.tuples_.insert(p.tuples_.end(), c.begin(), c.end());
            p.offsets_.push_back(p.tuples_.size());
        }
        return p;
    }

private:
    std::vector<TupleId> tuples_;
    std::vector<std::size_t> starts_;
};

Partition partition(const Relation& r, AttrSet x) {
    r.check(x);
    const std::size_t n = r.size();
    std::vector<std::vector<TupleId>> classes;
    if (n > 0) {
        classes.emplace_back(n);
        std::iota(classes[0].begin(), classes[0].end(), TupleId{0});
    }
    std::vector<std::uint32_t> bucket_of;
    std::vector<std::uint32_t> stamp;
    for (AttrIndex a : x) {
        const auto& col = r.column(a);
        bucket_of.assign(col.dictionary.size(), 0);
        stamp.assign(col.dictionary.size(), 0);
        std::uint32_t generation = 0;
        std::vector<std::vector<TupleId>> refined;
        for (const auto& cls : classes) {
            ++generation;
            std::size_t base = refined.size();
            for (TupleId t : cls) {
                std::uint32_t code = col.codes[t];
                if (stamp[code] != generation) {
                    stamp[code] = generation;
                    bucket_of[code] = static_cast<std::uint32_t>(refined.size() - base);
                    refined.emplace_back();
                }
                refined[base + bucket_of[code]].push_back(t);
            }
        }
        classes = std::move(refined);
    }
    PartitionBuilder b(n);
    for (const auto& c : classes) b.add(c);
    return b.finish<Partition>(x, n);
}

StrippedPartition strip(const Partition& p) {
    return PartitionBuilder::filtered<StrippedPartition>(p, 2);
}

StrippedPartition stripped_partition(const Relation& r, AttrSet x) {
    return strip(partition(r, x));
}

namespace {

template <class P>
P product_impl(const P& a, const P& b, std::size_t min_size) {
    const std::size_t n = a.relation_size();
    std::vector<std::uint32_t> owner(n, 0);
    for (std::size_t i = 0; i < a.class_count(); ++i)
        for (TupleId t : a[i]) owner[t] = static_cast<std::uint32_t>(i + 1);

    // Per class of b: count tuples per class of a, then place them into a flat
    // buffer grouped by owner in first-seen order.
    std::vector<std::uint32_t> count(a.class_count(), 0), cursor(a.class_count(), 0);
    std::vector<std::uint32_t> touched;
    std::vector<TupleId> buffer;
    PartitionBuilder out(std::min(a.covered_count(), b.covered_count()));
    for (std::size_t j = 0; j < b.class_count(); ++j) {
        auto cls = b[j];
        for (TupleId t : cls) {
            const std::uint32_t o = owner[t];
            if (o != 0 && count[o - 1]++ == 0) touched.push_back(o - 1);
        }
        std::uint32_t pos = 0;
        for (std::uint32_t o : touched) {
            cursor[o] = pos;
            pos += count[o];
        }
        buffer.resize(pos);
        for (TupleId t : cls)
            if (owner[t] != 0) buffer[cursor[owner[t] - 1]++] = t;
        pos = 0;
        for (std::uint32_t o : touched) {
            if (count[o] >= min_size) out.add(std::span<const TupleId>(buffer.data() + pos, count[o]));
            pos += count[o];
            count[o] = 0;
        }
        touched.clear();
    }
    return out.template finish<P>(a.over() | b.over(), n);
}

}  // namespace

StrippedPartition product(const StrippedPartition& a, const StrippedPartition& b) {
    return product_impl(a, b, 2);
}

Partition product(const Partition& a, const Partition& b) {
    return product_impl(a, b, 1);
}

}  // namespace ofd
