#include "ofd/lattice.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "ofd/error.hpp"
#include "parallel.hpp"

namespace ofd {

std::vector<Optimizations> Optimizations::all_combinations() {
    std::vector<Optimizations> out;
    for (unsigned bits = 0; bits < 16; ++bits)
        out.push_back({(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0});
    return out;
}

void DiscoveryConfig::validate() const {
    if (!(tau > 0.0 && tau <= 1.0) || std::isnan(tau))
        throw ConfigError("support threshold tau must lie in (0, 1], got " + std::to_string(tau));
}

LatticeLevel::LatticeLevel(std::vector<LatticeNode> nodes) : nodes_(std::move(nodes)) {
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].attrs, i);
}

const LatticeNode* LatticeLevel::find(AttrSet attrs) const {
    auto it = index_.find(attrs);
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

LatticeLevel initial_level(const Relation& r, const DiscoveryConfig& cfg) {
    std::vector<LatticeNode> nodes;
    for (AttrIndex a = 0; a < r.arity(); ++a) {
        LatticeNode n;
        n.attrs = AttrSet::single(a);
        Partition p = partition(r, n.attrs);
        if (cfg.optimizations.stripped_partitions)
            n.partition = strip(p);
        else
            n.partition = std::move(p);
        n.superkey = n.classes().all_singletons();
        n.candidates = r.all_attributes();
        nodes.push_back(std::move(n));
    }
    return LatticeLevel(std::move(nodes));
}

LatticeLevel calculate_next_level(const LatticeLevel& current, unsigned threads) {
    const auto& nodes = current.nodes();
    std::vector<const LatticeNode*> sorted;
    sorted.reserve(nodes.size());
    for (const auto& n : nodes) sorted.push_back(&n);
    std::sort(sorted.begin(), sorted.end(),
              [](const LatticeNode* a, const LatticeNode* b) { return AttrSet::lex_less(a->attrs, b->attrs); });

    // Blocks of nodes sharing their first l-1 attributes are contiguous in
    // lexicographic order.
    std::vector<std::pair<const LatticeNode*, const LatticeNode*>> joins;
    for (std::size_t begin = 0; begin < sorted.size();) {
        const AttrSet prefix = sorted[begin]->attrs.without(sorted[begin]->attrs.max());
        std::size_t end = begin + 1;
        while (end < sorted.size() && sorted[end]->attrs.without(sorted[end]->attrs.max()) == prefix) ++end;
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < end; ++j) {
                const AttrSet joined = sorted[i]->attrs | sorted[j]->attrs;
                bool all_parents = true;
                for (AttrIndex a : prefix) {
                    if (!current.find(joined.without(a))) {
                        all_parents = false;
                        break;
                    }
                }
                if (all_parents) joins.emplace_back(sorted[i], sorted[j]);
            }
        }
        begin = end;
    }

    std::vector<LatticeNode> next(joins.size());
    detail::parallel_for(joins.size(), threads, [&](std::size_t k, unsigned) {
        const auto& [left, right] = joins[k];
        LatticeNode& n = next[k];
        n.attrs = left->attrs | right->attrs;
        n.partition = std::visit(
            [](const auto& a, const auto& b) -> std::variant<StrippedPartition, Partition> {
                using A = std::decay_t<decltype(a)>;
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<A, B>) {
                    return product(a, b);
                } else {
                    throw Error("lattice mixes stripped and full partitions");
                }
            },
            left->partition, right->partition);
        n.superkey = n.classes().all_singletons();
    });
    return LatticeLevel(std::move(next));
}

std::vector<PlannedCandidate> apply_optimizations(const LatticeNode& node, const LatticeLevel& previous,
                                                  const DiscoveryConfig& cfg) {
    std::vector<PlannedCandidate> plan;
    for (AttrIndex a : node.attrs & node.candidates) {
        const LatticeNode* lhs = previous.find(node.attrs.without(a));
        if (lhs == nullptr || lhs->attrs.empty()) continue;
        PlannedCandidate c;
        c.rhs = a;
        c.antecedent = lhs;
        c.action = (cfg.optimizations.opt3 && lhs->superkey) ? CandidateAction::holds_by_key : CandidateAction::verify;
        c.equal_value_fast_path = cfg.optimizations.opt4;
        plan.push_back(c);
    }
    return plan;
}

LevelOutcome compute_ofds(LatticeLevel& level, const LatticeLevel& previous, const Verifier& verifier,
                          const DiscoveryConfig& cfg) {
    auto& nodes = level.nodes();
    const AttrSet everything = verifier.relation().all_attributes();
    for (auto& n : nodes) {
        AttrSet c = everything;
        for (AttrIndex a : n.attrs) {
            const LatticeNode* parent = previous.find(n.attrs.without(a));
            c &= parent ? parent->candidates : AttrSet{};
        }
        n.candidates = c;
    }

    const std::size_t n_rows = verifier.relation().size();
    const bool exact = cfg.tau >= 1.0 && !cfg.force_support_counting;
    const std::size_t required = required_support(n_rows, cfg.tau);
    const std::uint32_t radius = cfg.kind.radius();

    const unsigned threads = detail::resolve_threads(cfg.threads);
    std::vector<Verifier::Scratch> scratch(threads);
    std::vector<std::vector<Ofd>> found(nodes.size());
    std::vector<std::size_t> tested(nodes.size(), 0);

    detail::parallel_for(nodes.size(), threads, [&](std::size_t i, unsigned worker) {
        LatticeNode& node = nodes[i];
        const auto plan = apply_optimizations(node, previous, cfg);
        tested[i] = plan.size();
        for (const auto& c : plan) {
            std::optional<std::size_t> satisfied;
            if (c.action == CandidateAction::holds_by_key) {
                satisfied = n_rows;
            } else if (exact) {
                if (verifier.holds(c.antecedent->classes(), c.rhs, radius, c.equal_value_fast_path, scratch[worker]))
                    satisfied = n_rows;
            } else {
                satisfied = verifier.satisfied_at_least(c.antecedent->classes(), c.rhs, radius,
                                                        c.equal_value_fast_path, required, scratch[worker]);
            }
            if (!satisfied) continue;
            Ofd d;
            d.lhs = c.antecedent->attrs;
            d.rhs = c.rhs;
            d.kind = cfg.kind;
            d.support = n_rows == 0 ? 1.0 : static_cast<double>(*satisfied) / static_cast<double>(n_rows);
            found[i].push_back(d);
            if (cfg.optimizations.opt2) node.candidates = node.candidates.without(c.rhs);
        }
    });

    LevelOutcome out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.candidates += tested[i];
        out.ofds.insert(out.ofds.end(), found[i].begin(), found[i].end());
    }
    return out;
}

namespace {

void record_keys(const LatticeLevel& level, const LatticeLevel* previous, std::vector<AttrSet>& keys) {
    for (const auto& n : level.nodes()) {
        if (!n.superkey) continue;
        bool minimal = true;
        if (previous != nullptr) {
            for (AttrIndex a : n.attrs) {
                const LatticeNode* p = previous->find(n.attrs.without(a));
                if (p != nullptr && p->superkey) {
                    minimal = false;
                    break;
                }
            }
        }
        if (minimal) keys.push_back(n.attrs);
    }
}

// Keeps X -> A only when no other X' -> A with X' a proper subset of X exists.
std::vector<Ofd> keep_minimal(std::vector<Ofd> all) {
    std::map<AttrIndex, std::vector<AttrSet>> by_rhs;
    for (const auto& d : all) by_rhs[d.rhs].push_back(d.lhs);
    std::vector<Ofd> out;
    for (const auto& d : all) {
        const auto& lhss = by_rhs[d.rhs];
        bool minimal = std::none_of(lhss.begin(), lhss.end(),
                                    [&](AttrSet other) { return other.is_proper_subset_of(d.lhs); });
        if (minimal) out.push_back(d);
    }
    return out;
}

}  // namespace

DiscoveryResult discover(const Relation& r, const Ontology& o, const DiscoveryConfig& cfg) {
    cfg.validate();
    DiscoveryResult result;
    if (r.arity() < 2 || (cfg.max_level && *cfg.max_level == 0)) return result;

    Verifier verifier(r, o);
    for (AttrIndex a = 0; a < r.arity(); ++a) verifier.prepare(a, cfg.kind.radius());
    const unsigned threads = detail::resolve_threads(cfg.threads);

    LatticeLevel previous = initial_level(r, cfg);
    record_keys(previous, nullptr, result.keys_found);

    for (std::size_t lhs_size = 1; lhs_size < r.arity(); ++lhs_size) {
        if (cfg.max_level && lhs_size > *cfg.max_level) break;
        const auto start = std::chrono::steady_clock::now();
        LatticeLevel current = calculate_next_level(previous, threads);
        if (current.empty()) break;
        LevelOutcome outcome = compute_ofds(current, previous, verifier, cfg);
        record_keys(current, &previous, result.keys_found);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        result.per_level.push_back({lhs_size, outcome.candidates, outcome.ofds.size(), elapsed.count()});
        result.ofds.insert(result.ofds.end(), outcome.ofds.begin(), outcome.ofds.end());
        previous = std::move(current);
    }

    if (!cfg.optimizations.opt2) {
        result.ofds = keep_minimal(std::move(result.ofds));
        // Per-level OFD counts report what survives the minimality filter.
        for (auto& s : result.per_level)
            s.ofds = static_cast<std::size_t>(std::count_if(result.ofds.begin(), result.ofds.end(),
                                                            [&](const Ofd& d) { return d.lhs.size() == s.level; }));
    }
    std::sort(result.ofds.begin(), result.ofds.end(), ofd_less);
    return result;
}

}  // namespace ofd
