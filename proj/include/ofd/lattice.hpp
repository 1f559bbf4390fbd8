#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ofd/attr_set.hpp"
#include "ofd/ontology.hpp"
#include "ofd/partition.hpp"
#include "ofd/relation.hpp"
#include "ofd/verify.hpp"

namespace ofd {

/// Pruning switches. None of them changes the discovered set.
struct Optimizations {
    bool opt2 = true;                 // drop A from C+(X) once X\A -> A is found
    bool opt3 = true;                 // superkey antecedents hold without verification
    bool opt4 = true;                 // string-equal classes skip ontology lookups
    bool stripped_partitions = true;  // keep only classes of size >= 2

    static std::vector<Optimizations> all_combinations();
};

struct DiscoveryConfig {
    OfdKind kind = OfdKind::synonym();
    /// Minimum support in (0, 1]; 1 means exact dependencies.
    double tau = 1.0;
    /// Largest antecedent size explored.
    std::optional<std::size_t> max_level;
    Optimizations optimizations;
    /// Decide exact (tau = 1) candidates by support counting instead of the
    /// early-exit intersection check.
    bool force_support_counting = false;
    /// Worker threads per level; 0 picks the hardware concurrency.
    unsigned threads = 0;

    /// Throws ConfigError.
    void validate() const;
};

/// One lattice level of statistics. `level` is the antecedent size.
struct LevelStats {
    std::size_t level = 0;
    std::size_t candidates = 0;
    std::size_t ofds = 0;
    double elapsed_seconds = 0.0;
};

struct DiscoveryResult {
    /// Ordered by ofd_less.
    std::vector<Ofd> ofds;
    std::vector<LevelStats> per_level;
    /// Minimal superkeys met during the traversal, in lattice order.
    std::vector<AttrSet> keys_found;
};

struct LatticeNode {
    AttrSet attrs;
    /// Stripped or full, depending on Optimizations::stripped_partitions.
    std::variant<StrippedPartition, Partition> partition;
    /// C+(attrs).
    AttrSet candidates;
    bool superkey = false;

    const EquivalenceClasses& classes() const {
        return std::visit([](const auto& p) -> const EquivalenceClasses& { return p; }, partition);
    }
};

class LatticeLevel {
public:
    LatticeLevel() = default;
    explicit LatticeLevel(std::vector<LatticeNode> nodes);

    const std::vector<LatticeNode>& nodes() const noexcept { return nodes_; }
    std::vector<LatticeNode>& nodes() noexcept { return nodes_; }
    bool empty() const noexcept { return nodes_.empty(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    const LatticeNode* find(AttrSet attrs) const;

private:
    std::vector<LatticeNode> nodes_;
    std::unordered_map<AttrSet, std::size_t, AttrSetHash> index_;
};

/// Single-attribute nodes with C+ = all attributes.
LatticeLevel initial_level(const Relation& r, const DiscoveryConfig& cfg);

/// Joins nodes sharing all but their last attribute. A joined node is kept
/// only if every one of its subsets one attribute smaller is in `current`.
/// Candidate sets of the new nodes are left empty; compute_ofds fills them.
LatticeLevel calculate_next_level(const LatticeLevel& current, unsigned threads = 1);

enum class CandidateAction {
    verify,        // run the ontology check
    holds_by_key,  // antecedent is a superkey
};

struct PlannedCandidate {
    AttrIndex rhs = 0;
    const LatticeNode* antecedent = nullptr;
    CandidateAction action = CandidateAction::verify;
    bool equal_value_fast_path = true;
};

/// Candidates X\A -> A of `node` for A in X and C+(X). Reflexive candidates
/// are never produced.
std::vector<PlannedCandidate> apply_optimizations(const LatticeNode& node, const LatticeLevel& previous,
                                                  const DiscoveryConfig& cfg);

struct LevelOutcome {
    std::vector<Ofd> ofds;
    std::size_t candidates = 0;
};

/// Sets C+(X) for every node of `level` from `previous`, tests the planned
/// candidates and removes found consequents from C+ when opt2 is on.
LevelOutcome compute_ofds(LatticeLevel& level, const LatticeLevel& previous, const Verifier& verifier,
                          const DiscoveryConfig& cfg);

/// Complete, minimal set of dependencies of cfg.kind with support >= tau and
/// non-empty antecedents of size <= max_level.
DiscoveryResult discover(const Relation& r, const Ontology& o, const DiscoveryConfig& cfg);

}  // namespace ofd
