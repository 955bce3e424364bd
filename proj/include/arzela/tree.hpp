#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "arzela/certificate.hpp"
#include "arzela/interval_set.hpp"

namespace arzela {

using NodeId = std::size_t;

enum class NodeStatus { Live, PrunedTerminating, PrunedNonsplitting, PrunedTruncated };
std::string to_string(NodeStatus status);

struct TreeNode {
    OpenInterval interval;
    int depth = 0;  // 1-based level
    std::optional<NodeId> parent;
    std::vector<NodeId> children;  // left to right
    NodeStatus status = NodeStatus::Live;
};

/// Per-level split of the live nodes: splitting nodes have at least two live
/// descendants at the horizon, single-chain nodes exactly one.
/// o_descendant_length is the total horizon-level length under single-chain
/// nodes (the quantity the discard step drops).
struct SplitClassification {
    int level = 0;
    int horizon = 0;
    std::vector<NodeId> splitting;
    std::vector<NodeId> single_chain;
    Rat o_descendant_length;
};

/// Outcome of the single-chain discard. The discard commits only when every
/// level up to the horizon keeps at least floor of live length afterwards;
/// otherwise nothing is marked and the failing levels are noted.
struct DiscardReport {
    bool committed = false;
    Rat floor;
    int discarded = 0;  // nodes marked pruned-nonsplitting
    int remarked = 0;   // stranded ancestors marked pruned-terminating
    std::vector<Rat> live_length;  // per level 1..horizon, post-trial
    std::vector<std::string> notes;
};

/// Root-to-bottom path whose interval lengths all stay >= lambda.
struct FatPath {
    std::vector<NodeId> nodes;
    std::vector<Rat> midpoints;
};

/// The component decomposition of nested level sets: depth-n nodes are the
/// canonical components of levels[n-1], child edges by interval containment.
class IntervalTree {
public:
    const std::vector<IntervalSet>& levels() const { return levels_; }
    int depth() const { return static_cast<int>(levels_.size()); }
    const Rat& epsilon() const { return epsilon_; }

    const TreeNode& node(NodeId id) const { return nodes_[id]; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<NodeId>& level_ids(int depth) const;
    const std::vector<NodeId>& roots() const { return level_ids(1); }

    /// Horizon of the last terminating prune, if any.
    std::optional<int> pruned_horizon() const { return pruned_horizon_; }

    std::vector<OpenInterval> live_intervals(int depth) const;
    Rat live_length(int depth) const;

private:
    IntervalTree() = default;

    std::vector<TreeNode> nodes_;
    std::vector<std::vector<NodeId>> level_ids_;
    std::vector<IntervalSet> levels_;
    Rat epsilon_;
    std::optional<int> pruned_horizon_;

    friend IntervalTree build_tree(std::vector<IntervalSet> levels, Rat epsilon);
    friend void prune_terminating(IntervalTree& tree, int horizon);
    friend DiscardReport discard_single_chains(IntervalTree& tree, int horizon,
                                               const Rat& floor);
};

/// Requires levels nested decreasing (checked; the error names the offending
/// level) with every total length >= epsilon/2.
IntervalTree build_tree(std::vector<IntervalSet> levels, Rat epsilon);

/// Marks pruned-terminating every live node whose subtree fails to reach the
/// horizon depth (nodes at or below the horizon count as reaching it).
/// Afterwards every live node above the horizon has a live descendant at
/// every depth up to the horizon.
void prune_terminating(IntervalTree& tree, int horizon);

/// Per-level classification of live nodes, levels 1..horizon. Requires the
/// tree pruned at this horizon.
std::vector<SplitClassification> classify_splitting(const IntervalTree& tree,
                                                    int horizon);

/// Marks single-chain nodes at levels 1..horizon-1 (and their subtrees)
/// pruned-nonsplitting, then marks ancestors stranded by the removal
/// pruned-terminating; all-or-nothing under the per-level floor. Requires the
/// tree pruned at this horizon.
DiscardReport discard_single_chains(IntervalTree& tree, int horizon, const Rat& floor);

/// Leftmost root-to-bottom path of live nodes with every length >= lambda,
/// or nothing if no such path exists.
std::optional<FatPath> detect_fat_path(const IntervalTree& tree, const Rat& lambda);

/// Walks three-descendant splits from the leftmost root that has one: each
/// step closes [midpoint(leftmost), midpoint(rightmost)] over the first depth
/// showing >= 3 live descendants and recurses into the middle one; the chain
/// ends with the closure of a horizon-depth node inside the last middle, and
/// the witness is that closure's midpoint. Requires the tree pruned at this
/// horizon. Throws InsufficientSplitting when no root yields a single step.
WitnessCertificate extract_witness(const IntervalTree& tree, int horizon,
                                   int max_index, const std::string& spec_hash);

/// Certificate for a fat path: midpoints are bucketed into lambda/2 cells;
/// the earliest midpoint of the fullest cell (smallest cell on ties) is the
/// witness candidate, falling back to the deepest midpoint unless it lies in
/// every level set.
WitnessCertificate fat_path_certificate(const IntervalTree& tree, const FatPath& path,
                                        const Rat& lambda, int max_index,
                                        const std::string& spec_hash);

/// Left fold of intersect: exactly the common refinement of all levels.
IntervalSet exact_intersection_oracle(const std::vector<IntervalSet>& levels);

/// Per-level component listing with status tags.
nlohmann::json dump_tree(const IntervalTree& tree);

}  // namespace arzela
