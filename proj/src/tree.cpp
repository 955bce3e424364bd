#include "arzela/tree.hpp"

#include <map>
#include <stdexcept>

#include "arzela/errors.hpp"

namespace arzela {

std::string to_string(NodeStatus status) {
    switch (status) {
        case NodeStatus::Live: return "live";
        case NodeStatus::PrunedTerminating: return "pruned-terminating";
        case NodeStatus::PrunedNonsplitting: return "pruned-nonsplitting";
        case NodeStatus::PrunedTruncated: return "pruned-truncated";
    }
    return "unknown";
}

const std::vector<NodeId>& IntervalTree::level_ids(int depth) const {
    if (depth < 1 || depth > this->depth())
        throw InvalidInput("no level " + std::to_string(depth) + " in a depth-" +
                           std::to_string(this->depth()) + " tree");
    return level_ids_[static_cast<std::size_t>(depth - 1)];
}

std::vector<OpenInterval> IntervalTree::live_intervals(int depth) const {
    std::vector<OpenInterval> out;
    for (NodeId id : level_ids(depth))
        if (nodes_[id].status == NodeStatus::Live) out.push_back(nodes_[id].interval);
    return out;
}

Rat IntervalTree::live_length(int depth) const {
    Rat total;
    for (NodeId id : level_ids(depth))
        if (nodes_[id].status == NodeStatus::Live)
            total += nodes_[id].interval.length();
    return total;
}

IntervalTree build_tree(std::vector<IntervalSet> levels, Rat epsilon) {
    if (levels.empty()) throw InvalidInput("need at least one level");
    if (!(Rat() < epsilon)) throw InvalidInput("epsilon must be positive");
    Rat half_eps = epsilon / Rat(2);
    for (std::size_t n = 0; n < levels.size(); ++n) {
        if (levels[n].total_length() < half_eps)
            throw InvalidInput("level " + std::to_string(n + 1) + " has total length " +
                               levels[n].total_length().str() + " below epsilon/2 = " +
                               half_eps.str());
        if (n > 0 && !subset_of(levels[n], levels[n - 1]))
            throw InvalidInput("levels are not nested: level " + std::to_string(n + 1) +
                               " is not a subset of level " + std::to_string(n));
    }

    IntervalTree t;
    t.levels_ = std::move(levels);
    t.epsilon_ = std::move(epsilon);
    t.level_ids_.resize(t.levels_.size());
    for (std::size_t li = 0; li < t.levels_.size(); ++li) {
        for (const OpenInterval& comp : t.levels_[li].intervals()) {
            NodeId id = t.nodes_.size();
            TreeNode node{comp, static_cast<int>(li) + 1, std::nullopt, {},
                          NodeStatus::Live};
            if (li > 0) {
                // A component is connected, so nestedness puts it inside a
                // single parent component.
                int pidx = t.levels_[li - 1].component_index(comp.midpoint());
                if (pidx < 0 ||
                    !t.levels_[li - 1]
                         .intervals()[static_cast<std::size_t>(pidx)]
                         .contains(comp))
                    throw std::logic_error("nested level component without a parent");
                NodeId pid = t.level_ids_[li - 1][static_cast<std::size_t>(pidx)];
                node.parent = pid;
                t.nodes_[pid].children.push_back(id);
            }
            t.level_ids_[li].push_back(id);
            t.nodes_.push_back(std::move(node));
        }
    }
    return t;
}

void prune_terminating(IntervalTree& tree, int horizon) {
    if (horizon < 1 || horizon > tree.depth())
        throw InvalidInput("horizon must lie between 1 and the tree depth");
    std::vector<char> reach(tree.nodes_.size(), 0);
    for (int d = tree.depth(); d >= 1; --d) {
        for (NodeId id : tree.level_ids_[static_cast<std::size_t>(d - 1)]) {
            TreeNode& node = tree.nodes_[id];
            if (node.status != NodeStatus::Live) continue;
            bool r = node.depth >= horizon;
            if (!r)
                for (NodeId c : node.children)
                    if (reach[c]) {
                        r = true;
                        break;
                    }
            reach[id] = r ? 1 : 0;
            if (!r) node.status = NodeStatus::PrunedTerminating;
        }
    }
    tree.pruned_horizon_ = horizon;
}

namespace {

void require_pruned(const IntervalTree& tree, int horizon) {
    if (tree.pruned_horizon() != std::optional<int>(horizon))
        throw InvalidInput("prune terminating nodes at horizon " +
                           std::to_string(horizon) + " first");
}

// Live descendants at the horizon depth, self-inclusive there; meaningful
// for nodes at depth <= horizon once terminating pruning has run.
std::vector<long> horizon_counts(const IntervalTree& tree, int horizon) {
    std::vector<long> count(tree.node_count(), 0);
    for (int d = horizon; d >= 1; --d) {
        for (NodeId id : tree.level_ids(d)) {
            const TreeNode& node = tree.node(id);
            if (node.status != NodeStatus::Live) continue;
            if (d == horizon) {
                count[id] = 1;
                continue;
            }
            long c = 0;
            for (NodeId ch : node.children) c += count[ch];
            count[id] = c;
        }
    }
    return count;
}

}  // namespace

std::vector<SplitClassification> classify_splitting(const IntervalTree& tree,
                                                    int horizon) {
    require_pruned(tree, horizon);
    std::vector<long> count = horizon_counts(tree, horizon);

    std::vector<Rat> hlen(tree.node_count());
    for (int d = horizon; d >= 1; --d)
        for (NodeId id : tree.level_ids(d)) {
            const TreeNode& node = tree.node(id);
            if (node.status != NodeStatus::Live) continue;
            if (d == horizon) {
                hlen[id] = node.interval.length();
                continue;
            }
            Rat s;
            for (NodeId ch : node.children) s += hlen[ch];
            hlen[id] = s;
        }

    std::vector<SplitClassification> out;
    for (int n = 1; n <= horizon; ++n) {
        SplitClassification cls;
        cls.level = n;
        cls.horizon = horizon;
        for (NodeId id : tree.level_ids(n)) {
            if (tree.node(id).status != NodeStatus::Live) continue;
            if (count[id] >= 2) {
                cls.splitting.push_back(id);
            } else if (count[id] == 1) {
                cls.single_chain.push_back(id);
                cls.o_descendant_length += hlen[id];
            } else {
                throw std::logic_error("live node unreachable from the horizon");
            }
        }
        out.push_back(std::move(cls));
    }
    return out;
}

DiscardReport discard_single_chains(IntervalTree& tree, int horizon, const Rat& floor) {
    require_pruned(tree, horizon);
    if (floor < Rat()) throw InvalidInput("floor must be nonnegative");

    std::vector<long> count = horizon_counts(tree, horizon);
    std::vector<char> removed(tree.node_count(), 0);
    for (int d = 1; d < horizon; ++d)
        for (NodeId id : tree.level_ids_[static_cast<std::size_t>(d - 1)])
            if (tree.nodes_[id].status == NodeStatus::Live && count[id] == 1)
                removed[id] = 1;
    for (int d = 2; d <= tree.depth(); ++d)
        for (NodeId id : tree.level_ids_[static_cast<std::size_t>(d - 1)]) {
            const TreeNode& node = tree.nodes_[id];
            if (node.status != NodeStatus::Live) continue;
            if (node.parent && removed[*node.parent]) removed[id] = 1;
        }

    // Survivors losing every horizon path are stranded; they go with the
    // terminating nodes, not the chains.
    std::vector<long> survivor_count(tree.node_count(), 0);
    std::vector<char> stranded(tree.node_count(), 0);
    for (int d = horizon; d >= 1; --d)
        for (NodeId id : tree.level_ids_[static_cast<std::size_t>(d - 1)]) {
            const TreeNode& node = tree.nodes_[id];
            if (node.status != NodeStatus::Live || removed[id]) continue;
            long c = 0;
            if (d == horizon) {
                c = 1;
            } else {
                for (NodeId ch : node.children) c += survivor_count[ch];
            }
            survivor_count[id] = c;
            if (c == 0) stranded[id] = 1;
        }

    DiscardReport report;
    report.floor = floor;
    bool ok = true;
    for (int n = 1; n <= horizon; ++n) {
        Rat len;
        for (NodeId id : tree.level_ids_[static_cast<std::size_t>(n - 1)]) {
            const TreeNode& node = tree.nodes_[id];
            if (node.status == NodeStatus::Live && !removed[id] && !stranded[id])
                len += node.interval.length();
        }
        if (len < floor) {
            ok = false;
            report.notes.push_back(
                "level " + std::to_string(n) +
                ": splitting-length bound not witnessed at this horizon "
                "(post-discard length " +
                len.str() + " is below the floor " + floor.str() + ")");
        }
        report.live_length.push_back(std::move(len));
    }
    report.committed = ok;
    if (ok) {
        for (NodeId id = 0; id < tree.nodes_.size(); ++id) {
            TreeNode& node = tree.nodes_[id];
            if (node.status != NodeStatus::Live) continue;
            if (removed[id]) {
                node.status = NodeStatus::PrunedNonsplitting;
                ++report.discarded;
            } else if (stranded[id]) {
                node.status = NodeStatus::PrunedTerminating;
                ++report.remarked;
            }
        }
    }
    return report;
}

std::optional<FatPath> detect_fat_path(const IntervalTree& tree, const Rat& lambda) {
    if (!(Rat() < lambda)) throw InvalidInput("lambda must be positive");
    int target = tree.depth();
    std::vector<NodeId> path;
    auto dfs = [&](auto&& self, NodeId id) -> bool {
        const TreeNode& node = tree.node(id);
        if (node.status != NodeStatus::Live || node.interval.length() < lambda)
            return false;
        path.push_back(id);
        if (node.depth == target) return true;
        for (NodeId ch : node.children)
            if (self(self, ch)) return true;
        path.pop_back();
        return false;
    };
    for (NodeId root : tree.roots()) {
        if (!dfs(dfs, root)) continue;
        FatPath fp;
        fp.nodes = path;
        for (NodeId id : path)
            fp.midpoints.push_back(tree.node(id).interval.midpoint());
        return fp;
    }
    return std::nullopt;
}

WitnessCertificate extract_witness(const IntervalTree& tree, int horizon,
                                   int max_index, const std::string& spec_hash) {
    require_pruned(tree, horizon);

    auto live_children = [&](NodeId id) {
        std::vector<NodeId> out;
        for (NodeId ch : tree.node(id).children)
            if (tree.node(ch).status == NodeStatus::Live) out.push_back(ch);
        return out;
    };
    // Live descendants at the first depth where at least three appear, in
    // left-to-right order; empty when no depth up to the horizon has three.
    auto first_triple = [&](NodeId id) -> std::vector<NodeId> {
        std::vector<NodeId> frontier{id};
        for (int d = tree.node(id).depth + 1; d <= horizon; ++d) {
            std::vector<NodeId> next;
            for (NodeId f : frontier)
                for (NodeId ch : live_children(f)) next.push_back(ch);
            frontier = std::move(next);
            if (frontier.size() >= 3) return frontier;
            if (frontier.empty()) return {};
        }
        return {};
    };

    std::vector<ClosedInterval> chain;
    std::optional<NodeId> current;
    for (NodeId root : tree.roots()) {
        if (tree.node(root).status != NodeStatus::Live) continue;
        std::vector<NodeId> trio = first_triple(root);
        if (trio.empty()) continue;
        auto step = [&](const std::vector<NodeId>& descendants) {
            const TreeNode& l = tree.node(descendants.front());
            const TreeNode& r = tree.node(descendants.back());
            chain.emplace_back(l.interval.midpoint(), r.interval.midpoint());
            return descendants[(descendants.size() - 1) / 2];
        };
        current = step(trio);
        while (true) {
            std::vector<NodeId> next = first_triple(*current);
            if (next.empty()) break;
            current = step(next);
        }
        break;
    }
    if (!current)
        throw InsufficientSplitting(
            "no root shows three live descendants at any depth up to horizon " +
            std::to_string(horizon));

    NodeId tail = *current;
    while (tree.node(tail).depth < horizon) {
        std::vector<NodeId> ch = live_children(tail);
        if (ch.empty()) throw std::logic_error("live node lost its horizon path");
        tail = ch.front();
    }
    const OpenInterval& leaf = tree.node(tail).interval;
    chain.emplace_back(leaf.lo, leaf.hi);

    WitnessCertificate cert;
    cert.witness = leaf.midpoint();
    cert.mode = WitnessMode::NestedClosedIntervals;
    cert.chain = std::move(chain);
    cert.epsilon = tree.epsilon();
    cert.levels = horizon;
    cert.max_index = max_index;
    cert.spec_hash = spec_hash;
    for (int n = 1; n <= horizon; ++n) {
        const IntervalSet& level = tree.levels()[static_cast<std::size_t>(n - 1)];
        int idx = level.component_index(cert.witness);
        if (idx < 0) throw std::logic_error("witness escaped a level set");
        cert.evidence.push_back(
            {n, level.intervals()[static_cast<std::size_t>(idx)]});
    }
    return cert;
}

WitnessCertificate fat_path_certificate(const IntervalTree& tree, const FatPath& path,
                                        const Rat& lambda, int max_index,
                                        const std::string& spec_hash) {
    if (path.nodes.empty() || path.midpoints.size() != path.nodes.size())
        throw InvalidInput("fat path is empty or inconsistent");
    if (!(Rat() < lambda)) throw InvalidInput("lambda must be positive");

    Rat cell_width = lambda / Rat(2);
    std::map<mpz_class, std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < path.midpoints.size(); ++i) {
        Rat q = path.midpoints[i] / cell_width;
        mpz_class key;
        mpz_fdiv_q(key.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
        auto [it, inserted] = cells.emplace(key, std::make_pair(std::size_t{1}, i));
        if (!inserted) it->second.first += 1;
    }
    std::size_t best_count = 0;
    std::size_t best_idx = 0;
    for (const auto& [key, entry] : cells)
        if (entry.first > best_count) {
            best_count = entry.first;
            best_idx = entry.second;
        }

    auto member_of_all = [&](const Rat& x) {
        for (const IntervalSet& level : tree.levels())
            if (!level.contains(x)) return false;
        return true;
    };
    Rat witness = path.midpoints[best_idx];
    if (!member_of_all(witness)) witness = path.midpoints.back();
    if (!member_of_all(witness))
        throw std::logic_error("deepest path midpoint escaped a level set");

    WitnessCertificate cert;
    cert.witness = std::move(witness);
    cert.mode = WitnessMode::FatPathCluster;
    cert.midpoints = path.midpoints;
    cert.epsilon = tree.epsilon();
    cert.levels = tree.depth();
    cert.max_index = max_index;
    cert.spec_hash = spec_hash;
    for (int n = 1; n <= tree.depth(); ++n) {
        const IntervalSet& level = tree.levels()[static_cast<std::size_t>(n - 1)];
        int idx = level.component_index(cert.witness);
        if (idx < 0) throw std::logic_error("fat-path witness escaped a level set");
        cert.evidence.push_back(
            {n, level.intervals()[static_cast<std::size_t>(idx)]});
    }
    return cert;
}

IntervalSet exact_intersection_oracle(const std::vector<IntervalSet>& levels) {
    if (levels.empty()) throw InvalidInput("need at least one level");
    IntervalSet acc = levels.front();
    for (std::size_t i = 1; i < levels.size(); ++i) acc = intersect(acc, levels[i]);
    return acc;
}

nlohmann::json dump_tree(const IntervalTree& tree) {
    nlohmann::json levels = nlohmann::json::array();
    for (int d = 1; d <= tree.depth(); ++d) {
        nlohmann::json nodes = nlohmann::json::array();
        for (NodeId id : tree.level_ids(d)) {
            const TreeNode& node = tree.node(id);
            nodes.push_back(
                {{"interval", {node.interval.lo.str(), node.interval.hi.str()}},
                 {"status", to_string(node.status)}});
        }
        levels.push_back({{"depth", d}, {"nodes", std::move(nodes)}});
    }
    return nlohmann::json{{"epsilon", tree.epsilon().str()},
                          {"depth", tree.depth()},
                          {"levels", std::move(levels)}};
}

}  // namespace arzela
