#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pdfa/traces.hpp"

namespace pdfa {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class Color : std::uint8_t { white, blue, red };

using SymbolCounts = std::map<Symbol, long>;

/* A prefix tree node. Counts on a representative aggregate its whole merge
 * class; counts on a merged-away node stay as they were when it was merged. */
struct AptaNode {
    NodeId id = kNoNode;
    int depth = 0;
    Symbol incoming = -1;  // -1 for the root
    NodeId parent = kNoNode;
    std::map<Symbol, NodeId> children;
    NodeId representative = kNoNode;
    NodeId next_member = kNoNode;  // circular list over the merge class
    Color color = Color::white;

    long path_count = 0;   // C(q): traces passing through or ending here
    long final_count = 0;  // traces ending here
    SymbolCounts symbol_counts;  // C(q,a)

    // Prefix-tree reference weights C_p(q,a) * S_p(q,a), aggregated like counts.
    std::map<Symbol, double> ref_weight;
    double ref_final_weight = 0.0;

    long outgoing_count() const { return path_count - final_count; }
    long count(Symbol a) const {
        auto it = symbol_counts.find(a);
        return it == symbol_counts.end() ? 0 : it->second;
    }
};

/// Normalized distribution of one state: S(q,.) and F(q).
struct StateDistribution {
    std::map<Symbol, double> symbol;
    double final = 0.0;
};

/// Reversible record of one merge including its determinization cascade.
struct MergeLog {
    enum class Kind : std::uint8_t { set_representative, add_child };
    struct Action {
        Kind kind;
        NodeId target;  // receiving representative
        NodeId source;  // merged node, or the attached child
        Symbol symbol;  // add_child only
        Color prior_color;  // set_representative only
        std::int32_t weight_snapshot;  // index into weight_snapshots, or -1
    };
    struct WeightSnapshot {
        std::map<Symbol, double> ref_weight;
        double ref_final_weight;
    };
    std::vector<Action> actions;
    std::vector<WeightSnapshot> weight_snapshots;
    std::uint64_t sequence = 0;  // 0 = nothing applied

    bool empty() const { return actions.empty(); }
};

class Apta {
public:
    Apta() = default;

    static Apta build(const TraceSet& ts);

    const AptaNode& node(NodeId q) const { return nodes_.at(static_cast<std::size_t>(q)); }
    std::size_t size() const { return nodes_.size(); }
    NodeId root() const { return 0; }
    int alphabet_size() const { return alphabet_size_; }
    const std::vector<AptaNode>& nodes() const { return nodes_; }

    /// Follows representative pointers without path compression.
    NodeId find(NodeId q) const;
    std::optional<NodeId> resolve(NodeId q, Symbol a) const;
    bool is_representative(NodeId q) const { return node(q).representative == kNoNode; }
    std::vector<NodeId> representatives() const;
    std::vector<NodeId> class_members(NodeId rep) const;

    /// Throws std::domain_error when the state has no occurrences.
    StateDistribution probabilities(NodeId q) const;

    /// MDI needs the prefix tree's own distribution, weighted by its counts.
    void compute_reference_weights(bool finalprob);
    bool has_reference_weights() const { return has_reference_weights_; }

    // Elementary mutations used by the merge engine. Each appends to `log`.
    void set_representative(NodeId q, NodeId merged, MergeLog& log);
    void add_child(NodeId q, Symbol a, NodeId child, MergeLog& log);
    /// Undoes a log in LIFO order; throws std::logic_error when `log` is not the latest one.
    void undo(MergeLog& log);
    void rollback_partial(MergeLog& log);
    void commit(MergeLog& log) { log.sequence = ++applied_; }

    // Red/blue core.
    const std::vector<NodeId>& red_states() const { return red_; }
    const std::vector<NodeId>& blue_states() const { return blue_; }
    void color_red(NodeId q);
    void uncolor_red(NodeId q);  // undoes the most recent color_red
    void refresh_blue();

    std::uint64_t structural_hash() const;

private:
    void add_counts(AptaNode& into, const AptaNode& from, long sign);
    void undo_action(const MergeLog::Action& act);

    std::vector<AptaNode> nodes_;
    int alphabet_size_ = 1;
    bool has_reference_weights_ = false;
    std::uint64_t applied_ = 0;
    std::vector<NodeId> red_;
    std::vector<NodeId> blue_;
};

}  // namespace pdfa
