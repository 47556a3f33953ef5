#include "pdfa/apta.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace pdfa {

namespace {

constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    v ^= v >> 31;
    return (h ^ v) * 0x100000001b3ULL;
}

}  // namespace

Apta Apta::build(const TraceSet& ts) {
    // Build a trie with arbitrary ids, then renumber breadth-first in symbol order.
    struct TrieNode {
        std::map<Symbol, std::size_t> children;
        long path = 0;
        long final = 0;
        SymbolCounts counts;
    };
    std::vector<TrieNode> trie(1);
    for (const auto& t : ts.traces) {
        std::size_t cur = 0;
        trie[cur].path += 1;
        for (Symbol a : t.symbols) {
            trie[cur].counts[a] += 1;
            auto it = trie[cur].children.find(a);
            std::size_t next;
            if (it == trie[cur].children.end()) {
                next = trie.size();
                trie[cur].children.emplace(a, next);
                trie.emplace_back();
            } else {
                next = it->second;
            }
            cur = next;
            trie[cur].path += 1;
        }
        trie[cur].final += 1;
    }

    Apta apta;
    apta.alphabet_size_ = ts.alphabet_size;
    apta.nodes_.reserve(trie.size());

    std::vector<NodeId> new_id(trie.size(), kNoNode);
    std::deque<std::size_t> queue{0};
    new_id[0] = 0;
    apta.nodes_.emplace_back();
    while (!queue.empty()) {
        const std::size_t t = queue.front();
        queue.pop_front();
        for (const auto& [a, child] : trie[t].children) {
            const auto id = static_cast<NodeId>(apta.nodes_.size());
            new_id[child] = id;
            AptaNode n;
            n.id = id;
            n.depth = apta.nodes_[static_cast<std::size_t>(new_id[t])].depth + 1;
            n.incoming = a;
            n.parent = new_id[t];
            apta.nodes_.push_back(std::move(n));
            queue.push_back(child);
        }
    }
    for (std::size_t t = 0; t < trie.size(); ++t) {
        AptaNode& n = apta.nodes_[static_cast<std::size_t>(new_id[t])];
        n.id = new_id[t];
        n.next_member = n.id;
        n.path_count = trie[t].path;
        n.final_count = trie[t].final;
        n.symbol_counts = std::move(trie[t].counts);
        for (const auto& [a, child] : trie[t].children) n.children.emplace(a, new_id[child]);
    }

    apta.red_.push_back(0);
    apta.nodes_[0].color = Color::red;
    apta.refresh_blue();
    return apta;
}

NodeId Apta::find(NodeId q) const {
    while (nodes_[static_cast<std::size_t>(q)].representative != kNoNode) {
        q = nodes_[static_cast<std::size_t>(q)].representative;
    }
    return q;
}

std::optional<NodeId> Apta::resolve(NodeId q, Symbol a) const {
    const auto& children = node(q).children;
    auto it = children.find(a);
    if (it == children.end()) return std::nullopt;
    return find(it->second);
}

std::vector<NodeId> Apta::representatives() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n.representative == kNoNode) out.push_back(n.id);
    }
    return out;
}

std::vector<NodeId> Apta::class_members(NodeId rep) const {
    std::vector<NodeId> out{rep};
    for (NodeId m = node(rep).next_member; m != rep; m = node(m).next_member) out.push_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

StateDistribution Apta::probabilities(NodeId q) const {
    const AptaNode& n = node(q);
    if (n.path_count <= 0) throw std::domain_error("state " + std::to_string(q) + " has no occurrences");
    StateDistribution d;
    const auto total = static_cast<double>(n.path_count);
    for (const auto& [a, c] : n.symbol_counts) d.symbol[a] = static_cast<double>(c) / total;
    d.final = static_cast<double>(n.final_count) / total;
    return d;
}

void Apta::compute_reference_weights(bool finalprob) {
    for (const auto& n : nodes_) {
        if (n.representative != kNoNode) {
            throw std::logic_error("reference weights must be computed on the unmerged prefix tree");
        }
    }
    for (auto& n : nodes_) {
        n.ref_weight.clear();
        n.ref_final_weight = 0.0;
        const long den = finalprob ? n.path_count : n.outgoing_count();
        if (den <= 0) continue;
        for (const auto& [a, c] : n.symbol_counts) {
            n.ref_weight[a] = static_cast<double>(c) * static_cast<double>(c) / static_cast<double>(den);
        }
        if (finalprob && n.final_count > 0) {
            n.ref_final_weight =
                static_cast<double>(n.final_count) * static_cast<double>(n.final_count) / static_cast<double>(den);
        }
    }
    has_reference_weights_ = true;
}

void Apta::add_counts(AptaNode& into, const AptaNode& from, long sign) {
    into.path_count += sign * from.path_count;
    into.final_count += sign * from.final_count;
    for (const auto& [a, c] : from.symbol_counts) {
        auto it = into.symbol_counts.try_emplace(a, 0).first;
        it->second += sign * c;
        if (it->second == 0) into.symbol_counts.erase(it);
    }
    if (has_reference_weights_ && sign > 0) {
        for (const auto& [a, w] : from.ref_weight) into.ref_weight[a] += w;
        into.ref_final_weight += from.ref_final_weight;
    }
}

void Apta::set_representative(NodeId q, NodeId merged, MergeLog& log) {
    AptaNode& into = nodes_[static_cast<std::size_t>(q)];
    AptaNode& from = nodes_[static_cast<std::size_t>(merged)];
    MergeLog::Action act{MergeLog::Kind::set_representative, q, merged, -1, from.color, -1};
    if (has_reference_weights_) {
        act.weight_snapshot = static_cast<std::int32_t>(log.weight_snapshots.size());
        log.weight_snapshots.push_back({into.ref_weight, into.ref_final_weight});
    }
    from.representative = q;
    from.color = Color::white;
    add_counts(into, from, +1);
    std::swap(into.next_member, from.next_member);
    log.actions.push_back(act);
}

void Apta::add_child(NodeId q, Symbol a, NodeId child, MergeLog& log) {
    auto [it, inserted] = nodes_[static_cast<std::size_t>(q)].children.emplace(a, child);
    if (!inserted) throw std::logic_error("add_child on an existing transition");
    log.actions.push_back({MergeLog::Kind::add_child, q, child, a, Color::white, -1});
}

void Apta::undo_action(const MergeLog::Action& act) {
    AptaNode& into = nodes_[static_cast<std::size_t>(act.target)];
    if (act.kind == MergeLog::Kind::add_child) {
        into.children.erase(act.symbol);
        return;
    }
    AptaNode& from = nodes_[static_cast<std::size_t>(act.source)];
    std::swap(into.next_member, from.next_member);
    add_counts(into, from, -1);
    from.representative = kNoNode;
    from.color = act.prior_color;
}

void Apta::rollback_partial(MergeLog& log) {
    for (auto it = log.actions.rbegin(); it != log.actions.rend(); ++it) {
        undo_action(*it);
        if (it->weight_snapshot >= 0) {
            auto& snap = log.weight_snapshots[static_cast<std::size_t>(it->weight_snapshot)];
            AptaNode& into = nodes_[static_cast<std::size_t>(it->target)];
            into.ref_weight = std::move(snap.ref_weight);
            into.ref_final_weight = snap.ref_final_weight;
        }
    }
    log.actions.clear();
    log.weight_snapshots.clear();
    log.sequence = 0;
}

void Apta::undo(MergeLog& log) {
    if (log.sequence == 0) {
        if (!log.empty()) throw std::logic_error("undo of a log that was never committed");
        return;
    }
    if (log.sequence != applied_) throw std::logic_error("merge logs must be undone in reverse order");
    rollback_partial(log);
    --applied_;
}

void Apta::color_red(NodeId q) {
    if (!is_representative(q)) throw std::logic_error("only representatives can be colored red");
    nodes_[static_cast<std::size_t>(q)].color = Color::red;
    red_.push_back(q);
    refresh_blue();
}

void Apta::uncolor_red(NodeId q) {
    if (red_.empty() || red_.back() != q) throw std::logic_error("uncolor_red must undo the latest extension");
    red_.pop_back();
    nodes_[static_cast<std::size_t>(q)].color = Color::white;
    refresh_blue();
}

void Apta::refresh_blue() {
    for (NodeId b : blue_) {
        auto& n = nodes_[static_cast<std::size_t>(b)];
        if (n.color == Color::blue) n.color = Color::white;
    }
    blue_.clear();
    for (NodeId r : red_) {
        for (const auto& [a, child] : node(r).children) {
            const NodeId t = find(child);
            auto& n = nodes_[static_cast<std::size_t>(t)];
            if (n.color == Color::white) {
                n.color = Color::blue;
                blue_.push_back(t);
            }
        }
    }
    std::sort(blue_.begin(), blue_.end());
}

std::uint64_t Apta::structural_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = mix(h, nodes_.size());
    for (const auto& n : nodes_) {
        h = mix(h, static_cast<std::uint64_t>(n.representative + 1));
        h = mix(h, static_cast<std::uint64_t>(n.next_member));
        h = mix(h, static_cast<std::uint64_t>(n.color));
        h = mix(h, static_cast<std::uint64_t>(n.path_count));
        h = mix(h, static_cast<std::uint64_t>(n.final_count));
        h = mix(h, n.symbol_counts.size());
        for (const auto& [a, c] : n.symbol_counts) {
            h = mix(h, static_cast<std::uint64_t>(a));
            h = mix(h, static_cast<std::uint64_t>(c));
        }
        h = mix(h, n.children.size());
        for (const auto& [a, c] : n.children) {
            h = mix(h, static_cast<std::uint64_t>(a));
            h = mix(h, static_cast<std::uint64_t>(c));
        }
    }
    for (NodeId r : red_) h = mix(h, static_cast<std::uint64_t>(r));
    return h;
}

}  // namespace pdfa
