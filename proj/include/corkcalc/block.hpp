#pragma once

#include "corkcalc/bigint.hpp"
#include "corkcalc/certificate.hpp"
#include "corkcalc/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace corkcalc {

/// Address of an open slot: the slot-index path from the root. Finite cells
/// number their slots 1..n; countably-infinite cells index them by integers.
using Leaf = std::vector<long long>;

inline std::string leaf_str(const Leaf& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(l[i]);
    }
    return s + ")";
}

namespace blockdetail {

struct CellNode;
using CellPtr = std::shared_ptr<const CellNode>;

struct CellNode {
    bool infinite = false;
    std::vector<CellPtr> slots;              // finite cell: slot i (1-based address i+1); null = open
    std::map<long long, CellPtr> glued_int;  // infinite cell: glued slots; all others open
};

inline void collect_leaves(const CellPtr& node, Leaf& prefix, std::vector<Leaf>& out) {
    if (node->infinite) throw Error("block: cannot enumerate the leaves of an infinite cell");
    for (std::size_t i = 0; i < node->slots.size(); ++i) {
        prefix.push_back(static_cast<long long>(i + 1));
        if (node->slots[i])
            collect_leaves(node->slots[i], prefix, out);
        else
            out.push_back(prefix);
        prefix.pop_back();
    }
}

inline bool cell_has_infinite(const CellPtr& node) {
    if (node->infinite) return true;
    for (const auto& s : node->slots)
        if (s && cell_has_infinite(s)) return true;
    for (const auto& [i, s] : node->glued_int)
        if (s && cell_has_infinite(s)) return true;
    return false;
}

inline BigInt cell_count(const CellPtr& node) {
    BigInt c = 1;
    for (const auto& s : node->slots)
        if (s) c += cell_count(s);
    for (const auto& [i, s] : node->glued_int)
        if (s) c += cell_count(s);
    return c;
}

/// Open-leaf counting for finite trees.
inline BigInt open_leaf_count(const CellPtr& node) {
    if (node->infinite) throw Error("block: infinite cell has no finite leaf count");
    BigInt c = 0;
    for (const auto& s : node->slots)
        c += s ? open_leaf_count(s) : BigInt(1);
    return c;
}

/// Is `path[from..]` an open-leaf address below `node`?
inline bool is_leaf_under(const CellPtr& node, const Leaf& path, std::size_t from) {
    if (from == path.size()) return false;
    long long c = path[from];
    if (node->infinite) {
        auto it = node->glued_int.find(c);
        if (it == node->glued_int.end()) return from + 1 == path.size();
        return is_leaf_under(it->second, path, from + 1);
    }
    if (c < 1 || static_cast<std::size_t>(c) > node->slots.size()) return false;
    const CellPtr& child = node->slots[static_cast<std::size_t>(c - 1)];
    if (!child) return from + 1 == path.size();
    return is_leaf_under(child, path, from + 1);
}

/// Persistent glue: returns a copy of `node` with `inner` attached at the open
/// slot addressed by `path[from..]`.
inline CellPtr glue_under(const CellPtr& node, const Leaf& path, std::size_t from, const CellPtr& inner) {
    if (from == path.size()) throw Error("glue_block: address is not an open slot");
    long long c = path[from];
    auto copy = std::make_shared<CellNode>(*node);
    if (node->infinite) {
        auto it = node->glued_int.find(c);
        if (it == node->glued_int.end()) {
            if (from + 1 != path.size()) throw Error("glue_block: address is not an open slot");
            copy->glued_int[c] = inner;
        } else {
            copy->glued_int[c] = glue_under(it->second, path, from + 1, inner);
        }
        return copy;
    }
    if (c < 1 || static_cast<std::size_t>(c) > node->slots.size())
        throw Error("glue_block: slot index out of range");
    const CellPtr& child = node->slots[static_cast<std::size_t>(c - 1)];
    if (!child) {
        if (from + 1 != path.size()) throw Error("glue_block: address is not an open slot");
        copy->slots[static_cast<std::size_t>(c - 1)] = inner;
    } else {
        copy->slots[static_cast<std::size_t>(c - 1)] = glue_under(child, path, from + 1, inner);
    }
    return copy;
}

inline Json cell_to_json(const CellPtr& node) {
    Json j;
    if (node->infinite) {
        j["slots"] = "integers";
        Json children = Json::object();
        for (const auto& [i, s] : node->glued_int) children[std::to_string(i)] = cell_to_json(s);
        if (!children.empty()) j["children"] = std::move(children);
    } else {
        j["slots"] = node->slots.size();
        Json children = Json::object();
        for (std::size_t i = 0; i < node->slots.size(); ++i)
            if (node->slots[i]) children[std::to_string(i + 1)] = cell_to_json(node->slots[i]);
        if (!children.empty()) j["children"] = std::move(children);
    }
    return j;
}

}  // namespace blockdetail

/// A block: the rooted slot-tree of cells left of a glued composite, with the
/// root's distinguished parent slot left implicit. Composite results keep
/// their structure symbolic when materializing them would be astronomical:
/// a Product glues `inner` into every leaf of `outer`, and a Power is the
/// depth-n complete tree of copies of `base`. Leaf addresses concatenate, so
/// symbolic and materialized forms address identical leaf sets.
class Block {
public:
    struct Product;
    struct Power;

    static Block single_cell(int open_slots) {
        auto n = std::make_shared<blockdetail::CellNode>();
        n->slots.assign(static_cast<std::size_t>(open_slots), nullptr);
        return Block(n);
    }

    static Block infinite_cell() {
        auto n = std::make_shared<blockdetail::CellNode>();
        n->infinite = true;
        return Block(n);
    }

    static Block product(Block outer, Block inner) {
        Block b;
        b.kind_ = Kind::Product;
        b.outer_ = std::make_shared<Block>(std::move(outer));
        b.inner_ = std::make_shared<Block>(std::move(inner));
        return b;
    }

    static Block power(Block base, long long depth) {
        if (depth < 1) throw Error("block power: depth must be positive");
        Block b;
        b.kind_ = Kind::Power;
        b.outer_ = std::make_shared<Block>(std::move(base));
        b.depth_ = depth;
        return b;
    }

    bool is_cell_tree() const { return kind_ == Kind::Cell; }

    bool has_infinite_cells() const {
        switch (kind_) {
            case Kind::Cell: return blockdetail::cell_has_infinite(root_);
            case Kind::Product: return outer_->has_infinite_cells() || inner_->has_infinite_cells();
            case Kind::Power: return outer_->has_infinite_cells();
        }
        return false;
    }

    std::optional<BigInt> leaf_count() const {
        if (has_infinite_cells()) return std::nullopt;
        switch (kind_) {
            case Kind::Cell: return blockdetail::open_leaf_count(root_);
            case Kind::Product: return *outer_->leaf_count() * *inner_->leaf_count();
            case Kind::Power: {
                BigInt n = *outer_->leaf_count();
                BigInt r = 1;
                for (long long i = 0; i < depth_; ++i) r *= n;
                return r;
            }
        }
        return std::nullopt;
    }

    /// Number of cells; for a Power this counts cells across all copies.
    BigInt cell_count() const {
        switch (kind_) {
            case Kind::Cell: return blockdetail::cell_count(root_);
            case Kind::Product: {
                if (has_infinite_cells()) throw Error("block: cell count of an infinite composite");
                return outer_->cell_count() + *outer_->leaf_count() * inner_->cell_count();
            }
            case Kind::Power: return power_copies() * outer_->cell_count();
        }
        return 0;
    }

    /// For a Power block: the number of copies of the base, 1 + n + ... + n^(depth-1).
    BigInt power_copies() const {
        if (kind_ != Kind::Power) throw Error("block: power_copies on a non-power block");
        BigInt n = *outer_->leaf_count();
        BigInt total = 0, layer = 1;
        for (long long i = 0; i < depth_; ++i) {
            total += layer;
            layer *= n;
        }
        return total;
    }

    bool is_leaf(const Leaf& path) const {
        switch (kind_) {
            case Kind::Cell: return blockdetail::is_leaf_under(root_, path, 0);
            case Kind::Product: {
                auto split = split_product(path);
                return split.has_value();
            }
            case Kind::Power: {
                auto segs = split_power(path);
                return segs.has_value();
            }
        }
        return false;
    }

    /// All leaves of a finite block, lexicographically sorted by path.
    std::vector<Leaf> leaves(std::size_t cap = 1u << 20) const {
        auto count = leaf_count();
        if (!count) throw Error("block: cannot enumerate leaves of an infinite block");
        if (*count > cap) throw Error("block: leaf enumeration over cap (" + count->str() + " leaves)");
        switch (kind_) {
            case Kind::Cell: {
                std::vector<Leaf> out;
                Leaf prefix;
                blockdetail::collect_leaves(root_, prefix, out);
                std::sort(out.begin(), out.end());
                return out;
            }
            case Kind::Product: {
                std::vector<Leaf> out;
                for (const auto& a : outer_->leaves(cap))
                    for (const auto& b : inner_->leaves(cap)) {
                        Leaf l = a;
                        l.insert(l.end(), b.begin(), b.end());
                        out.push_back(std::move(l));
                    }
                std::sort(out.begin(), out.end());
                return out;
            }
            case Kind::Power: {
                std::vector<Leaf> base = outer_->leaves(cap);
                std::vector<Leaf> out{Leaf{}};
                for (long long d = 0; d < depth_; ++d) {
                    std::vector<Leaf> next;
                    next.reserve(out.size() * base.size());
                    for (const auto& w : out)
                        for (const auto& b : base) {
                            Leaf l = w;
                            l.insert(l.end(), b.begin(), b.end());
                            next.push_back(std::move(l));
                        }
                    out = std::move(next);
                }
                std::sort(out.begin(), out.end());
                return out;
            }
        }
        throw Error("block: unreachable");
    }

    /// Splits a Product leaf into (outer leaf, inner leaf). Leaf paths are
    /// prefix-free, so the decomposition is unique.
    std::optional<std::pair<Leaf, Leaf>> split_product(const Leaf& path) const {
        if (kind_ != Kind::Product) throw Error("block: split_product on a non-product block");
        for (std::size_t k = 1; k <= path.size(); ++k) {
            Leaf head(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k));
            if (outer_->is_leaf(head)) {
                Leaf tail(path.begin() + static_cast<std::ptrdiff_t>(k), path.end());
                if (inner_->is_leaf(tail)) return std::make_pair(std::move(head), std::move(tail));
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    /// Splits a Power leaf into its `depth` base-leaf segments.
    std::optional<std::vector<Leaf>> split_power(const Leaf& path) const {
        if (kind_ != Kind::Power) throw Error("block: split_power on a non-power block");
        std::vector<Leaf> segs;
        std::size_t pos = 0;
        for (long long d = 0; d < depth_; ++d) {
            bool found = false;
            for (std::size_t k = 1; pos + k <= path.size(); ++k) {
                Leaf head(path.begin() + static_cast<std::ptrdiff_t>(pos),
                          path.begin() + static_cast<std::ptrdiff_t>(pos + k));
                if (outer_->is_leaf(head)) {
                    segs.push_back(std::move(head));
                    pos += k;
                    found = true;
                    break;
                }
            }
            if (!found) return std::nullopt;
        }
        if (pos != path.size()) return std::nullopt;
        return segs;
    }

    const Block& outer() const { return *outer_; }
    const Block& inner() const { return *inner_; }
    const Block& power_base() const { return *outer_; }
    long long power_depth() const { return depth_; }

    /// Explicit cell-tree form of a finite composite, built by gluing.
    Block materialize(std::size_t cap = 1u << 20) const {
        switch (kind_) {
            case Kind::Cell: return *this;
            case Kind::Product: {
                Block out = outer_->materialize(cap);
                Block in = inner_->materialize(cap);
                for (const auto& l : out.leaves(cap)) out = glue_block(out, l, in);
                return out;
            }
            case Kind::Power: {
                Block base = outer_->materialize(cap);
                Block out = base;
                for (long long d = 1; d < depth_; ++d) {
                    // glue a fresh copy of `base` into every leaf whose path has d segments
                    std::vector<Leaf> frontier = out.leaves(cap);
                    for (const auto& l : frontier) out = glue_block(out, l, base);
                }
                return out;
            }
        }
        throw Error("block: unreachable");
    }

    static Block glue_block(const Block& outer, const Leaf& slot, const Block& inner);

    Json to_json() const {
        switch (kind_) {
            case Kind::Cell: return Json{{"cell", blockdetail::cell_to_json(root_)}};
            case Kind::Product: return Json{{"product", Json{{"outer", outer_->to_json()}, {"inner", inner_->to_json()}}}};
            case Kind::Power: return Json{{"power", Json{{"base", outer_->to_json()}, {"depth", depth_}}}};
        }
        return Json();
    }

    /// Default: an empty cell with no slots.
    Block() : root_(std::make_shared<blockdetail::CellNode>()) {}

private:
    enum class Kind { Cell, Product, Power };

    explicit Block(blockdetail::CellPtr root) : kind_(Kind::Cell), root_(std::move(root)) {}

    Kind kind_ = Kind::Cell;
    blockdetail::CellPtr root_;
    std::shared_ptr<Block> outer_, inner_;
    long long depth_ = 0;
};

/// Attaches `inner`'s root at an open slot of `outer`. The leaves of the
/// result are the leaves of `outer` minus `slot`, plus the slot-prefixed
/// leaves of `inner`.
inline Block Block::glue_block(const Block& outer, const Leaf& slot, const Block& inner) {
    if (outer.kind_ != Kind::Cell || inner.kind_ != Kind::Cell)
        throw Error("glue_block: operands must be explicit cell trees (materialize composites first)");
    if (!outer.is_leaf(slot)) throw Error("glue_block: slot already glued or not a leaf");
    return Block(blockdetail::glue_under(outer.root_, slot, 0, inner.root_));
}

inline Block glue_block(const Block& outer, const Leaf& slot, const Block& inner) {
    return Block::glue_block(outer, slot, inner);
}

}  // namespace corkcalc
