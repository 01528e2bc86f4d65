#pragma once

#include "corkcalc/action.hpp"
#include "corkcalc/open.hpp"
#include "corkcalc/subgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace corkcalc {

/// A cork site is (key, coordinate): the key is a group element in the
/// equivariant ledger and a block leaf in the weak ledger; the coordinate
/// ranges over 1..m.
struct SiteKey {
    std::optional<Leaf> leaf;
    std::optional<GroupValue> element;

    bool operator<(const SiteKey& o) const {
        if (leaf.has_value() != o.leaf.has_value()) return o.leaf.has_value();
        if (leaf) return *leaf < *o.leaf;
        return value_less(*element, *o.element);
    }
    bool operator==(const SiteKey& o) const { return !(*this < o) && !(o < *this); }

    std::string str() const {
        if (leaf) return "leaf" + leaf_str(*leaf);
        return "h=" + to_string(*element);
    }
};

inline SiteKey leaf_site(Leaf l) { return SiteKey{std::move(l), std::nullopt}; }
inline SiteKey element_site(GroupValue g) { return SiteKey{std::nullopt, std::move(g)}; }

/// Finitely-supported integer labeling of cork sites. Zero values are never
/// stored.
struct TwistLabel {
    int m = 1;
    std::map<std::pair<SiteKey, int>, BigInt> values;

    BigInt at(const SiteKey& k, int j) const {
        auto it = values.find({k, j});
        return it == values.end() ? BigInt(0) : it->second;
    }
    void add(const SiteKey& k, int j, BigInt v) {
        if (v == 0) return;
        auto key = std::make_pair(k, j);
        auto it = values.find(key);
        if (it == values.end()) {
            values.emplace(std::move(key), std::move(v));
        } else {
            it->second += v;
            if (it->second == 0) values.erase(it);
        }
    }
    bool operator==(const TwistLabel& o) const { return m == o.m && values == o.values; }
    bool operator<(const TwistLabel& o) const {
        if (m != o.m) return m < o.m;
        return values < o.values;
    }

    Json to_json() const {
        Json sites = Json::object();
        for (const auto& [site, v] : values)
            sites[site.first.str() + "|" + std::to_string(site.second)] = v.str();
        return Json{{"m", m}, {"sites", std::move(sites)}};
    }
};

/// How group elements index cork sites: forward is g -> site key (the regular
/// action on H itself, or g -> hat(g) p on leaves); invert recovers g.
struct OrbitIndex {
    std::function<SiteKey(const GroupValue&)> key_of;
    std::function<std::optional<GroupValue>(const SiteKey&)> invert;
};

/// Regular orbit: sites indexed by the group itself, p = identity.
inline OrbitIndex regular_orbit(const GroupPtr& h) {
    OrbitIndex o;
    o.key_of = [](const GroupValue& g) { return element_site(g); };
    o.invert = [](const SiteKey& k) -> std::optional<GroupValue> {
        if (!k.element) return std::nullopt;
        return *k.element;
    };
    return o;
}

/// Leaf orbit of a P2-certified action: g -> hat(g) p.
inline OrbitIndex action_orbit(const ShadowAction& act) {
    if (!act.p2_witness) throw Error("action_orbit: P2 witness required; refusing");
    OrbitIndex o;
    auto act_ptr = std::make_shared<ShadowAction>(act);
    o.key_of = [act_ptr](const GroupValue& g) { return leaf_site(act_ptr->apply(g, *act_ptr->p2_witness)); };
    o.invert = [act_ptr](const SiteKey& k) -> std::optional<GroupValue> {
        if (!k.leaf) return std::nullopt;
        return act_ptr->orbit_inverse(*k.leaf);
    };
    return o;
}

// ---------------------------------------------------------------------------
// Twist labels

/// Label of x = (F,h) in Z^m wr H on sites H x [m]:
///   label(g,i) = 2 F(g)_i + [ (g,i) = (h,1) ].
/// The doubled part records the twists; the delta records which shrunken-site
/// twist produced the base manifold's successor.
inline TwistLabel equivariant_twist_label(const GroupValue& x) {
    const GroupPtr& w = x.owner();
    if (w->kind != GroupKind::Wreath || w->wreath_base->kind != GroupKind::FreeAbelian)
        throw Error("equivariant_twist_label: element of Z^m wr H expected");
    TwistLabel lbl;
    lbl.m = w->wreath_base->rank;
    const auto& tops = *w->top_elements;
    const auto& pay = x.as_wreath();
    for (std::size_t k = 0; k < tops.size(); ++k) {
        const IntVec& v = (*pay.base)[k].as_vec();
        for (int j = 0; j < lbl.m; ++j) lbl.add(element_site(tops[k]), j + 1, 2 * v[static_cast<std::size_t>(j)]);
    }
    lbl.add(element_site(*pay.top), 1, 1);
    return lbl;
}

/// Label of x = (F,g) in Z^m wr G on sites leaves(Phi) x [m], through a
/// P2-certified action of G:
///   label(hat(x')p, j) = 2 F(x')_j, plus the delta at (hat(g)p, 1);
/// sites off the orbit stay zero.
inline TwistLabel weak_twist_label(const GroupValue& x, const OrbitIndex& orbit) {
    const GroupPtr& w = x.owner();
    if (w->kind != GroupKind::Wreath || w->wreath_base->kind != GroupKind::FreeAbelian)
        throw Error("weak_twist_label: element of Z^m wr G expected");
    TwistLabel lbl;
    lbl.m = w->wreath_base->rank;
    const auto& tops = *w->top_elements;
    const auto& pay = x.as_wreath();
    for (std::size_t k = 0; k < tops.size(); ++k) {
        const IntVec& v = (*pay.base)[k].as_vec();
        SiteKey site = orbit.key_of(tops[k]);
        for (int j = 0; j < lbl.m; ++j) lbl.add(site, j + 1, 2 * v[static_cast<std::size_t>(j)]);
    }
    lbl.add(orbit.key_of(*pay.top), 1, 1);
    return lbl;
}

// ---------------------------------------------------------------------------
// Label recovery (the constructive inverse: parity decoding)

enum class LabelErrorClass { OddCount, OddSite, Remainder };

struct RecoverError {
    LabelErrorClass cls;
    std::string message;
};

struct RecoverResult {
    std::optional<GroupValue> element;
    std::optional<RecoverError> error;
    bool ok() const { return element.has_value(); }
};

/// Locates the unique odd coordinate (the delta site) to recover the top
/// element, then halves the remainder and pulls it back along the orbit to
/// recover the base map. Exact inverse of the label maps on their images.
inline RecoverResult recover_from_label(const TwistLabel& lbl, const OrbitIndex& orbit, const GroupPtr& wreath) {
    std::vector<std::pair<SiteKey, int>> odd;
    for (const auto& [site, v] : lbl.values)
        if (v % 2 != 0) odd.push_back(site);
    if (odd.empty())
        return {std::nullopt, RecoverError{LabelErrorClass::OddCount, "not a twist label: no odd coordinate"}};
    if (odd.size() > 1)
        return {std::nullopt, RecoverError{LabelErrorClass::OddCount,
                                           "not a twist label: " + std::to_string(odd.size()) + " odd coordinates"}};
    const auto& [delta_site, delta_coord] = odd.front();
    if (delta_coord != 1)
        return {std::nullopt, RecoverError{LabelErrorClass::OddSite,
                                           "not a twist label: odd coordinate off the first column at " +
                                               delta_site.str() + "|" + std::to_string(delta_coord)}};
    std::optional<GroupValue> top = orbit.invert(delta_site);
    if (!top)
        return {std::nullopt, RecoverError{LabelErrorClass::OddSite,
                                           "not a twist label: odd site " + delta_site.str() + " not on the orbit"}};

    const auto& tops = *wreath->top_elements;
    std::vector<GroupValue> base(tops.size(), identity(wreath->wreath_base));
    for (const auto& [site, v] : lbl.values) {
        BigInt r = v;
        if (site.first == delta_site && site.second == 1) r -= 1;
        if (r == 0) continue;
        if (r % 2 != 0)
            return {std::nullopt, RecoverError{LabelErrorClass::Remainder,
                                               "not a twist label: remainder is odd at " + site.first.str()}};
        std::optional<GroupValue> g = orbit.invert(site.first);
        if (!g)
            return {std::nullopt,
                    RecoverError{LabelErrorClass::Remainder,
                                 "not a twist label: remainder supported off the orbit at " + site.first.str()}};
        std::size_t k = canonical_index(tops, *g);
        IntVec vec = base[k].as_vec();
        vec[static_cast<std::size_t>(site.second - 1)] = r / 2;
        base[k] = free_abelian_value(wreath->wreath_base, std::move(vec));
    }
    return {wreath_value(wreath, std::move(base), *top), std::nullopt};
}

// ---------------------------------------------------------------------------
// Effectiveness certificates

struct LedgerConfig {
    GroupPtr wreath;      // Z^m wr H
    OrbitIndex orbit;
    std::string mode;     // "equivariant" | "weak"
    std::size_t ball = 200;
    bool attach_labels = true;
};

/// Enumerates a ball of the wreath group, computes every twist label, asserts
/// pairwise distinctness (sort-and-compare) and the recover round-trip, and
/// records the topological facts the ledger's conclusion rests on.
inline Certificate effectiveness_certificate(const LedgerConfig& cfg) {
    Certificate cert;
    cert.add_chain(cfg.mode + "-ledger", Json{{"group", spec_name(*cfg.wreath)}, {"ball", cfg.ball}});
    cert.add_axiom("distinct integer twist vectors on the disjoint cork sites yield pairwise "
                   "nondiffeomorphic total manifolds");
    cert.add_axiom("every boundary twist of a contractible piece extends homeomorphically, so all "
                   "results share one homeomorphism type");
    cert.add_axiom("the distinguished site is pre-twisted once at construction time, so the identity "
                   "element labels the base manifold");

    std::vector<GroupValue> elems = ball_first_n(cfg.wreath, cfg.ball);
    cert.add_check("ball enumeration", "first " + std::to_string(cfg.ball) + " elements",
                   elems.size() == cfg.ball || is_finite_group(cfg.wreath), "",
                   std::to_string(elems.size()) + " elements enumerated");

    std::vector<TwistLabel> labels;
    labels.reserve(elems.size());
    bool roundtrip_ok = true;
    std::string rt_witness;
    for (const auto& x : elems) {
        TwistLabel lbl = cfg.mode == "equivariant" ? equivariant_twist_label(x) : weak_twist_label(x, cfg.orbit);
        RecoverResult rec = recover_from_label(lbl, cfg.orbit, cfg.wreath);
        if (!rec.ok() || !values_equal(*rec.element, x)) {
            roundtrip_ok = false;
            rt_witness = to_string(x);
        }
        labels.push_back(std::move(lbl));
        if (!roundtrip_ok) break;
    }
    cert.add_check("recover(label(x)) = x", "all " + std::to_string(elems.size()) + " enumerated elements",
                   roundtrip_ok, rt_witness);

    bool distinct = true;
    std::string col_witness;
    {
        std::vector<std::pair<TwistLabel, std::size_t>> sorted;
        sorted.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) sorted.emplace_back(labels[i], i);
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].first == sorted[i - 1].first) {
                distinct = false;
                col_witness = "(" + to_string(elems[sorted[i - 1].second]) + ", " +
                              to_string(elems[sorted[i].second]) + ")";
                break;
            }
    }
    cert.add_check("labels pairwise distinct", "sort-and-compare over " + std::to_string(labels.size()) + " labels",
                   distinct, col_witness);

    if (cfg.attach_labels) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < elems.size(); ++i)
            arr.push_back(Json::array({to_string(elems[i]), labels[i].to_json()}));
        cert.attachments["labels"] = std::move(arr);
    }
    return cert;
}

/// Degenerate ledger for the Stein-style chain: no Z^m part, the label of g
/// is just its orbit point, and injectivity is exactly P2.
inline Certificate stein_shadow_certificate(const GroupPtr& group, const OrbitIndex& orbit, std::size_t ball_n) {
    Certificate cert;
    cert.add_chain("stein-shadow-ledger", Json{{"group", spec_name(*group)}, {"ball", ball_n}});
    cert.add_axiom("distinct cork-site selections yield pairwise nondiffeomorphic total manifolds");
    std::vector<GroupValue> elems = ball_first_n(group, ball_n);
    std::set<SiteKey> seen;
    bool distinct = true;
    std::string witness;
    Json arr = Json::array();
    for (const auto& g : elems) {
        SiteKey k = orbit.key_of(g);
        arr.push_back(Json::array({to_string(g), k.str()}));
        if (!seen.insert(k).second) {
            distinct = false;
            witness = to_string(g);
            break;
        }
    }
    cert.add_check("orbit labels pairwise distinct (P2)", std::to_string(elems.size()) + " elements", distinct,
                   witness);
    cert.attachments["labels"] = std::move(arr);
    return cert;
}

// ---------------------------------------------------------------------------
// The generalized-cork Cayley complex

struct CayleyComplexReport {
    std::size_t vertices = 0;
    std::size_t handle_edges = 0;
    std::size_t doubled_pairs = 0;
    bool connected = false;

    Json to_json() const {
        return Json{{"vertices", vertices},
                    {"handle_edges", handle_edges},
                    {"doubled_pairs", doubled_pairs},
                    {"connected", connected}};
    }
};

/// Cayley graph of a finite H over the full generator set H \ {1}: one
/// handle-edge h -> hg per (h, g), paired with its partner (hg, g^{-1}).
inline CayleyComplexReport cayley_complex(const GroupPtr& h) {
    std::vector<GroupValue> elems = enumerate_elements(h);
    CayleyComplexReport rep;
    rep.vertices = elems.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> handle_index;  // (h_idx, g_idx) -> id
    std::vector<std::vector<std::size_t>> adj(elems.size());
    std::size_t edge_id = 0;
    for (std::size_t hi = 0; hi < elems.size(); ++hi)
        for (std::size_t gi = 0; gi < elems.size(); ++gi) {
            if (is_identity(elems[gi])) continue;
            handle_index[{hi, gi}] = edge_id++;
            std::size_t to = canonical_index(elems, multiply(elems[hi], elems[gi]));
            adj[hi].push_back(to);
        }
    rep.handle_edges = edge_id;

    // pair h(h,g) with h(hg, g^{-1}); the pairing is a fixed-point-free involution
    std::set<std::size_t> paired;
    std::size_t pairs = 0;
    for (const auto& [key, id] : handle_index) {
        if (paired.count(id)) continue;
        auto [hi, gi] = key;
        std::size_t hg = canonical_index(elems, multiply(elems[hi], elems[gi]));
        std::size_t ginv = canonical_index(elems, inverse(elems[gi]));
        auto it = handle_index.find({hg, ginv});
        if (it == handle_index.end() || it->second == id) throw Error("cayley_complex: pairing failed");
        paired.insert(id);
        paired.insert(it->second);
        ++pairs;
    }
    rep.doubled_pairs = pairs;

    std::vector<char> seen(elems.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
    }
    rep.connected = visited == elems.size();
    return rep;
}

}  // namespace corkcalc
