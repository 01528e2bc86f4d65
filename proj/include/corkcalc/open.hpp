#pragma once

#include "corkcalc/action.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace corkcalc {

/// Open block with one countably-infinite cell, all slots open (leaves indexed
/// by the integers), carrying the shift action of Z: hat(k): i -> i+k.
/// P2 holds exactly at 0: the orbit map k -> k is injective in closed form.
inline BlockAction open_shift_block() {
    Block b = Block::infinite_cell();
    GroupPtr z = cyclic_group(0);
    ShadowAction act;
    act.group = z;
    act.block = b;
    act.provenance = "open-shift-block";
    act.p2_witness = Leaf{0};
    act.exact_closed_form = true;
    act.apply_fn = [](const GroupValue& g, const Leaf& l) {
        long long k = static_cast<long long>(g.as_int());
        return Leaf{l[0] + k};
    };
    GroupPtr zc = z;
    act.orbit_inv_fn = [zc](const Leaf& l) -> std::optional<GroupValue> {
        if (l.size() != 1) return std::nullopt;
        return cyclic_value(zc, BigInt(l[0]));
    };
    BlockAction out{std::move(b), std::move(act), {}};
    out.certificate.add_chain("open-shift-block");
    out.certificate.add_check("P2 exact", "closed form: the orbit map k -> k is the identity on Z", true, "",
                              "witness " + leaf_str(Leaf{0}));
    return out;
}

// ---------------------------------------------------------------------------
// Restricted wreath elements (finite-support base map, top element)

/// Element of the restricted wreath product base wr top: a finitely-supported
/// map from the top group into the base group, plus a top element. Support
/// entries are sorted by position and never carry the base identity.
struct RestrictedWreathElement {
    std::vector<std::pair<GroupValue, GroupValue>> support;  // (top position, base value)
    GroupValue top;
};

/// Arithmetic for restricted wreath elements over (base, top) group specs.
struct RestrictedWreathDomain {
    GroupPtr base;
    GroupPtr top;

    RestrictedWreathElement identity_element() const { return {{}, corkcalc::identity(top)}; }

    GroupValue value_at(const RestrictedWreathElement& e, const GroupValue& pos) const {
        for (const auto& [p, v] : e.support)
            if (values_equal(p, pos)) return v;
        return corkcalc::identity(base);
    }

    RestrictedWreathElement normalize(std::vector<std::pair<GroupValue, GroupValue>> sup, GroupValue t) const {
        std::vector<std::pair<GroupValue, GroupValue>> out;
        for (auto& [p, v] : sup)
            if (!is_identity(v)) out.emplace_back(p, v);
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return value_less(a.first, b.first); });
        return {std::move(out), std::move(t)};
    }

    /// (F1,t1)(F2,t2) = (F1 * {}^{t1}F2, t1 t2); the shifted support of F2 is
    /// {t1 x : x in supp F2}.
    RestrictedWreathElement multiply(const RestrictedWreathElement& a, const RestrictedWreathElement& b) const {
        std::map<GroupValue, GroupValue> merged;
        for (const auto& [p, v] : a.support) merged.emplace(p, v);
        for (const auto& [p, v] : b.support) {
            GroupValue shifted = corkcalc::multiply(a.top, p);
            auto it = merged.find(shifted);
            if (it == merged.end())
                merged.emplace(std::move(shifted), v);
            else
                it->second = corkcalc::multiply(it->second, v);
        }
        std::vector<std::pair<GroupValue, GroupValue>> sup(merged.begin(), merged.end());
        return normalize(std::move(sup), corkcalc::multiply(a.top, b.top));
    }

    /// (F,t)^{-1} = (x -> F(t x)^{-1}, t^{-1}); support shifts by t^{-1}.
    RestrictedWreathElement inverse(const RestrictedWreathElement& a) const {
        GroupValue ti = corkcalc::inverse(a.top);
        std::vector<std::pair<GroupValue, GroupValue>> sup;
        sup.reserve(a.support.size());
        for (const auto& [p, v] : a.support)
            sup.emplace_back(corkcalc::multiply(ti, p), corkcalc::inverse(v));
        return normalize(std::move(sup), std::move(ti));
    }

    bool equal(const RestrictedWreathElement& a, const RestrictedWreathElement& b) const {
        if (!values_equal(a.top, b.top) || a.support.size() != b.support.size()) return false;
        for (std::size_t i = 0; i < a.support.size(); ++i)
            if (!values_equal(a.support[i].first, b.support[i].first) ||
                !values_equal(a.support[i].second, b.support[i].second))
                return false;
        return true;
    }

    std::string str(const RestrictedWreathElement& a) const {
        std::string s = "(F={";
        for (std::size_t i = 0; i < a.support.size(); ++i) {
            if (i) s += ",";
            s += to_string(a.support[i].first) + ":" + to_string(a.support[i].second);
        }
        return s + "};t=" + to_string(a.top) + ")";
    }

    /// All elements with support inside `positions`, base values drawn from
    /// `base_values`, and top element drawn from `tops`. Exhaustive.
    std::vector<RestrictedWreathElement> elements_over(const std::vector<GroupValue>& positions,
                                                       const std::vector<GroupValue>& base_values,
                                                       const std::vector<GroupValue>& tops) const {
        std::vector<RestrictedWreathElement> out;
        std::vector<std::size_t> odo(positions.size(), 0);
        for (;;) {
            std::vector<std::pair<GroupValue, GroupValue>> sup;
            for (std::size_t i = 0; i < positions.size(); ++i)
                sup.emplace_back(positions[i], base_values[odo[i]]);
            for (const auto& t : tops) out.push_back(normalize(sup, t));
            std::size_t pos = 0;
            while (pos < positions.size() && ++odo[pos] == base_values.size()) odo[pos++] = 0;
            if (pos == positions.size()) break;
        }
        return out;
    }
};

/// Shadow action of a restricted wreath product on an open composite block.
struct OpenWreathAction {
    RestrictedWreathDomain domain;
    Block block;
    std::string provenance;
    std::function<Leaf(const RestrictedWreathElement&, const Leaf&)> apply_fn;

    Leaf apply(const RestrictedWreathElement& e, const Leaf& l) const { return apply_fn(e, l); }
};

struct OpenGlueResult {
    Block block;
    OpenWreathAction action;
    Certificate certificate;
};

/// Open analog of wreath_glue: a copy of the (P1) block is glued into every
/// leaf of the open (P2) block; elements are supplied in restricted form.
/// The composite rule is evaluated lazily; (P1) is exact for the shipped
/// closed forms and window-checked otherwise.
inline OpenGlueResult open_wreath_glue(const ShadowAction& phi, const ShadowAction& psi,
                                       int window_radius = 100) {
    if (!phi.p2_witness) throw Error("open_wreath_glue: open action has no P2 witness; refusing");
    if (!phi.orbit_inv_fn)
        throw Error("open_wreath_glue: orbit rule of the open action is not invertible; refusing");

    OpenGlueResult out;
    out.certificate.add_chain("open-wreath-glue",
                              Json{{"top", spec_name(*phi.group)}, {"base", spec_name(*psi.group)}});

    out.block = Block::product(phi.block, psi.block);
    out.action.domain = RestrictedWreathDomain{psi.group, phi.group};
    out.action.block = out.block;
    out.action.provenance = "open-wreath-glue[" + phi.provenance + "; " + psi.provenance + "]";

    auto block_ptr = std::make_shared<Block>(out.block);
    auto phi_ptr = std::make_shared<ShadowAction>(phi);
    auto psi_ptr = std::make_shared<ShadowAction>(psi);
    auto base_spec = psi.group;
    out.action.apply_fn = [block_ptr, phi_ptr, psi_ptr, base_spec](const RestrictedWreathElement& e,
                                                                   const Leaf& l) {
        auto split = block_ptr->split_product(l);
        if (!split) throw Error("open_wreath_glue action: not a composite leaf");
        Leaf moved = phi_ptr->apply(e.top, split->first);
        Leaf mu = split->second;
        if (auto g = phi_ptr->orbit_inverse(moved)) {
            GroupValue v = corkcalc::identity(base_spec);
            for (const auto& [p, val] : e.support)
                if (values_equal(p, *g)) { v = val; break; }
            if (!is_identity(v)) mu = psi_ptr->apply(v, mu);
        }
        moved.insert(moved.end(), mu.begin(), mu.end());
        return moved;
    };

    if (phi.exact_closed_form) {
        out.certificate.add_check(
            "P1 exact", "closed form",
            true, "",
            "the top translation is free, so the top coordinate recovers t and the twisted copy "
            "recovers each F value through the base action's P1");
    }

    // window sanity check: distinct small elements have distinct hats
    {
        std::vector<GroupValue> positions = ball(phi.group, 2);
        std::vector<GroupValue> tops = positions;
        std::vector<GroupValue> base_vals = is_finite_group(psi.group)
                                                ? enumerate_elements(psi.group)
                                                : ball(psi.group, 1);
        auto elems = out.action.domain.elements_over(positions, base_vals, tops);
        std::vector<Leaf> window = detail::window_leaves(out.block, std::min(window_radius, 10));
        std::set<std::vector<Leaf>> images;
        bool distinct = true;
        for (const auto& e : elems) {
            std::vector<Leaf> img;
            img.reserve(window.size());
            for (const auto& l : window) img.push_back(out.action.apply(e, l));
            if (!images.insert(std::move(img)).second) {
                distinct = false;
                break;
            }
        }
        out.certificate.add_check("P1 window sample",
                                  std::to_string(elems.size()) + " restricted elements on a window of " +
                                      std::to_string(window.size()) + " leaves",
                                  distinct);
    }
    return out;
}

}  // namespace corkcalc
