#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace corkcalc {

/// A permutation of {0,...,degree-1}, stored as the one-line image vector.
/// compose(a,b) applies b first, then a.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (int x : img_) {
            if (x < 0 || static_cast<std::size_t>(x) >= img_.size() || seen[static_cast<std::size_t>(x)])
                throw std::invalid_argument("Perm: image vector is not a bijection");
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }

    static Perm identity(int degree) {
        std::vector<int> v(static_cast<std::size_t>(degree));
        for (int i = 0; i < degree; ++i) v[static_cast<std::size_t>(i)] = i;
        return Perm(std::move(v));
    }

    /// Build from a 1-based one-line image list (the document format).
    static Perm from_one_based(const std::vector<int>& images) {
        std::vector<int> v;
        v.reserve(images.size());
        for (int x : images) v.push_back(x - 1);
        return Perm(std::move(v));
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    Perm compose(const Perm& other) const {
        std::vector<int> v(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            v[i] = img_[static_cast<std::size_t>(other.img_[i])];
        return Perm(std::move(v));
    }

    Perm inverse() const {
        std::vector<int> v(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
        return Perm(std::move(v));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != static_cast<int>(i)) return false;
        return true;
    }

    /// Parity by inversion count; used as an independent oracle for A_n membership.
    bool is_even() const {
        int inv = 0;
        for (std::size_t i = 0; i < img_.size(); ++i)
            for (std::size_t j = i + 1; j < img_.size(); ++j)
                if (img_[i] > img_[j]) ++inv;
        return inv % 2 == 0;
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    /// 1-based one-line form, e.g. "[2,1,3]".
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(img_[i] + 1);
        }
        return s + "]";
    }

private:
    std::vector<int> img_;
};

/// Convenience: permutation from disjoint cycles over 1-based points.
inline Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) img[static_cast<std::size_t>(i)] = i;
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i] - 1;
            int to = cyc[(i + 1) % cyc.size()] - 1;
            img[static_cast<std::size_t>(from)] = to;
        }
    }
    return Perm(std::move(img));
}

}  // namespace corkcalc
