#pragma once

#include <string>
#include <vector>

namespace stacky {

// Permutation of {1..n}, stored 0-based: img[i] = image of point i.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images);

    static Perm identity(int degree);
    // Cycle notation, 1-based entries, e.g. "(1,2,3)(4,5)"; "()" is the identity.
    static Perm parse(const std::string& cycles, int degree);

    int degree() const { return int(img_.size()); }
    int apply(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    Perm operator*(const Perm& o) const;  // (this*o)(i) = this(o(i))
    Perm inverse() const;
    Perm power(long long k) const;

    bool is_identity() const;
    int order() const;
    // number of <g>-orbits on {1..n}
    int orbit_count() const;
    // Malle index: degree - orbit_count
    int index() const { return degree() - orbit_count(); }

    std::string cycle_string() const;  // canonical: cycles sorted by least entry
    // 1-based one-line form "[2,3,1]"
    std::string oneline_string() const;

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

private:
    std::vector<int> img_;
};

}  // namespace stacky
