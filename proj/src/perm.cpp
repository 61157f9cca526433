#include "stacky/perm.hpp"

#include <algorithm>
#include <numeric>

#include "stacky/error.hpp"

namespace stacky {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= int(img_.size()) || seen[v])
            throw Error("permutation images are not a bijection of {1..n}");
        seen[v] = 1;
    }
}

Perm Perm::identity(int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
}

Perm Perm::parse(const std::string& s, int degree) {
    if (degree <= 0) throw Error("degree must be positive");
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);

    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i == s.size()) throw Error("empty permutation string");

    std::vector<char> used(degree, 0);
    while (i < s.size()) {
        skip_ws();
        if (i == s.size()) break;
        if (s[i] != '(') throw Error("expected '(' in cycle notation: '" + s + "'");
        ++i;
        std::vector<int> cycle;
        skip_ws();
        while (i < s.size() && s[i] != ')') {
            size_t start = i;
            while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
            if (i == start) throw Error("expected number in cycle: '" + s + "'");
            int v = std::stoi(s.substr(start, i - start));
            if (v < 1 || v > degree)
                throw Error("cycle entry " + std::to_string(v) + " out of range 1.." +
                            std::to_string(degree));
            if (used[v - 1])
                throw Error("repeated entry " + std::to_string(v) + " in cycles");
            used[v - 1] = 1;
            cycle.push_back(v - 1);
            skip_ws();
            if (i < s.size() && (s[i] == ',' || s[i] == ' ')) { ++i; skip_ws(); }
        }
        if (i == s.size()) throw Error("unterminated cycle in '" + s + "'");
        ++i;  // ')'
        for (size_t k = 0; k < cycle.size(); ++k)
            img[cycle[k]] = cycle[(k + 1) % cycle.size()];
        skip_ws();
    }
    return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& o) const {
    if (degree() != o.degree()) throw Error("degree mismatch in composition");
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[i] = img_[o.img_[i]];
    Perm p;
    p.img_ = std::move(img);
    return p;
}

Perm Perm::inverse() const {
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[img_[i]] = int(i);
    Perm p;
    p.img_ = std::move(img);
    return p;
}

Perm Perm::power(long long k) const {
    int n = order();
    k %= n;
    if (k < 0) k += n;
    Perm acc = identity(degree());
    Perm base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != int(i)) return false;
    return true;
}

int Perm::order() const {
    long long ord = 1;
    std::vector<char> seen(img_.size(), 0);
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        long long len = 0;
        size_t j = i;
        do { seen[j] = 1; j = img_[j]; ++len; } while (j != i);
        ord = std::lcm(ord, len);
    }
    return int(ord);
}

int Perm::orbit_count() const {
    int count = 0;
    std::vector<char> seen(img_.size(), 0);
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        ++count;
        size_t j = i;
        do { seen[j] = 1; j = img_[j]; } while (j != i);
    }
    return count;
}

std::string Perm::cycle_string() const {
    std::string out;
    std::vector<char> seen(img_.size(), 0);
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == int(i)) { seen[i] = 1; continue; }
        out += '(';
        size_t j = i;
        bool first = true;
        do {
            if (!first) out += ',';
            out += std::to_string(j + 1);
            seen[j] = 1;
            j = img_[j];
            first = false;
        } while (j != i);
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

std::string Perm::oneline_string() const {
    std::string out = "[";
    for (size_t i = 0; i < img_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(img_[i] + 1);
    }
    return out + "]";
}

}  // namespace stacky
